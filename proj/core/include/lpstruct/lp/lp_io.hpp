#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "lpstruct/lp/linear_program.hpp"

namespace lpstruct::lp {

// Text format:
//
//   lp <maximize|minimize> <k> <m>
//   c_1 ... c_k
//   a_11 ... a_1k b_1          (m lines)
//   lower l_1 ... l_k          (optional)
//   upper u_1 ... u_k          (optional, "inf" allowed)
//
// Blank lines and lines starting with '#' are ignored. Values are written with
// 17 significant digits so a write/read round trip is exact.
LinearProgram read_lp(std::istream& in, const std::string& source = "<stream>");
LinearProgram read_lp_file(const std::filesystem::path& path);
void write_lp(std::ostream& out, const LinearProgram& lp);
void write_lp_file(const std::filesystem::path& path, const LinearProgram& lp);

// Shortest decimal form that parses back to the same double (17 digits max).
std::string format_double(double v);
// strtod wrapper accepting "inf"; throws ParseError on junk.
double parse_double(const std::string& token, const std::string& source, std::size_t line);

}  // namespace lpstruct::lp
