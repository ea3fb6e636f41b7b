#include "lpstruct/lp/lp_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "lpstruct/error.hpp"

namespace lpstruct::lp {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

double parse_double(const std::string& token, const std::string& source, std::size_t line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || std::isnan(v)) throw ParseError(source, line, "not a number: '" + token + "'");
  return v;
}

namespace {

struct LineReader {
  std::istream& in;
  const std::string& source;
  std::size_t line = 0;

  // Next non-empty, non-comment line split into tokens; false at EOF.
  bool next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in, text)) {
      ++line;
      std::istringstream ss(text);
      tokens.clear();
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (tokens.empty() || tokens.front().starts_with('#')) continue;
      return true;
    }
    return false;
  }
};

Vector parse_values(const std::vector<std::string>& tokens, std::size_t first, std::size_t expected,
                    const std::string& source, std::size_t line) {
  if (tokens.size() - first != expected)
    throw ParseError(source, line,
                     "expected " + std::to_string(expected) + " values, found " + std::to_string(tokens.size() - first));
  Vector v;
  v.reserve(expected);
  for (std::size_t i = first; i < tokens.size(); ++i) v.push_back(parse_double(tokens[i], source, line));
  return v;
}

}  // namespace

LinearProgram read_lp(std::istream& in, const std::string& source) {
  LineReader reader{in, source};
  std::vector<std::string> tok;
  if (!reader.next(tok) || tok.size() != 4 || tok[0] != "lp")
    throw ParseError(source, reader.line, "expected header 'lp <sense> <k> <m>'");
  Sense sense;
  try {
    sense = sense_from_string(tok[1]);
  } catch (const InvalidArgument& e) {
    throw ParseError(source, reader.line, e.what());
  }
  const auto k = static_cast<std::size_t>(parse_double(tok[2], source, reader.line));
  const auto m = static_cast<std::size_t>(parse_double(tok[3], source, reader.line));

  if (!reader.next(tok)) throw ParseError(source, reader.line, "missing cost line");
  Vector c = parse_values(tok, 0, k, source, reader.line);
  Matrix a(m, k);
  Vector b(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!reader.next(tok)) throw ParseError(source, reader.line, "missing constraint row " + std::to_string(i + 1));
    Vector row = parse_values(tok, 0, k + 1, source, reader.line);
    std::copy(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k), a.row(i).begin());
    b[i] = row[k];
  }
  Vector lower;
  Vector upper;
  while (reader.next(tok)) {
    if (tok[0] == "lower") {
      lower = parse_values(tok, 1, k, source, reader.line);
    } else if (tok[0] == "upper") {
      upper = parse_values(tok, 1, k, source, reader.line);
    } else {
      throw ParseError(source, reader.line, "unexpected line starting with '" + tok[0] + "'");
    }
  }
  try {
    return LinearProgram(std::move(a), std::move(b), std::move(c), sense, std::move(lower), std::move(upper));
  } catch (const Error& e) {
    throw ParseError(source, reader.line, e.what());
  }
}

LinearProgram read_lp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open LP file '" + path.string() + "'");
  return read_lp(in, path.string());
}

void write_lp(std::ostream& out, const LinearProgram& lp) {
  const std::size_t k = lp.num_vars();
  out << "lp " << to_string(lp.sense()) << ' ' << k << ' ' << lp.num_rows() << '\n';
  for (std::size_t j = 0; j < k; ++j) out << (j ? " " : "") << format_double(lp.c()[j]);
  out << '\n';
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out << format_double(lp.a()(i, j)) << ' ';
    out << format_double(lp.b()[i]) << '\n';
  }
  bool default_lower = true;
  bool default_upper = true;
  for (std::size_t j = 0; j < k; ++j) {
    default_lower = default_lower && lp.lower()[j] == 0.0;
    default_upper = default_upper && std::isinf(lp.upper()[j]);
  }
  if (!default_lower) {
    out << "lower";
    for (double v : lp.lower()) out << ' ' << format_double(v);
    out << '\n';
  }
  if (!default_upper) {
    out << "upper";
    for (double v : lp.upper()) out << ' ' << format_double(v);
    out << '\n';
  }
}

void write_lp_file(const std::filesystem::path& path, const LinearProgram& lp) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write LP file '" + path.string() + "'");
  write_lp(out, lp);
}

}  // namespace lpstruct::lp
