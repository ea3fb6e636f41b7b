#pragma once

#include <string>

#include "lpstruct/structure/notears.hpp"

namespace lpstruct::harness {

// Diverging red (negative) / white / blue (positive) colour for v in
// [-scale, scale]; exactly the neutral colour for v == 0.
std::string heat_colour(double v, double scale);
inline constexpr const char* kNeutralColour = "#f7f7f7";

// d x d cell grid of the thresholded weights (row = source, column = target)
// with row/column labels and, for d <= 12, value annotations.
std::string render_heatmap(const structure::WeightedDag& dag, const std::string& title = "");

}  // namespace lpstruct::harness
