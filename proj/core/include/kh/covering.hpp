#pragma once

#include <vector>

#include "kh/cell.hpp"

namespace kh {

struct CenteredInterval {
    double center = 0.0;
    double radius = 0.0;  // > 0

    double lo() const { return center - radius; }
    double hi() const { return center + radius; }
};

// One-dimensional Besicovitch decomposition: from the centered intervals
// J(x_i) = [x_i - r_i, x_i + r_i], selects a subfamily covering every input
// point and splits it into at most five collections, each pairwise disjoint as
// closed sets. Greedy by decreasing radius, first-fit coloring. Throws
// BudgetExceeded past five families, which would indicate a bug, not a theory
// gap.
std::vector<std::vector<CenteredInterval>> besicovitch_decompose(
    const std::vector<double>& points, const std::vector<double>& radii);

// Greedy disjoint selection by decreasing length: keeps a cell iff it has no
// positive-length overlap with anything already kept.
std::vector<Cell> vitali_greedy_select(const std::vector<Cell>& cells);

}  // namespace kh
