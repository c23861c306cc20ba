#pragma once

#include <vector>

#include "fabercone/rational.hpp"

namespace fabercone {

// Phase-one feasibility of {x >= 0 : sum_j x_j col_j = rhs} by exact
// simplex with Bland's rule.  On infeasibility, `dual_y` is a Farkas
// vector: dual_y.col_j <= 0 for every column and dual_y.rhs > 0.
struct Phase1Result {
    bool feasible = false;
    QVec x;
    QVec dual_y;
};

Phase1Result simplex_phase1(const std::vector<QVec>& columns, const QVec& rhs);

}  // namespace fabercone
