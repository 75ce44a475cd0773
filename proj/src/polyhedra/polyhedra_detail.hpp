#pragma once

#include <optional>
#include <vector>

#include "entrocone/polyhedra.hpp"

namespace entrocone::poly::detail {

// Extremal rays of {y : A y >= 0} for A of full column rank k.
std::vector<IntVec> double_description(std::vector<IntVec> rows, std::size_t k);

// Phase-one simplex on {x >= 0 : M x = b}, M given column by column, using
// fraction-free integer pivoting. Returns x on feasibility.
std::optional<RatVec> feasible_point(const std::vector<IntVec>& columns, const IntVec& b);

// Map a row a onto coordinates y where x = sum_j y_j basis[j].
IntVec pull_back(const IntVec& a, const std::vector<IntVec>& basis);

// x = sum_j y_j basis[j]
IntVec push_forward(const IntVec& y, const std::vector<IntVec>& basis, std::size_t dimension);

void sort_desc(std::vector<IntVec>& v);

}  // namespace entrocone::poly::detail
