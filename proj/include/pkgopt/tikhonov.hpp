#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pkgopt/cost_matrices.hpp"

namespace pkgopt {

/// One chosen package type per product (0-based indices).
struct Assignment {
  std::vector<std::size_t> chosen;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.chosen == b.chosen;
  }
};

/// An assignment together with its aggregate costs at a given lambda.
/// objective == ship_cost + lambda * damage_cost holds exactly as written.
struct SolveOutcome {
  Assignment assignment;
  double ship_cost = 0.0;
  double damage_cost = 0.0;
  double objective = 0.0;
  double lambda = 0.0;
};

/// Minimizes ship + lambda * damage independently per product in O(mn).
///
/// Ties on the per-product value are broken toward the smaller damage entry,
/// then toward the more robust (larger-index) type. Comparisons are exact;
/// no epsilon is applied.
///
/// `threads` > 1 splits the per-product argmin across workers; aggregation
/// stays sequential in canonical order, so the result is identical for every
/// thread count.
SolveOutcome solve_tikhonov(const CostMatrices& costs, double lambda,
                            unsigned threads = 1);

/// Exact aggregate costs of a given assignment.
SolveOutcome evaluate(const CostMatrices& costs, const Assignment& assignment,
                      double lambda);

/// Per-unit recommendation for a product without sales history. Velocity
/// scales ship and damage identically per product, so it cancels out of the
/// argmin; callers pass per-unit costs. Same tie-breaking as solve_tikhonov.
std::size_t recommend_new_product(std::span<const double> unit_ship_costs,
                                  std::span<const double> unit_damage_costs,
                                  std::span<const std::uint8_t> mask_row,
                                  double lambda);

}  // namespace pkgopt
