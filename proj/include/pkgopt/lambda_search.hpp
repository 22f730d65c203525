#pragma once

#include <optional>
#include <vector>

#include "pkgopt/tikhonov.hpp"

namespace pkgopt {

struct LambdaSearchConfig {
  double budget = 0.0;  // damage budget T; ignored when gamma is set
  std::optional<double> gamma;  // budget = gamma * current_damage_total
  double rho = 1e-3;            // stop when successive lambdas differ by <= rho
  double lambda_max = 1000.0;   // upper bracket
};

struct LambdaProbe {
  double lambda = 0.0;
  double ship_cost = 0.0;
  double damage_cost = 0.0;
};

struct LambdaSearchResult {
  double lambda = 0.0;
  SolveOutcome outcome;  // always equals solve_tikhonov(costs, lambda)
  int iterations = 0;
  /// Set when even lambda_max cannot bring damage under the budget; the
  /// outcome is then the lambda_max solution.
  bool infeasible_budget = false;
  std::vector<LambdaProbe> trace;  // one entry per bisection iteration
};

/// Bisects [0, lambda_max] for the lambda whose solution meets the damage
/// budget, exploiting that the damage cost at the optimum is non-increasing
/// in lambda.
///
/// Each iteration solves at the midpoint, tightens the bracket toward the
/// budget crossing, and stops once successive lambdas differ by at most rho
/// (or the budget is hit exactly). If the last probed lambda overshoots the
/// budget, the returned lambda falls back to the smallest probed lambda known
/// to satisfy it, or to lambda_max; the infeasible_budget flag is set when
/// not even lambda_max satisfies it.
LambdaSearchResult determine_lambda(const CostMatrices& costs,
                                    const LambdaSearchConfig& cfg);

}  // namespace pkgopt
