#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pkgopt/cost_matrices.hpp"
#include "pkgopt/tikhonov.hpp"

namespace pkgopt {

/// Oracles and analyses that make the solver's theory directly testable:
/// exhaustive solvers for both formulations, exact breakpoint enumeration of
/// the piecewise-constant cost curves, and the constrained/unconstrained
/// equivalence check.

/// Lambda values where some product's best choice changes. Between two
/// consecutive breakpoints both cost curves are constant.
struct BreakpointSet {
  std::vector<double> lambdas;  // strictly increasing, all > 0
};

struct BruteForceOutcome {
  Assignment assignment;
  double ship_cost = 0.0;
  double damage_cost = 0.0;
  double objective = 0.0;
};

struct CurveSegment {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;  // +inf on the last segment
  double ship_cost = 0.0;
  double damage_cost = 0.0;
  double objective_mid = 0.0;  // objective at the probed midpoint
};

struct EquivalenceReport {
  double budget = 0.0;       // requested damage budget T
  double lambda_found = 0.0;
  double damage_ivanov = 0.0;
  double ship_ivanov = 0.0;
  double damage_tikhonov = 0.0;
  double ship_tikhonov = 0.0;
  double delta_bound = 0.0;
  double t_star = 0.0;       // realized budget with identical solutions
  bool verdict = false;
};

struct PreflightReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Exhaustive minimum of ship cost subject to damage <= budget. Empty when
/// no feasible assignment meets the budget. Ties: smaller damage, then
/// lexicographically smallest chosen vector. Guarded to <= 12 products.
std::optional<BruteForceOutcome> brute_force_ivanov(const CostMatrices& costs,
                                                    double budget);

/// Exhaustive minimum of ship + lambda * damage with the same tie rule as
/// solve_tikhonov (smaller total damage, then the more robust type at the
/// first differing product). Guarded to <= 12 products.
BruteForceOutcome brute_force_tikhonov(const CostMatrices& costs,
                                       double lambda);

/// All positive crossing values (ship[j2]-ship[j1]) / (damage[j1]-damage[j2])
/// over feasible type pairs of every product, sorted and de-duplicated by
/// exact equality.
BreakpointSet enumerate_breakpoints(const CostMatrices& costs);

/// Solves at the midpoint of every interval between consecutive breakpoints
/// (plus one point beyond the last) and returns the piecewise-constant cost
/// curve. Throws PropertyViolation if damage fails to be non-increasing or
/// ship non-decreasing across segments.
std::vector<CurveSegment> sweep_cost_curve(const CostMatrices& costs,
                                           const BreakpointSet& breakpoints);

/// End-to-end equivalence check: runs the lambda search against `budget`,
/// realizes T* as the damage cost on the over-budget side of the final
/// bracket, solves the constrained problem at T* by brute force, and checks
/// that both formulations agree exactly and that T* lands in
/// [budget, budget + delta_bound).
EquivalenceReport verify_equivalence(const CostMatrices& costs, double budget,
                                     double rho, double lambda_max);

/// Flags instances whose cost geometry is degenerate: three collinear
/// (damage, ship) points within a product, duplicate points within a
/// product, or a crossing lambda shared by two different products. Randomly
/// drawn real costs violate these with probability zero; equality-sensitive
/// tests use this to re-seed.
PreflightReport noncollinearity_preflight(const CostMatrices& costs);

}  // namespace pkgopt
