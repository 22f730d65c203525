#include "pkgopt/lambda_search.hpp"

#include <cmath>
#include <optional>
#include <utility>

#include "pkgopt/errors.hpp"

namespace pkgopt {

LambdaSearchResult determine_lambda(const CostMatrices& costs,
                                    const LambdaSearchConfig& cfg) {
  if (cfg.rho <= 0.0) throw DomainError("rho must be > 0");
  if (cfg.lambda_max <= 0.0) throw DomainError("lambda_max must be > 0");
  const double budget =
      cfg.gamma ? *cfg.gamma * costs.current_damage_total : cfg.budget;
  if (budget < 0.0 || !std::isfinite(budget)) {
    throw DomainError("damage budget must be finite and >= 0");
  }

  LambdaSearchResult result;
  double lo = 0.0;
  double hi = cfg.lambda_max;
  double mid = (lo + hi) / 2.0;

  // Smallest probed lambda whose solution meets the budget (the bracket's
  // upper end only ever moves to such lambdas, and only downward).
  std::optional<std::pair<double, SolveOutcome>> feasible_probe;

  double lambda = mid;
  SolveOutcome last;
  bool stop = false;
  do {
    lambda = mid;
    last = solve_tikhonov(costs, lambda);
    ++result.iterations;
    result.trace.push_back({lambda, last.ship_cost, last.damage_cost});
    if (last.damage_cost < budget) {
      hi = mid;
      feasible_probe.emplace(lambda, last);
    } else {
      lo = mid;
    }
    mid = (lo + hi) / 2.0;
    if (std::abs(mid - lambda) <= cfg.rho || last.damage_cost == budget) {
      stop = true;
    }
  } while (!stop);

  result.lambda = lambda;
  result.outcome = std::move(last);

  if (result.outcome.damage_cost > budget) {
    // The bisection stopped on the over-budget side. Return the smallest
    // lambda known to satisfy the budget instead; failing that, the
    // lambda_max solution, flagged when even that overshoots.
    if (feasible_probe) {
      result.lambda = feasible_probe->first;
      result.outcome = std::move(feasible_probe->second);
    } else {
      result.lambda = cfg.lambda_max;
      result.outcome = solve_tikhonov(costs, cfg.lambda_max);
      if (result.outcome.damage_cost > budget) {
        result.infeasible_budget = true;
      }
    }
  }
  return result;
}

}  // namespace pkgopt
