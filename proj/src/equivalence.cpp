#include "pkgopt/equivalence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pkgopt/errors.hpp"
#include "pkgopt/lambda_search.hpp"
#include "pkgopt/numeric.hpp"

namespace pkgopt {

namespace {

constexpr std::size_t kMaxBruteForceProducts = 12;

void guard_size(const CostMatrices& costs) {
  if (costs.products() > kMaxBruteForceProducts) {
    throw InstanceTooLarge("exhaustive search is limited to " +
                           std::to_string(kMaxBruteForceProducts) +
                           " products");
  }
}

std::vector<std::vector<std::size_t>> feasible_choices(
    const CostMatrices& costs) {
  std::vector<std::vector<std::size_t>> out(costs.products());
  for (std::size_t i = 0; i < costs.products(); ++i) {
    for (std::size_t j = 0; j < costs.types(); ++j) {
      if (costs.feasible(i, j)) out[i].push_back(j);
    }
    if (out[i].empty()) {
      throw InfeasibleProduct("product " + std::to_string(i) +
                              " has no feasible package type");
    }
  }
  return out;
}

// Walks every feasible assignment, carrying the compensated partial sums by
// value so each leaf sees exactly the ship/damage totals that evaluate()
// would produce for the same assignment.
template <typename Leaf>
void enumerate(const CostMatrices& costs,
               const std::vector<std::vector<std::size_t>>& choices,
               std::size_t depth, std::vector<std::size_t>& chosen,
               KahanSum ship, KahanSum damage, Leaf&& leaf) {
  if (depth == costs.products()) {
    leaf(chosen, ship.value(), damage.value());
    return;
  }
  for (std::size_t j : choices[depth]) {
    chosen[depth] = j;
    KahanSum s = ship;
    KahanSum d = damage;
    s.add(costs.ship(depth, j));
    d.add(costs.damage(depth, j));
    enumerate(costs, choices, depth + 1, chosen, s, d, leaf);
  }
}

bool lex_smaller(const std::vector<std::size_t>& a,
                 const std::vector<std::size_t>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Smallest achievable total damage: each product takes its cheapest feasible
// damage entry.
double min_total_damage(const CostMatrices& costs) {
  KahanSum acc;
  for (std::size_t i = 0; i < costs.products(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < costs.types(); ++j) {
      if (costs.feasible(i, j)) best = std::min(best, costs.damage(i, j));
    }
    acc.add(best);
  }
  return acc.value();
}

}  // namespace

std::optional<BruteForceOutcome> brute_force_ivanov(const CostMatrices& costs,
                                                    double budget) {
  guard_size(costs);
  auto choices = feasible_choices(costs);
  std::vector<std::size_t> chosen(costs.products(), 0);

  bool found = false;
  BruteForceOutcome best;
  enumerate(costs, choices, 0, chosen, KahanSum{}, KahanSum{},
            [&](const std::vector<std::size_t>& x, double ship, double damage) {
              if (damage > budget) return;
              const bool better =
                  !found || ship < best.ship_cost ||
                  (ship == best.ship_cost &&
                   (damage < best.damage_cost ||
                    (damage == best.damage_cost &&
                     lex_smaller(x, best.assignment.chosen))));
              if (better) {
                found = true;
                best.assignment.chosen = x;
                best.ship_cost = ship;
                best.damage_cost = damage;
                best.objective = ship;
              }
            });
  if (!found) return std::nullopt;
  return best;
}

BruteForceOutcome brute_force_tikhonov(const CostMatrices& costs,
                                       double lambda) {
  if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
  guard_size(costs);
  auto choices = feasible_choices(costs);
  std::vector<std::size_t> chosen(costs.products(), 0);

  bool found = false;
  BruteForceOutcome best;
  enumerate(
      costs, choices, 0, chosen, KahanSum{}, KahanSum{},
      [&](const std::vector<std::size_t>& x, double ship, double damage) {
        const double objective = ship + lambda * damage;
        // Mirrors the per-product rule: smaller objective, then smaller
        // damage, then the more robust type at the first differing product.
        const bool better =
            !found || objective < best.objective ||
            (objective == best.objective &&
             (damage < best.damage_cost ||
              (damage == best.damage_cost &&
               lex_smaller(best.assignment.chosen, x))));
        if (better) {
          found = true;
          best.assignment.chosen = x;
          best.ship_cost = ship;
          best.damage_cost = damage;
          best.objective = objective;
        }
      });
  return best;
}

BreakpointSet enumerate_breakpoints(const CostMatrices& costs) {
  BreakpointSet set;
  for (std::size_t i = 0; i < costs.products(); ++i) {
    for (std::size_t a = 0; a < costs.types(); ++a) {
      if (!costs.feasible(i, a)) continue;
      for (std::size_t b = a + 1; b < costs.types(); ++b) {
        if (!costs.feasible(i, b)) continue;
        const double dd = costs.damage(i, a) - costs.damage(i, b);
        if (dd == 0.0) continue;
        const double crossing = (costs.ship(i, b) - costs.ship(i, a)) / dd;
        if (crossing > 0.0 && std::isfinite(crossing)) {
          set.lambdas.push_back(crossing);
        }
      }
    }
  }
  std::sort(set.lambdas.begin(), set.lambdas.end());
  set.lambdas.erase(std::unique(set.lambdas.begin(), set.lambdas.end()),
                    set.lambdas.end());
  return set;
}

std::vector<CurveSegment> sweep_cost_curve(const CostMatrices& costs,
                                           const BreakpointSet& breakpoints) {
  std::vector<CurveSegment> curve;
  const auto& bp = breakpoints.lambdas;

  double lo = 0.0;
  for (std::size_t s = 0; s <= bp.size(); ++s) {
    CurveSegment seg;
    seg.lambda_lo = lo;
    seg.lambda_hi =
        s < bp.size() ? bp[s] : std::numeric_limits<double>::infinity();
    const double probe = s < bp.size()
                             ? (seg.lambda_lo + seg.lambda_hi) / 2.0
                             : (bp.empty() ? 1.0 : bp.back() + 1.0);
    const SolveOutcome at = solve_tikhonov(costs, probe);
    seg.ship_cost = at.ship_cost;
    seg.damage_cost = at.damage_cost;
    seg.objective_mid = at.objective;
    curve.push_back(seg);
    lo = seg.lambda_hi;
  }

  for (std::size_t s = 1; s < curve.size(); ++s) {
    if (curve[s].damage_cost > curve[s - 1].damage_cost ||
        curve[s].ship_cost < curve[s - 1].ship_cost) {
      throw PropertyViolation(
          "cost curve is not monotone across breakpoint segments");
    }
  }
  return curve;
}

EquivalenceReport verify_equivalence(const CostMatrices& costs, double budget,
                                     double rho, double lambda_max) {
  EquivalenceReport report;
  report.budget = budget;
  report.delta_bound = damage_jump_bound(costs);

  LambdaSearchConfig cfg;
  cfg.budget = budget;
  cfg.rho = rho;
  cfg.lambda_max = lambda_max;
  const LambdaSearchResult search = determine_lambda(costs, cfg);

  // Realize T* on the over-budget side of the damage curve: the largest
  // probed lambda whose damage still met or exceeded the budget sits just
  // below the crossing, where the curve takes the value the constrained
  // problem can actually attain.
  const LambdaProbe* upper = nullptr;
  for (const auto& probe : search.trace) {
    if (probe.damage_cost >= budget &&
        (upper == nullptr || probe.lambda > upper->lambda)) {
      upper = &probe;
    }
  }

  const double lambda_found = upper ? upper->lambda : search.lambda;
  const SolveOutcome tik = solve_tikhonov(costs, lambda_found);
  report.lambda_found = lambda_found;
  report.ship_tikhonov = tik.ship_cost;
  report.damage_tikhonov = tik.damage_cost;
  // When every probe already met the budget the constrained optimum cannot
  // move past the budget itself; T* = budget realizes the same solution.
  report.t_star = upper ? tik.damage_cost : std::max(budget, tik.damage_cost);

  const auto ivanov = brute_force_ivanov(costs, report.t_star);
  if (!ivanov) {
    // Cannot happen: the unconstrained solution itself meets T*.
    throw PropertyViolation("constrained oracle found no solution at T*");
  }
  report.ship_ivanov = ivanov->ship_cost;
  report.damage_ivanov = ivanov->damage_cost;

  const bool equal = report.ship_ivanov == report.ship_tikhonov &&
                     report.damage_ivanov == report.damage_tikhonov;

  bool window_ok = true;
  if (min_total_damage(costs) <= budget) {
    window_ok = budget <= report.t_star &&
                (report.t_star < budget + report.delta_bound ||
                 (report.delta_bound == 0.0 && report.t_star == budget));
  }
  report.verdict = equal && window_ok;
  return report;
}

PreflightReport noncollinearity_preflight(const CostMatrices& costs) {
  PreflightReport report;
  auto flag = [&](std::string text) {
    report.ok = false;
    report.violations.push_back(std::move(text));
  };

  // Per-product geometry: no duplicate and no three collinear
  // (damage, ship) points among feasible types.
  for (std::size_t i = 0; i < costs.products(); ++i) {
    std::vector<std::size_t> feas;
    for (std::size_t j = 0; j < costs.types(); ++j) {
      if (costs.feasible(i, j)) feas.push_back(j);
    }
    for (std::size_t a = 0; a < feas.size(); ++a) {
      for (std::size_t b = a + 1; b < feas.size(); ++b) {
        if (costs.damage(i, feas[a]) == costs.damage(i, feas[b]) &&
            costs.ship(i, feas[a]) == costs.ship(i, feas[b])) {
          flag("product " + std::to_string(i) + ": types " +
               std::to_string(feas[a]) + "," + std::to_string(feas[b]) +
               " have identical cost points");
        }
      }
    }
    for (std::size_t a = 0; a < feas.size(); ++a) {
      for (std::size_t b = a + 1; b < feas.size(); ++b) {
        for (std::size_t c = b + 1; c < feas.size(); ++c) {
          const double d1 = costs.damage(i, feas[b]) - costs.damage(i, feas[a]);
          const double s1 = costs.ship(i, feas[b]) - costs.ship(i, feas[a]);
          const double d2 = costs.damage(i, feas[c]) - costs.damage(i, feas[a]);
          const double s2 = costs.ship(i, feas[c]) - costs.ship(i, feas[a]);
          if (d1 * s2 - d2 * s1 == 0.0) {
            flag("product " + std::to_string(i) + ": types " +
                 std::to_string(feas[a]) + "," + std::to_string(feas[b]) +
                 "," + std::to_string(feas[c]) + " are collinear");
          }
        }
      }
    }
  }

  // No crossing lambda shared between two different products.
  struct Crossing {
    double lambda;
    std::size_t product;
  };
  std::vector<Crossing> crossings;
  for (std::size_t i = 0; i < costs.products(); ++i) {
    for (std::size_t a = 0; a < costs.types(); ++a) {
      if (!costs.feasible(i, a)) continue;
      for (std::size_t b = a + 1; b < costs.types(); ++b) {
        if (!costs.feasible(i, b)) continue;
        const double dd = costs.damage(i, a) - costs.damage(i, b);
        if (dd == 0.0) continue;
        const double lam = (costs.ship(i, b) - costs.ship(i, a)) / dd;
        if (lam >= 0.0 && std::isfinite(lam)) crossings.push_back({lam, i});
      }
    }
  }
  std::sort(crossings.begin(), crossings.end(),
            [](const Crossing& x, const Crossing& y) {
              return x.lambda < y.lambda ||
                     (x.lambda == y.lambda && x.product < y.product);
            });
  for (std::size_t k = 1; k < crossings.size(); ++k) {
    if (crossings[k].lambda == crossings[k - 1].lambda &&
        crossings[k].product != crossings[k - 1].product) {
      flag("products " + std::to_string(crossings[k - 1].product) + " and " +
           std::to_string(crossings[k].product) +
           " share a tie at lambda = " + std::to_string(crossings[k].lambda));
    }
  }
  return report;
}

}  // namespace pkgopt
