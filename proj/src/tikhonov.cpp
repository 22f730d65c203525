#include "pkgopt/tikhonov.hpp"

#include <cmath>
#include <thread>

#include "pkgopt/errors.hpp"
#include "pkgopt/numeric.hpp"

namespace pkgopt {

namespace {

// Shared tie rule: prefer the smaller value, then the smaller damage entry,
// then the more robust (larger-index) type. Exact comparisons throughout.
struct RowChoice {
  std::size_t index = 0;
  double value = 0.0;
  double damage = 0.0;
  bool valid = false;

  void offer(std::size_t j, double value_j, double damage_j) {
    if (!valid || value_j < value ||
        (value_j == value &&
         (damage_j < damage || (damage_j == damage && j > index)))) {
      index = j;
      value = value_j;
      damage = damage_j;
      valid = true;
    }
  }
};

void choose_rows(const CostMatrices& costs, double lambda, std::size_t begin,
                 std::size_t end, std::vector<std::size_t>& chosen) {
  const std::size_t n = costs.types();
  for (std::size_t i = begin; i < end; ++i) {
    RowChoice best;
    for (std::size_t j = 0; j < n; ++j) {
      if (!costs.feasible(i, j)) continue;
      best.offer(j, costs.ship(i, j) + lambda * costs.damage(i, j),
                 costs.damage(i, j));
    }
    if (!best.valid) {
      throw InfeasibleProduct("product " + std::to_string(i) +
                              " has no feasible package type");
    }
    chosen[i] = best.index;
  }
}

}  // namespace

SolveOutcome evaluate(const CostMatrices& costs, const Assignment& assignment,
                      double lambda) {
  if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
  if (assignment.chosen.size() != costs.products()) {
    throw DimensionMismatch("assignment length does not match product count");
  }
  KahanSum ship, damage;
  for (std::size_t i = 0; i < costs.products(); ++i) {
    const std::size_t j = assignment.chosen[i];
    if (j >= costs.types() || !costs.feasible(i, j)) {
      throw InfeasibleAssignment("product " + std::to_string(i) +
                                 " assigned a masked or invalid type");
    }
    ship.add(costs.ship(i, j));
    damage.add(costs.damage(i, j));
  }
  SolveOutcome out;
  out.assignment = assignment;
  out.ship_cost = ship.value();
  out.damage_cost = damage.value();
  out.lambda = lambda;
  out.objective = out.ship_cost + lambda * out.damage_cost;
  return out;
}

SolveOutcome solve_tikhonov(const CostMatrices& costs, double lambda,
                            unsigned threads) {
  if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
  const std::size_t m = costs.products();
  Assignment assignment;
  assignment.chosen.assign(m, 0);

  if (threads <= 1 || m < 4096) {
    choose_rows(costs, lambda, 0, m, assignment.chosen);
  } else {
    const unsigned workers =
        std::min<unsigned>(threads, 64u);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (m + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(m, static_cast<std::size_t>(w) * chunk);
      const std::size_t end = std::min(m, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back([&, begin, end] {
        choose_rows(costs, lambda, begin, end, assignment.chosen);
      });
    }
    for (auto& t : pool) t.join();
  }

  // Aggregation stays sequential and canonical regardless of thread count.
  return evaluate(costs, assignment, lambda);
}

std::size_t recommend_new_product(std::span<const double> unit_ship_costs,
                                  std::span<const double> unit_damage_costs,
                                  std::span<const std::uint8_t> mask_row,
                                  double lambda) {
  if (lambda < 0.0) throw NegativeLambda("lambda must be >= 0");
  const std::size_t n = unit_ship_costs.size();
  if (unit_damage_costs.size() != n || mask_row.size() != n) {
    throw DimensionMismatch("per-type cost rows must share one length");
  }
  RowChoice best;
  for (std::size_t j = 0; j < n; ++j) {
    if (mask_row[j] != 0) continue;
    best.offer(j, unit_ship_costs[j] + lambda * unit_damage_costs[j],
               unit_damage_costs[j]);
  }
  if (!best.valid) {
    throw InfeasibleProduct("no feasible package type");
  }
  return best.index;
}

}  // namespace pkgopt
