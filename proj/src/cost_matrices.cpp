#include "pkgopt/cost_matrices.hpp"

#include <cmath>
#include <limits>

#include "pkgopt/errors.hpp"
#include "pkgopt/numeric.hpp"

namespace pkgopt {

namespace {

void require_row_feasibility(const MaskMatrix& mask) {
  for (std::size_t i = 0; i < mask.rows(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < mask.cols(); ++j) {
      if (mask(i, j) == 0) {
        any = true;
        break;
      }
    }
    if (!any) {
      throw InfeasibleProduct("product " + std::to_string(i) +
                              " has no feasible package type");
    }
  }
}

void check_records(const std::vector<ProductRecord>& records,
                   std::size_t type_count) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.ship_costs.size() != type_count) {
      throw DimensionMismatch("product " + r.id + " has " +
                              std::to_string(r.ship_costs.size()) +
                              " ship costs, catalog has " +
                              std::to_string(type_count) + " types");
    }
    if (r.current_type >= type_count) {
      throw IndexOutOfRange("product " + r.id + ": current type out of range");
    }
    if (r.sales_velocity < 0.0 || r.damage_cost < 0.0) {
      throw DomainError("product " + r.id +
                        ": negative velocity or damage cost");
    }
    for (const auto& sc : r.ship_costs) {
      if (!sc.oversize &&
          (!std::isfinite(sc.total()) || sc.material < 0.0 ||
           sc.transport < 0.0)) {
        throw DomainError("product " + r.id + ": invalid ship cost");
      }
    }
  }
}

bool banned_by(const std::vector<std::string>& banned,
               const PackageCatalog& catalog, std::size_t j) {
  for (const auto& name : banned) {
    if (auto idx = catalog.index_of(name); idx && *idx == j) return true;
  }
  return false;
}

}  // namespace

CostMatrices CostMatrices::from_parts(Matrix ship, Matrix damage,
                                      MaskMatrix mask,
                                      double current_damage_total) {
  if (ship.rows() != damage.rows() || ship.cols() != damage.cols() ||
      ship.rows() != mask.rows() || ship.cols() != mask.cols()) {
    throw DimensionMismatch("cost matrices must share one shape");
  }
  for (std::size_t i = 0; i < ship.rows(); ++i) {
    for (std::size_t j = 0; j < ship.cols(); ++j) {
      if (!std::isfinite(ship(i, j)) || !std::isfinite(damage(i, j)) ||
          ship(i, j) < 0.0 || damage(i, j) < 0.0) {
        throw DomainError("cost entries must be finite and nonnegative");
      }
    }
  }
  require_row_feasibility(mask);
  CostMatrices out;
  out.ship = std::move(ship);
  out.damage = std::move(damage);
  out.mask = std::move(mask);
  out.current_damage_total = current_damage_total;
  return out;
}

MaskMatrix build_mask(const std::vector<ProductRecord>& records,
                      const PackageCatalog& catalog, const MaskRuleSet& rules,
                      const Matrix* probs) {
  catalog.validate();
  const std::size_t m = records.size();
  const std::size_t n = catalog.size();
  check_records(records, n);
  if (probs != nullptr && (probs->rows() != m || probs->cols() != n)) {
    throw DimensionMismatch("probability matrix shape does not match records");
  }

  MaskMatrix mask(m, n, 0);

  // Fleet-mean current damage rate, for the rate-threshold families.
  double mean_rate = 0.0;
  if (probs != nullptr && m > 0) {
    KahanSum acc;
    for (std::size_t i = 0; i < m; ++i) {
      acc.add((*probs)(i, records[i].current_type));
    }
    mean_rate = acc.value() / static_cast<double>(m);
  }

  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = records[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (rules.oversize_enabled && r.ship_costs[j].oversize) {
        mask(i, j) = 1;
        continue;
      }
      if (rules.flag_rules_enabled && j != r.current_type) {
        const bool flagged =
            (r.liquid && banned_by(rules.liquid_banned, catalog, j)) ||
            (r.fragile && banned_by(rules.fragile_banned, catalog, j)) ||
            (r.hazardous && banned_by(rules.hazardous_banned, catalog, j));
        if (flagged) {
          mask(i, j) = 1;
          continue;
        }
      }
      if (rules.category_ban_enabled) {
        bool in_category = false;
        for (std::size_t f : rules.category_ban_features) {
          if (f < r.features.size() && r.features[f] > 0.5) {
            in_category = true;
            break;
          }
        }
        if (in_category) {
          bool banned = false;
          for (std::size_t t : rules.category_banned_types) {
            if (t == j) {
              banned = true;
              break;
            }
          }
          if (banned) {
            mask(i, j) = 1;
            continue;
          }
        }
      }
      if (probs != nullptr) {
        const double rate = (*probs)(i, r.current_type);
        if (rules.high_damage_enabled &&
            rate > rules.high_damage_factor * mean_rate &&
            j < r.current_type) {
          mask(i, j) = 1;
          continue;
        }
        if (rules.low_damage_enabled &&
            rate < rules.low_damage_factor * mean_rate &&
            j > r.current_type) {
          // Only block the move when the more robust type also ships more
          // expensively; velocity scales both sides equally.
          if (r.ship_costs[j].total() * r.sales_velocity >
              r.ship_costs[r.current_type].total() * r.sales_velocity) {
            mask(i, j) = 1;
            continue;
          }
        }
      }
    }
  }

  require_row_feasibility(mask);
  return mask;
}

CostMatrices build_cost_matrices(const std::vector<ProductRecord>& records,
                                 const PackageCatalog& catalog,
                                 const Matrix& probs,
                                 const MaskRuleSet& rules) {
  catalog.validate();
  const std::size_t m = records.size();
  const std::size_t n = catalog.size();
  check_records(records, n);
  if (probs.rows() != m || probs.cols() != n) {
    throw DimensionMismatch("probability matrix shape does not match records");
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(probs(i, j) >= 0.0 && probs(i, j) <= 1.0)) {
        throw DomainError("damage probabilities must lie in [0,1]");
      }
    }
  }

  Matrix ship(m, n, 0.0);
  Matrix damage(m, n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& r = records[i];
    for (std::size_t j = 0; j < n; ++j) {
      // Oversize cells keep a zero ship cost; the mask makes them
      // unreachable, so the stored value never matters.
      ship(i, j) =
          r.ship_costs[j].oversize ? 0.0 : r.ship_costs[j].total() * r.sales_velocity;
      damage(i, j) = probs(i, j) * r.sales_velocity * r.damage_cost;
    }
  }

  MaskMatrix mask = build_mask(records, catalog, rules, &probs);

  KahanSum current;
  for (std::size_t i = 0; i < m; ++i) {
    current.add(damage(i, records[i].current_type));
  }

  return CostMatrices::from_parts(std::move(ship), std::move(damage),
                                  std::move(mask), current.value());
}

double damage_jump_bound(const CostMatrices& costs) {
  double bound = 0.0;
  for (std::size_t i = 0; i < costs.products(); ++i) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < costs.types(); ++j) {
      if (!costs.feasible(i, j)) continue;
      lo = std::min(lo, costs.damage(i, j));
      hi = std::max(hi, costs.damage(i, j));
    }
    bound = std::max(bound, hi - lo);
  }
  return bound;
}

}  // namespace pkgopt
