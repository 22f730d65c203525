#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pkgopt/catalog.hpp"
#include "pkgopt/matrix.hpp"

namespace pkgopt {

/// Business rules that mark <product, type> cells infeasible.
///
/// Five rule families:
///   1. oversize: a product that cannot fit a type's largest container may
///      not use that type
///   2. flags: liquid / fragile / hazardous products are barred from the
///      configured type names, except the exact type they currently ship in
///      (current data may legitimately contradict a possibly-wrong flag)
///   3. high current damage rate: moving to a less robust type is barred
///   4. very low current damage rate: moving to a more robust type that also
///      ships more expensively is barred
///   5. category bans: products marked by configured feature columns are
///      barred from the configured types outright
///
/// Families 3 and 4 compare the product's current-type damage probability
/// against the fleet mean; they only apply when probabilities are supplied.
struct MaskRuleSet {
  bool oversize_enabled = true;
  bool flag_rules_enabled = true;
  std::vector<std::string> liquid_banned = {"NAP", "PL", "PS", "JM"};
  std::vector<std::string> fragile_banned = {"NAP", "PL", "PS", "JM", "CP", "T"};
  std::vector<std::string> hazardous_banned = {"NAP", "PL", "PS"};
  bool high_damage_enabled = true;
  double high_damage_factor = 2.0;  // rate > factor * fleet mean counts as high
  bool low_damage_enabled = true;
  double low_damage_factor = 0.25;  // rate < factor * fleet mean counts as low
  bool category_ban_enabled = false;
  std::vector<std::size_t> category_ban_features;  // one-hot feature columns
  std::vector<std::size_t> category_banned_types = {0};  // 0-based indices

  static MaskRuleSet none() {
    MaskRuleSet r;
    r.oversize_enabled = false;
    r.flag_rules_enabled = false;
    r.high_damage_enabled = false;
    r.low_damage_enabled = false;
    r.category_ban_enabled = false;
    return r;
  }
};

/// The solver's whole view of an instance: net shipment cost, expected
/// damage cost and feasibility per <product, type>, plus the damage total of
/// the current assignment.
///
/// Immutable after construction by convention; any number of readers may
/// share an instance.
struct CostMatrices {
  Matrix ship;      // ship(i,j) = (material + transport) * sales velocity
  Matrix damage;    // damage(i,j) = p(damage|i,j) * velocity * damage cost
  MaskMatrix mask;  // 1 = infeasible; every row has at least one 0
  double current_damage_total = 0.0;

  std::size_t products() const { return ship.rows(); }
  std::size_t types() const { return ship.cols(); }
  bool feasible(std::size_t i, std::size_t j) const { return mask(i, j) == 0; }

  /// Assembles matrices built elsewhere (tests, generators). Validates
  /// shapes, nonnegativity and row feasibility.
  static CostMatrices from_parts(Matrix ship, Matrix damage, MaskMatrix mask,
                                 double current_damage_total);
};

/// Applies the enabled rule families. `probs` (calibrated damage
/// probabilities, products x types) enables families 3 and 4; pass nullptr
/// to skip them. Throws InfeasibleProduct if a product loses every type.
MaskMatrix build_mask(const std::vector<ProductRecord>& records,
                      const PackageCatalog& catalog, const MaskRuleSet& rules,
                      const Matrix* probs = nullptr);

/// Builds the full cost view from product records and calibrated damage
/// probabilities.
CostMatrices build_cost_matrices(const std::vector<ProductRecord>& records,
                                 const PackageCatalog& catalog,
                                 const Matrix& probs,
                                 const MaskRuleSet& rules = MaskRuleSet{});

/// Largest feasible per-product damage spread,
/// max_i [max_feasible damage(i,j) - min_feasible damage(i,j)].
/// Upper-bounds every jump of the piecewise-constant damage curve.
double damage_jump_bound(const CostMatrices& costs);

}  // namespace pkgopt
