#pragma once

#include <cstdint>
#include <vector>

#include "pkgopt/catalog.hpp"
#include "pkgopt/cost_matrices.hpp"
#include "pkgopt/damage_model.hpp"
#include "pkgopt/tikhonov.hpp"

namespace pkgopt {

/// Seeded generators so the whole pipeline and every theorem check run
/// end-to-end without real data. Generation is pure given the seed and is
/// partitioned into per-product substreams, so it can be parallelized without
/// changing output.
struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t product_count = 100;
  std::size_t type_count = 4;
  std::size_t feature_dim = 4;
  /// Damage rate of a zero-feature product per type, non-increasing with
  /// robustness. Empty = a default geometric decay.
  std::vector<double> base_damage_rate;
  double material_min = 0.5, material_max = 2.5;
  double transport_min = 1.0, transport_max = 5.0;
  double damage_cost_min = 5.0, damage_cost_max = 50.0;
  double velocity_min = 0.5, velocity_max = 20.0;
  double p_fragile = 0.10, p_liquid = 0.10, p_hazardous = 0.05;
  std::size_t shipments_per_product = 100;

  std::vector<double> resolved_base_rates() const;
  void validate() const;
};

/// Products with ship costs strictly increasing in robustness rank.
std::vector<ProductRecord> generate_products(const GeneratorConfig& cfg);

/// The model labels are drawn from; shares MonotoneLogisticModel's exact
/// parameterization so recovery error is well-defined.
MonotoneLogisticModel ground_truth_model(const GeneratorConfig& cfg);

struct SyntheticShipments {
  std::vector<ShipmentRecord> shipments;
  MonotoneLogisticModel truth;
};

/// Uniform package per shipment, label Bernoulli with the ground-truth
/// probability.
SyntheticShipments generate_shipments(const std::vector<ProductRecord>& products,
                                      const GeneratorConfig& cfg);

/// A bare random instance for solver and oracle tests: uniform costs in
/// [cost_lo, cost_hi), roughly mask_fraction of cells masked (every row keeps
/// at least one feasible type), current assignment drawn among feasible
/// types.
struct RandomInstance {
  CostMatrices costs;
  Assignment current_assignment;
};

RandomInstance random_instance(std::uint64_t seed, std::size_t products,
                               std::size_t types, double mask_fraction,
                               double cost_lo = 1.0, double cost_hi = 100.0);

}  // namespace pkgopt
