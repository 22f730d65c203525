#include "pkgopt/synthetic.hpp"

#include <cmath>

#include "pkgopt/errors.hpp"
#include "pkgopt/numeric.hpp"
#include "pkgopt/rng.hpp"

namespace pkgopt {

namespace {

// Distinct substream tags so products, shipments and the ground-truth model
// never share generator state.
constexpr std::uint64_t kProductStream = 0x1000000000ULL;
constexpr std::uint64_t kShipmentStream = 0x2000000000ULL;
constexpr std::uint64_t kTruthStream = 0x3000000000ULL;
constexpr std::uint64_t kInstanceStream = 0x4000000000ULL;

}  // namespace

std::vector<double> GeneratorConfig::resolved_base_rates() const {
  if (!base_damage_rate.empty()) return base_damage_rate;
  // Geometric decay from 0.30 for the least robust type to 0.03 for the most
  // robust one.
  std::vector<double> rates(type_count);
  const double hi = 0.30, lo = 0.03;
  for (std::size_t k = 0; k < type_count; ++k) {
    const double t = type_count == 1
                         ? 0.0
                         : static_cast<double>(k) /
                               static_cast<double>(type_count - 1);
    rates[k] = hi * std::pow(lo / hi, t);
  }
  return rates;
}

void GeneratorConfig::validate() const {
  if (type_count < 2) throw DomainError("need at least two package types");
  if (material_min <= 0.0 || material_max <= material_min ||
      transport_min <= 0.0 || transport_max <= transport_min ||
      damage_cost_min <= 0.0 || damage_cost_max <= damage_cost_min ||
      velocity_min < 0.0 || velocity_max <= velocity_min) {
    throw DomainError("generator cost ranges must be positive and ordered");
  }
  const auto rates = resolved_base_rates();
  if (rates.size() != type_count) {
    throw DomainError("base damage rates must cover every type");
  }
  for (std::size_t k = 0; k < rates.size(); ++k) {
    if (!(rates[k] > 0.0 && rates[k] < 1.0)) {
      throw DomainError("base damage rates must lie in (0,1)");
    }
    if (k > 0 && rates[k] > rates[k - 1]) {
      throw DomainError("base damage rates must be non-increasing");
    }
  }
}

std::vector<ProductRecord> generate_products(const GeneratorConfig& cfg) {
  cfg.validate();
  std::vector<ProductRecord> out;
  out.reserve(cfg.product_count);
  for (std::size_t i = 0; i < cfg.product_count; ++i) {
    Rng rng = Rng::stream(cfg.seed, kProductStream + i);
    ProductRecord r;
    r.id = "prod" + std::to_string(i + 1);
    r.features.resize(cfg.feature_dim);
    for (auto& f : r.features) f = rng.normal();
    r.fragile = rng.bernoulli(cfg.p_fragile);
    r.liquid = rng.bernoulli(cfg.p_liquid);
    r.hazardous = rng.bernoulli(cfg.p_hazardous);
    r.current_type = rng.uniform_index(cfg.type_count);
    r.sales_velocity = rng.uniform(cfg.velocity_min, cfg.velocity_max);
    r.damage_cost = rng.uniform(cfg.damage_cost_min, cfg.damage_cost_max);
    r.ship_costs.resize(cfg.type_count);
    // Material and transport both increase strictly with robustness rank.
    const double mspan = cfg.material_max - cfg.material_min;
    const double tspan = cfg.transport_max - cfg.transport_min;
    const double inv_n = 1.0 / static_cast<double>(cfg.type_count);
    for (std::size_t j = 0; j < cfg.type_count; ++j) {
      r.ship_costs[j].material =
          cfg.material_min +
          mspan * (static_cast<double>(j) + rng.uniform()) * inv_n;
      r.ship_costs[j].transport =
          cfg.transport_min +
          tspan * (static_cast<double>(j) + rng.uniform()) * inv_n;
    }
    out.push_back(std::move(r));
  }
  return out;
}

MonotoneLogisticModel ground_truth_model(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng = Rng::stream(cfg.seed, kTruthStream);
  MonotoneLogisticModel truth;
  truth.type_count = cfg.type_count;
  truth.feature_means.assign(cfg.feature_dim, 0.0);
  truth.feature_stds.assign(cfg.feature_dim, 1.0);
  truth.weights.resize(cfg.feature_dim);
  for (auto& w : truth.weights) w = rng.uniform(-0.7, 0.7);
  const auto rates = cfg.resolved_base_rates();
  truth.eps.resize(cfg.type_count - 1);
  for (std::size_t k = 0; k + 1 < cfg.type_count; ++k) {
    truth.eps[k] = logit(rates[k]) - logit(rates[k + 1]);
  }
  truth.beta_last = logit(rates[cfg.type_count - 1]);
  return truth;
}

SyntheticShipments generate_shipments(
    const std::vector<ProductRecord>& products, const GeneratorConfig& cfg) {
  cfg.validate();
  SyntheticShipments out;
  out.truth = ground_truth_model(cfg);
  out.shipments.reserve(products.size() * cfg.shipments_per_product);
  for (std::size_t i = 0; i < products.size(); ++i) {
    Rng rng = Rng::stream(cfg.seed, kShipmentStream + i);
    for (std::size_t s = 0; s < cfg.shipments_per_product; ++s) {
      ShipmentRecord rec;
      rec.product_id = products[i].id;
      rec.features = products[i].features;
      rec.package_index = rng.uniform_index(cfg.type_count);
      const double p = predict_damage_probability(out.truth, rec.features,
                                                  rec.package_index);
      rec.label = rng.bernoulli(p) ? 1 : 0;
      out.shipments.push_back(std::move(rec));
    }
  }
  return out;
}

RandomInstance random_instance(std::uint64_t seed, std::size_t products,
                               std::size_t types, double mask_fraction,
                               double cost_lo, double cost_hi) {
  if (products == 0 || types == 0) {
    throw DomainError("instance needs at least one product and type");
  }
  if (!(mask_fraction >= 0.0 && mask_fraction < 1.0)) {
    throw DomainError("mask fraction must lie in [0,1)");
  }
  Rng rng = Rng::stream(seed, kInstanceStream);
  Matrix ship(products, types, 0.0);
  Matrix damage(products, types, 0.0);
  MaskMatrix mask(products, types, 0);
  for (std::size_t i = 0; i < products; ++i) {
    for (std::size_t j = 0; j < types; ++j) {
      ship(i, j) = rng.uniform(cost_lo, cost_hi);
      damage(i, j) = rng.uniform(cost_lo, cost_hi);
      mask(i, j) = rng.bernoulli(mask_fraction) ? 1 : 0;
    }
    bool any = false;
    for (std::size_t j = 0; j < types; ++j) any = any || mask(i, j) == 0;
    if (!any) mask(i, rng.uniform_index(types)) = 0;
  }

  Assignment current;
  current.chosen.resize(products);
  KahanSum current_damage;
  for (std::size_t i = 0; i < products; ++i) {
    std::vector<std::size_t> feasible;
    for (std::size_t j = 0; j < types; ++j) {
      if (mask(i, j) == 0) feasible.push_back(j);
    }
    current.chosen[i] = feasible[rng.uniform_index(feasible.size())];
    current_damage.add(damage(i, current.chosen[i]));
  }

  RandomInstance inst;
  inst.costs = CostMatrices::from_parts(std::move(ship), std::move(damage),
                                        std::move(mask),
                                        current_damage.value());
  inst.current_assignment = std::move(current);
  return inst;
}

}  // namespace pkgopt
