#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pkgopt/matrix.hpp"

namespace pkgopt {

struct ProductRecord;

/// One historical shipment: product features, the package type used
/// (0-based robustness index) and whether it arrived damaged.
struct ShipmentRecord {
  std::string product_id;
  std::vector<double> features;
  std::size_t package_index = 0;
  int label = 0;  // 1 = packaging-related damage
};

/// Optional nonlinear feature construction. Both knobs are off by default.
/// Note that package interactions couple product features to the package
/// encoding, so with them enabled rank monotonicity is no longer structural;
/// use check_rank_monotonicity to audit such models.
struct FeatureExpansion {
  bool degree2 = false;               // squares and pairwise products
  bool package_interactions = false;  // feature x package-encoding terms

  friend bool operator==(const FeatureExpansion&,
                         const FeatureExpansion&) = default;
};

/// Logistic damage model whose per-type offsets are forced to be ordered.
///
/// The offset of type k (0-based, ascending robustness) is
///   offset(k) = beta_last + sum of eps[k .. n-2],
/// so eps[k] >= 0 makes offsets non-increasing in robustness and the
/// predicted damage probability non-increasing as packaging gets more
/// robust, for every feature vector.
///
/// Plain aggregate on purpose: fit() guarantees the invariants, but tests
/// may construct deliberately invalid instances.
struct MonotoneLogisticModel {
  std::vector<double> weights;  // over the expanded feature vector
  std::vector<double> eps;      // n-1 ordinal gaps, each >= 0 after training
  double beta_last = 0.0;       // offset of the most robust type
  FeatureExpansion expansion;
  std::vector<double> feature_means;  // standardization constants
  std::vector<double> feature_stds;
  std::size_t type_count = 0;
  bool converged = true;  // false = tolerance not met within max epochs

  std::size_t feature_dim() const { return feature_means.size(); }

  /// offset(k) for a 0-based package index.
  double offset(std::size_t k) const;
};

struct TrainConfig {
  double tau = 0.007;        // weight on class 0; class 1 gets 1 - tau
  double init_step = 1.0;    // backtracking line search schedule
  double step_growth = 2.0;
  double step_shrink = 0.5;
  std::size_t max_epochs = 2000;
  double tol = 1e-10;        // stop on loss delta <= tol
  std::uint64_t seed = 0;    // reserved; training itself is deterministic
  FeatureExpansion expansion;
};

/// Cumulative package encoding of length n for a 0-based index k:
/// k zeros followed by n-k ones. Dotting it with [eps..., beta_last]
/// reproduces offset(k).
std::vector<double> encode_package_feature(std::size_t k, std::size_t n);

/// Ordinal label propagation: every damaged shipment is replicated as
/// damaged into all less robust types, every undamaged shipment as undamaged
/// into all more robust types. Originals come first in input order, then the
/// synthetic rows grouped per original (ascending package index).
std::vector<ShipmentRecord> augment_shipments(
    const std::vector<ShipmentRecord>& shipments, std::size_t type_count);

/// Full-batch projected gradient descent on the class-weighted cross-entropy,
/// with a backtracking line search and projection of every eps component onto
/// [0, inf) after each step. Starts from the all-zeros model, so the returned
/// loss never exceeds the all-zeros loss. Deterministic.
MonotoneLogisticModel fit_damage_model(const std::vector<ShipmentRecord>& data,
                                       std::size_t type_count,
                                       const TrainConfig& cfg);

/// sigmoid(weights . expand(standardize(features)) + offset(k)), in (0,1).
double predict_damage_probability(const MonotoneLogisticModel& model,
                                  std::span<const double> features,
                                  std::size_t package_index);

/// Raw probabilities for every <record, type> pair (products x types).
Matrix predict_probability_matrix(const MonotoneLogisticModel& model,
                                  const std::vector<ProductRecord>& records);

struct MonotonicityReport {
  bool monotone = true;
  double worst_violation = 0.0;  // largest increase across adjacent types
};

/// Audits that predictions are non-increasing across package robustness for
/// every sample. Vacuously monotone on an empty sample list.
MonotonicityReport check_rank_monotonicity(
    const MonotoneLogisticModel& model,
    const std::vector<std::vector<double>>& sample_features);

/// Class-weighted mean cross-entropy of `model` on `data`, and its gradient
/// in the flat parameter layout [weights..., eps..., beta_last]. Exposed so
/// the finite-difference oracle can probe arbitrary parameter points.
struct LossGradient {
  double loss = 0.0;
  std::vector<double> gradient;
};

double weighted_loss(const MonotoneLogisticModel& model,
                     const std::vector<ShipmentRecord>& data, double tau);

LossGradient weighted_loss_gradient(const MonotoneLogisticModel& model,
                                    const std::vector<ShipmentRecord>& data,
                                    double tau);

std::vector<double> flat_parameters(const MonotoneLogisticModel& model);
void set_flat_parameters(MonotoneLogisticModel& model,
                         std::span<const double> params);

}  // namespace pkgopt
