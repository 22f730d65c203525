#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pkgopt {

enum class CalibrationMethod { identity, isotonic, platt, weight_correction };

struct CalibrationKnot {
  double raw = 0.0;
  double calibrated = 0.0;
};

/// Monotone non-decreasing map from raw to calibrated probability.
/// Fitted maps are immutable; apply() is pure and total on [0,1].
struct CalibrationMap {
  CalibrationMethod method = CalibrationMethod::identity;
  std::vector<CalibrationKnot> knots;  // isotonic: raw strictly increasing
  double platt_a = 1.0;
  double platt_b = 0.0;
  double tau = 0.5;  // weight_correction

  double apply(double raw) const;
};

/// Pool-adjacent-violators fit: the least-squares monotone non-decreasing
/// step function through (raw, label). Evaluation between knots extends the
/// step to the left-adjacent value and clamps at the ends.
CalibrationMap fit_isotonic(std::span<const double> raw,
                            std::span<const int> labels);

/// Fits calibrated = sigmoid(a * logit(raw) + b) by minimizing unweighted
/// log-loss with the same deterministic backtracking descent used for model
/// training. Requires both classes.
CalibrationMap fit_platt(std::span<const double> raw,
                         std::span<const int> labels);

/// Removes the effect of weighting class 0 by tau and class 1 by 1 - tau:
/// sigmoid(logit(raw) - log((1-tau)/tau)). Throws DomainError outside (0,1).
double apply_weight_correction(double raw, double tau);

CalibrationMap make_weight_correction(double tau);

/// Mean per-shipment log-loss; probabilities clamped to
/// [1e-12, 1 - 1e-12] before the logs.
double log_loss(std::span<const double> probabilities,
                std::span<const int> labels);

struct TypeReliability {
  std::size_t type_index = 0;
  double weighted_abs_diff = 0.0;
  std::size_t shipment_count = 0;
  bool skipped = false;  // no shipments for this type
};

/// Per package type: shipments are split into `quantiles` equal-count buckets
/// by calibrated probability (ties broken by input index, bucket sizes differ
/// by at most one); the per-bucket |empirical damage rate - mean probability|
/// values are combined weighted by bucket share.
std::vector<TypeReliability> reliability_report(
    std::span<const double> calibrated, std::span<const int> labels,
    std::span<const std::size_t> package_index, std::size_t type_count,
    std::size_t quantiles = 20);

}  // namespace pkgopt
