#include "pkgopt/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pkgopt/errors.hpp"
#include "pkgopt/numeric.hpp"

namespace pkgopt {

namespace {

void check_labels(std::span<const int> labels) {
  for (int y : labels) {
    if (y != 0 && y != 1) throw DomainError("labels must be 0 or 1");
  }
}

}  // namespace

double CalibrationMap::apply(double raw) const {
  switch (method) {
    case CalibrationMethod::identity:
      return clamp(raw, 0.0, 1.0);
    case CalibrationMethod::isotonic: {
      // Left-constant step function, clamped at the ends.
      auto it = std::upper_bound(
          knots.begin(), knots.end(), raw,
          [](double v, const CalibrationKnot& k) { return v < k.raw; });
      if (it == knots.begin()) return knots.front().calibrated;
      return std::prev(it)->calibrated;
    }
    case CalibrationMethod::platt:
      return sigmoid(platt_a * logit(clamp_probability(raw)) + platt_b);
    case CalibrationMethod::weight_correction:
      return sigmoid(logit(clamp_probability(raw)) -
                     std::log((1.0 - tau) / tau));
  }
  return raw;
}

CalibrationMap fit_isotonic(std::span<const double> raw,
                            std::span<const int> labels) {
  if (raw.size() != labels.size()) {
    throw LengthMismatch("raw scores and labels differ in length");
  }
  if (raw.empty()) throw EmptyInput("isotonic fit needs at least one point");
  check_labels(labels);

  std::vector<std::size_t> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw[a] < raw[b];
  });

  // Equal raw scores must receive equal fitted values, so pool them up front.
  struct Block {
    double raw_lo;
    double total;
    double weight;
    double mean() const { return total / weight; }
  };
  std::vector<Block> blocks;
  for (std::size_t idx : order) {
    if (!blocks.empty() && blocks.back().raw_lo == raw[idx]) {
      blocks.back().total += labels[idx];
      blocks.back().weight += 1.0;
    } else {
      blocks.push_back({raw[idx], static_cast<double>(labels[idx]), 1.0});
    }
  }

  // Pool adjacent violators.
  std::vector<Block> stack;
  for (const Block& b : blocks) {
    stack.push_back(b);
    while (stack.size() > 1 &&
           stack[stack.size() - 2].mean() > stack.back().mean()) {
      Block top = stack.back();
      stack.pop_back();
      stack.back().total += top.total;
      stack.back().weight += top.weight;
    }
  }

  CalibrationMap map;
  map.method = CalibrationMethod::isotonic;
  map.knots.reserve(stack.size());
  for (const Block& b : stack) {
    map.knots.push_back({b.raw_lo, b.mean()});
  }
  return map;
}

CalibrationMap fit_platt(std::span<const double> raw,
                         std::span<const int> labels) {
  if (raw.size() != labels.size()) {
    throw LengthMismatch("raw scores and labels differ in length");
  }
  if (raw.empty()) throw EmptyInput("platt fit needs at least one point");
  check_labels(labels);
  bool pos = false, neg = false;
  for (int y : labels) (y ? pos : neg) = true;
  if (!pos || !neg) throw SingleClassData("platt fit needs both classes");

  std::vector<double> x(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    x[i] = logit(clamp_probability(raw[i]));
  }

  const double inv = 1.0 / static_cast<double>(x.size());
  auto loss_grad = [&](double a, double b, double* ga, double* gb) {
    KahanSum acc;
    double da = 0.0, db = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double s = a * x[i] + b;
      const double y = labels[i];
      acc.add(softplus(s) - y * s);
      const double g = (sigmoid(s) - y) * inv;
      da += g * x[i];
      db += g;
    }
    if (ga) *ga = da;
    if (gb) *gb = db;
    return acc.value() * inv;
  };

  // Same deterministic backtracking descent as the model trainer, started
  // from the identity map.
  double a = 1.0, b = 0.0;
  double ga, gb;
  double loss = loss_grad(a, b, &ga, &gb);
  double step = 1.0;
  for (int epoch = 0; epoch < 2000; ++epoch) {
    step = std::min(step * 2.0, 1e8);
    bool accepted = false;
    double ca = a, cb = b, closs = loss;
    while (step >= 1e-20) {
      ca = a - step * ga;
      cb = b - step * gb;
      closs = loss_grad(ca, cb, nullptr, nullptr);
      if (closs <= loss - 1e-4 * step * (ga * ga + gb * gb)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    a = ca;
    b = cb;
    const double delta = loss - closs;
    loss = closs;
    if (delta <= 1e-12) break;
    loss = loss_grad(a, b, &ga, &gb);
  }

  CalibrationMap map;
  map.method = CalibrationMethod::platt;
  map.platt_a = a;
  map.platt_b = b;
  return map;
}

double apply_weight_correction(double raw, double tau) {
  if (!(raw > 0.0 && raw < 1.0)) {
    throw DomainError("raw probability must lie strictly inside (0,1)");
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw DomainError("tau must lie strictly inside (0,1)");
  }
  return sigmoid(logit(raw) - std::log((1.0 - tau) / tau));
}

CalibrationMap make_weight_correction(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw DomainError("tau must lie strictly inside (0,1)");
  }
  CalibrationMap map;
  map.method = CalibrationMethod::weight_correction;
  map.tau = tau;
  return map;
}

double log_loss(std::span<const double> probabilities,
                std::span<const int> labels) {
  if (probabilities.size() != labels.size()) {
    throw LengthMismatch("probabilities and labels differ in length");
  }
  if (probabilities.empty()) throw EmptyInput("log loss of an empty list");
  check_labels(labels);
  KahanSum acc;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = clamp_probability(probabilities[i]);
    acc.add(labels[i] ? -std::log(p) : -std::log1p(-p));
  }
  return acc.value() / static_cast<double>(probabilities.size());
}

std::vector<TypeReliability> reliability_report(
    std::span<const double> calibrated, std::span<const int> labels,
    std::span<const std::size_t> package_index, std::size_t type_count,
    std::size_t quantiles) {
  if (calibrated.size() != labels.size() ||
      calibrated.size() != package_index.size()) {
    throw LengthMismatch("reliability inputs differ in length");
  }
  if (quantiles == 0) throw DomainError("quantile count must be positive");
  check_labels(labels);
  for (std::size_t k : package_index) {
    if (k >= type_count) throw IndexOutOfRange("package index out of range");
  }

  std::vector<TypeReliability> report(type_count);
  for (std::size_t t = 0; t < type_count; ++t) {
    report[t].type_index = t;

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < package_index.size(); ++i) {
      if (package_index[i] == t) members.push_back(i);
    }
    report[t].shipment_count = members.size();
    if (members.empty()) {
      report[t].skipped = true;
      continue;
    }

    // Equal-count buckets by calibrated value, ties broken by input index.
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) {
                       return calibrated[a] < calibrated[b];
                     });
    const std::size_t count = members.size();
    KahanSum metric;
    for (std::size_t b = 0; b < quantiles; ++b) {
      const std::size_t lo = b * count / quantiles;
      const std::size_t hi = (b + 1) * count / quantiles;
      if (lo >= hi) continue;
      KahanSum rate, mean;
      for (std::size_t s = lo; s < hi; ++s) {
        rate.add(labels[members[s]]);
        mean.add(calibrated[members[s]]);
      }
      const double size = static_cast<double>(hi - lo);
      const double diff = std::abs(rate.value() / size - mean.value() / size);
      metric.add(diff * size / static_cast<double>(count));
    }
    report[t].weighted_abs_diff = metric.value();
  }
  return report;
}

}  // namespace pkgopt
