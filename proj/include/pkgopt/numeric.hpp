#pragma once

#include <cmath>
#include <limits>

namespace pkgopt {

/// Compensated (Kahan/Neumaier) accumulator.
///
/// All cost aggregates in this library are summed in a fixed canonical order:
/// ascending product index, then ascending type index. Together with the
/// compensation this makes every reported total reproducible bit-for-bit
/// across platforms and worker counts, which the exact-equality oracle tests
/// rely on.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Numerically stable logistic function, clamped into the open interval (0,1).
inline double sigmoid(double x) {
  double p;
  if (x >= 0.0) {
    p = 1.0 / (1.0 + std::exp(-x));
  } else {
    const double e = std::exp(x);
    p = e / (1.0 + e);
  }
  if (p < 1e-300) p = 1e-300;
  const double hi = std::nextafter(1.0, 0.0);
  if (p > hi) p = hi;
  return p;
}

/// Inverse of sigmoid on (0,1). Callers are responsible for the domain.
inline double logit(double p) { return std::log(p / (1.0 - p)); }

/// log(1 + exp(x)) without overflow.
inline double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

inline double clamp(double v, double lo, double hi) {
  return v < lo ? lo : (v > hi ? hi : v);
}

/// Probabilities are clamped to this margin before taking logs.
inline constexpr double kProbClamp = 1e-12;

inline double clamp_probability(double p) {
  return clamp(p, kProbClamp, 1.0 - kProbClamp);
}

}  // namespace pkgopt
