#include "pkgopt/damage_model.hpp"

#include <algorithm>
#include <cmath>

#include "pkgopt/catalog.hpp"
#include "pkgopt/errors.hpp"
#include "pkgopt/numeric.hpp"

namespace pkgopt {

namespace {

std::size_t expanded_dim(std::size_t feature_dim, std::size_t type_count,
                         const FeatureExpansion& exp) {
  std::size_t dim = feature_dim;
  if (exp.degree2) dim += feature_dim * (feature_dim + 1) / 2;
  if (exp.package_interactions) dim += feature_dim * (type_count - 1);
  return dim;
}

void standardize(const MonotoneLogisticModel& model,
                 std::span<const double> features, std::vector<double>& out) {
  out.resize(features.size());
  for (std::size_t a = 0; a < features.size(); ++a) {
    out[a] = (features[a] - model.feature_means[a]) / model.feature_stds[a];
  }
}

// Expanded feature vector for a sample at package index k. Layout:
// [standardized features | squares and cross terms | feature x (rank >= r)
// interactions for r = 0..n-2].
void expand(const MonotoneLogisticModel& model, const std::vector<double>& u,
            std::size_t k, std::vector<double>& phi) {
  const std::size_t f = u.size();
  const std::size_t n = model.type_count;
  phi.clear();
  phi.reserve(expanded_dim(f, n, model.expansion));
  phi.insert(phi.end(), u.begin(), u.end());
  if (model.expansion.degree2) {
    for (std::size_t a = 0; a < f; ++a) {
      for (std::size_t b = a; b < f; ++b) {
        phi.push_back(u[a] * u[b]);
      }
    }
  }
  if (model.expansion.package_interactions) {
    for (std::size_t r = 0; r + 1 < n; ++r) {
      const double on = r >= k ? 1.0 : 0.0;
      for (std::size_t a = 0; a < f; ++a) {
        phi.push_back(u[a] * on);
      }
    }
  }
}

struct PreparedData {
  std::vector<std::vector<double>> phi;
  std::vector<std::size_t> package;
  std::vector<double> label;
  std::vector<double> class_weight;
};

PreparedData prepare(const MonotoneLogisticModel& model,
                     const std::vector<ShipmentRecord>& data, double tau) {
  PreparedData p;
  p.phi.resize(data.size());
  p.package.resize(data.size());
  p.label.resize(data.size());
  p.class_weight.resize(data.size());
  std::vector<double> u;
  for (std::size_t i = 0; i < data.size(); ++i) {
    standardize(model, data[i].features, u);
    expand(model, u, data[i].package_index, p.phi[i]);
    p.package[i] = data[i].package_index;
    p.label[i] = data[i].label ? 1.0 : 0.0;
    p.class_weight[i] = data[i].label ? (1.0 - tau) : tau;
  }
  return p;
}

double loss_of(const MonotoneLogisticModel& model, const PreparedData& p) {
  const std::size_t count = p.phi.size();
  KahanSum acc;
  for (std::size_t i = 0; i < count; ++i) {
    double score = model.offset(p.package[i]);
    const auto& phi = p.phi[i];
    for (std::size_t t = 0; t < phi.size(); ++t) {
      score += model.weights[t] * phi[t];
    }
    acc.add(p.class_weight[i] * (softplus(score) - p.label[i] * score));
  }
  return acc.value() / static_cast<double>(count);
}

LossGradient loss_gradient_of(const MonotoneLogisticModel& model,
                              const PreparedData& p) {
  const std::size_t count = p.phi.size();
  const std::size_t wdim = model.weights.size();
  const std::size_t n = model.type_count;
  LossGradient out;
  out.gradient.assign(wdim + (n - 1) + 1, 0.0);
  std::vector<double> per_type(n, 0.0);

  KahanSum acc;
  const double inv = 1.0 / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    double score = model.offset(p.package[i]);
    const auto& phi = p.phi[i];
    for (std::size_t t = 0; t < wdim; ++t) {
      score += model.weights[t] * phi[t];
    }
    acc.add(p.class_weight[i] * (softplus(score) - p.label[i] * score));
    const double g = p.class_weight[i] * (sigmoid(score) - p.label[i]) * inv;
    for (std::size_t t = 0; t < wdim; ++t) {
      out.gradient[t] += g * phi[t];
    }
    per_type[p.package[i]] += g;
    out.gradient[wdim + (n - 1)] += g;  // beta_last
  }
  // d(score)/d(eps[r]) = 1 exactly when the sample's package index <= r.
  double running = 0.0;
  for (std::size_t r = 0; r + 1 < n; ++r) {
    running += per_type[r];
    out.gradient[wdim + r] = running;
  }
  out.loss = acc.value() / static_cast<double>(count);
  return out;
}

void validate_training_inputs(const std::vector<ShipmentRecord>& data,
                              std::size_t type_count, double tau) {
  if (type_count < 2) throw DomainError("need at least two package types");
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must be in (0,1)");
  if (data.empty()) throw EmptyInput("no training shipments");
  const std::size_t dim = data.front().features.size();
  bool has_positive = false;
  bool has_negative = false;
  for (const auto& s : data) {
    if (s.features.size() != dim) {
      throw DimensionMismatch("inconsistent feature dimensions");
    }
    if (s.package_index >= type_count) {
      throw IndexOutOfRange("shipment package index out of range");
    }
    if (s.label != 0 && s.label != 1) {
      throw DomainError("labels must be 0 or 1");
    }
    for (double v : s.features) {
      if (!std::isfinite(v)) throw NonFiniteFeature("non-finite feature value");
    }
    (s.label ? has_positive : has_negative) = true;
  }
  if (!has_positive || !has_negative) {
    throw SingleClassData("training data must contain both classes");
  }
}

}  // namespace

double MonotoneLogisticModel::offset(std::size_t k) const {
  double b = beta_last;
  for (std::size_t r = eps.size(); r > k; --r) {
    b += eps[r - 1];
  }
  return b;
}

std::vector<double> encode_package_feature(std::size_t k, std::size_t n) {
  if (k >= n) throw IndexOutOfRange("package index out of range");
  std::vector<double> out(n, 0.0);
  for (std::size_t r = k; r < n; ++r) out[r] = 1.0;
  return out;
}

std::vector<ShipmentRecord> augment_shipments(
    const std::vector<ShipmentRecord>& shipments, std::size_t type_count) {
  std::vector<ShipmentRecord> out;
  out.reserve(shipments.size() * 2);
  out.insert(out.end(), shipments.begin(), shipments.end());
  for (const auto& s : shipments) {
    if (s.package_index >= type_count) {
      throw IndexOutOfRange("shipment package index out of range");
    }
    if (s.label == 1) {
      // Damaged here, so presumed damaged in every less robust type.
      for (std::size_t k = 0; k < s.package_index; ++k) {
        ShipmentRecord copy = s;
        copy.package_index = k;
        out.push_back(std::move(copy));
      }
    } else {
      // Undamaged here, so presumed undamaged in every more robust type.
      for (std::size_t k = s.package_index + 1; k < type_count; ++k) {
        ShipmentRecord copy = s;
        copy.package_index = k;
        out.push_back(std::move(copy));
      }
    }
  }
  return out;
}

double weighted_loss(const MonotoneLogisticModel& model,
                     const std::vector<ShipmentRecord>& data, double tau) {
  validate_training_inputs(data, model.type_count, tau);
  return loss_of(model, prepare(model, data, tau));
}

LossGradient weighted_loss_gradient(const MonotoneLogisticModel& model,
                                    const std::vector<ShipmentRecord>& data,
                                    double tau) {
  validate_training_inputs(data, model.type_count, tau);
  return loss_gradient_of(model, prepare(model, data, tau));
}

std::vector<double> flat_parameters(const MonotoneLogisticModel& model) {
  std::vector<double> theta;
  theta.reserve(model.weights.size() + model.eps.size() + 1);
  theta.insert(theta.end(), model.weights.begin(), model.weights.end());
  theta.insert(theta.end(), model.eps.begin(), model.eps.end());
  theta.push_back(model.beta_last);
  return theta;
}

void set_flat_parameters(MonotoneLogisticModel& model,
                         std::span<const double> params) {
  if (params.size() != model.weights.size() + model.eps.size() + 1) {
    throw DimensionMismatch("flat parameter vector has the wrong length");
  }
  std::size_t t = 0;
  for (auto& w : model.weights) w = params[t++];
  for (auto& e : model.eps) e = params[t++];
  model.beta_last = params[t];
}

MonotoneLogisticModel fit_damage_model(const std::vector<ShipmentRecord>& data,
                                       std::size_t type_count,
                                       const TrainConfig& cfg) {
  validate_training_inputs(data, type_count, cfg.tau);

  const std::size_t feature_dim = data.front().features.size();
  MonotoneLogisticModel model;
  model.type_count = type_count;
  model.expansion = cfg.expansion;
  model.feature_means.assign(feature_dim, 0.0);
  model.feature_stds.assign(feature_dim, 1.0);

  for (std::size_t a = 0; a < feature_dim; ++a) {
    KahanSum sum;
    for (const auto& s : data) sum.add(s.features[a]);
    model.feature_means[a] = sum.value() / static_cast<double>(data.size());
  }
  for (std::size_t a = 0; a < feature_dim; ++a) {
    KahanSum sq;
    for (const auto& s : data) {
      const double d = s.features[a] - model.feature_means[a];
      sq.add(d * d);
    }
    const double var = sq.value() / static_cast<double>(data.size());
    model.feature_stds[a] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }

  model.weights.assign(expanded_dim(feature_dim, type_count, cfg.expansion),
                       0.0);
  model.eps.assign(type_count - 1, 0.0);
  model.beta_last = 0.0;

  const PreparedData prepared = prepare(model, data, cfg.tau);

  std::vector<double> theta = flat_parameters(model);
  const std::size_t wdim = model.weights.size();
  const auto project = [&](std::vector<double>& params) {
    for (std::size_t r = 0; r + 1 < type_count; ++r) {
      params[wdim + r] = std::max(0.0, params[wdim + r]);
    }
  };

  LossGradient state = loss_gradient_of(model, prepared);
  double step = cfg.init_step;
  bool converged = false;
  std::vector<double> candidate(theta.size());
  MonotoneLogisticModel probe = model;

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    step = std::min(step * cfg.step_growth, 1e8);
    bool accepted = false;
    double candidate_loss = state.loss;
    while (step >= 1e-20) {
      for (std::size_t t = 0; t < theta.size(); ++t) {
        candidate[t] = theta[t] - step * state.gradient[t];
      }
      project(candidate);
      set_flat_parameters(probe, candidate);
      candidate_loss = loss_of(probe, prepared);
      double decrease = 0.0;
      for (std::size_t t = 0; t < theta.size(); ++t) {
        decrease += state.gradient[t] * (theta[t] - candidate[t]);
      }
      if (candidate_loss <= state.loss - 1e-4 * decrease) {
        accepted = true;
        break;
      }
      step *= cfg.step_shrink;
    }
    if (!accepted) {
      // No representable step along the gradient improves the loss.
      converged = true;
      break;
    }
    const double delta = state.loss - candidate_loss;
    theta = candidate;
    if (delta <= cfg.tol) {
      set_flat_parameters(model, theta);
      converged = true;
      break;
    }
    set_flat_parameters(model, theta);
    state = loss_gradient_of(model, prepared);
  }

  set_flat_parameters(model, theta);
  model.converged = converged;
  return model;
}

double predict_damage_probability(const MonotoneLogisticModel& model,
                                  std::span<const double> features,
                                  std::size_t package_index) {
  if (features.size() != model.feature_dim()) {
    throw DimensionMismatch("feature vector length does not match the model");
  }
  if (package_index >= model.type_count) {
    throw IndexOutOfRange("package index out of range");
  }
  std::vector<double> u;
  standardize(model, features, u);
  std::vector<double> phi;
  expand(model, u, package_index, phi);
  if (phi.size() != model.weights.size()) {
    throw DimensionMismatch("model weight vector does not match expansion");
  }
  double score = model.offset(package_index);
  for (std::size_t t = 0; t < phi.size(); ++t) {
    score += model.weights[t] * phi[t];
  }
  return sigmoid(score);
}

Matrix predict_probability_matrix(const MonotoneLogisticModel& model,
                                  const std::vector<ProductRecord>& records) {
  Matrix out(records.size(), model.type_count, 0.0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (std::size_t k = 0; k < model.type_count; ++k) {
      out(i, k) = predict_damage_probability(model, records[i].features, k);
    }
  }
  return out;
}

MonotonicityReport check_rank_monotonicity(
    const MonotoneLogisticModel& model,
    const std::vector<std::vector<double>>& sample_features) {
  MonotonicityReport report;
  for (const auto& features : sample_features) {
    double prev = predict_damage_probability(model, features, 0);
    for (std::size_t k = 1; k < model.type_count; ++k) {
      const double cur = predict_damage_probability(model, features, k);
      if (cur > prev) {
        report.monotone = false;
        report.worst_violation = std::max(report.worst_violation, cur - prev);
      }
      prev = cur;
    }
  }
  return report;
}

}  // namespace pkgopt
