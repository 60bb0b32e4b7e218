// Copyright 2026 The rbaddr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rbaddr/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

namespace rbaddr {

using Eigen::MatrixXd;
using Eigen::VectorXd;

DecayData DecayData::from_curve(const SurvivalCurve& curve) {
  DecayData d;
  for (const auto& p : curve.points) {
    d.m.push_back(p.m);
    d.y.push_back(p.mean);
    d.sigma.push_back(p.std_err);
  }
  return d;
}

namespace {

void check_data(const DecayData& data, std::size_t min_points) {
  if (data.m.size() != data.y.size() || data.m.size() != data.sigma.size()) {
    throw FitError("data columns have different lengths");
  }
  if (data.size() < min_points) {
    throw FitError(fmt::format("at least {} points are required, got {}", min_points, data.size()));
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(data.sigma[i] > 0.0) || !std::isfinite(data.sigma[i])) {
      throw FitError(fmt::format("standard error at m = {} must be positive", data.m[i]));
    }
    if (!std::isfinite(data.y[i]) || !std::isfinite(data.m[i])) throw FitError("data contain non-finite values");
  }
}

VectorXd weights_of(const DecayData& data) {
  VectorXd w(static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) w(static_cast<Eigen::Index>(i)) = 1.0 / (data.sigma[i] * data.sigma[i]);
  return w;
}

// Indices of parameters that dominate near-null directions of J^T W J.
std::vector<std::size_t> null_directions(const MatrixXd& h) {
  std::vector<std::size_t> out;
  const Eigen::Index n = h.rows();
  VectorXd scale(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(h(i, i) > 0.0)) {
      out.push_back(static_cast<std::size_t>(i));
      scale(i) = 0.0;
    } else {
      scale(i) = 1.0 / std::sqrt(h(i, i));
    }
  }
  if (!out.empty()) return out;
  const MatrixXd hn = scale.asDiagonal() * h * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(hn);
  const double top = es.eigenvalues().maxCoeff();
  for (Eigen::Index k = 0; k < n; ++k) {
    if (es.eigenvalues()(k) < 1e-13 * top) {
      Eigen::Index arg = 0;
      es.eigenvectors().col(k).cwiseAbs().maxCoeff(&arg);
      out.push_back(static_cast<std::size_t>(arg));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double weighted_chi2(const VectorXd& y, const VectorXd& w, const VectorXd& f) {
  return (w.array() * (y - f).array().square()).sum();
}

}  // namespace

LmResult levenberg_marquardt(const VectorXd& y, const VectorXd& weights, const LmModel& model, VectorXd start,
                             const FitOptions& options) {
  const Eigen::Index n = y.size();
  const Eigen::Index p = start.size();
  VectorXd f(n), f_trial(n);
  MatrixXd jac(n, p), jac_trial(n, p);
  model(start, f, jac);
  double chi2 = weighted_chi2(y, weights, f);
  if (!std::isfinite(chi2)) throw FitError("model is not finite at the starting point");

  LmResult res;
  res.params = std::move(start);
  double lambda = options.lambda0;
  bool converged = chi2 == 0.0;
  int it = 0;
  while (!converged && it < options.max_iterations) {
    ++it;
    const MatrixXd h = jac.transpose() * weights.asDiagonal() * jac;
    const VectorXd g = jac.transpose() * (weights.array() * (y - f).array()).matrix();
    MatrixXd damped = h;
    for (Eigen::Index i = 0; i < p; ++i) damped(i, i) += lambda * std::max(h(i, i), 1e-30);
    const VectorXd step = damped.ldlt().solve(g);
    const double step_norm = step.norm();
    const double param_norm = res.params.norm();
    if (!step.allFinite()) {
      lambda *= 10.0;
      if (lambda > 1e20) break;
      continue;
    }
    const VectorXd trial = res.params + step;
    model(trial, f_trial, jac_trial);
    const double chi2_trial = weighted_chi2(y, weights, f_trial);
    if (std::isfinite(chi2_trial) && chi2_trial <= chi2) {
      const double rel = (chi2 - chi2_trial) / std::max(chi2, std::numeric_limits<double>::min());
      res.params = trial;
      f.swap(f_trial);
      jac.swap(jac_trial);
      chi2 = chi2_trial;
      res.chi2_trace.push_back(chi2);
      lambda = std::max(lambda / 10.0, 1e-15);
      if (rel < options.chi2_rel_tol || step_norm < options.step_tol * (param_norm + options.step_tol) || chi2 == 0.0) {
        converged = true;
      }
    } else {
      // A rejected step that is already negligible means we sit at the minimum.
      if (step_norm < options.step_tol * (param_norm + options.step_tol)) {
        converged = true;
      } else {
        lambda *= 10.0;
        if (lambda > 1e20) break;
      }
    }
  }
  res.iterations = it;
  res.converged = converged;
  res.chi2 = chi2;
  res.normal_matrix = jac.transpose() * weights.asDiagonal() * jac;
  return res;
}

namespace {

VectorXd initial_guess(const DecayData& data, std::optional<double> asymptote) {
  const auto [lo_it, hi_it] = std::minmax_element(data.y.begin(), data.y.end());
  const double lo = *lo_it, hi = *hi_it, range = hi - lo;
  // Decaying from above unless the shortest sequence sits below the longest.
  const auto [first, last] = std::minmax_element(data.m.begin(), data.m.end());
  const double sign = data.y[static_cast<std::size_t>(first - data.m.begin())] >=
                              data.y[static_cast<std::size_t>(last - data.m.begin())]
                          ? 1.0
                          : -1.0;
  double b0;
  if (sign > 0) {
    b0 = (asymptote && *asymptote < lo && lo - *asymptote <= range) ? *asymptote : lo - 0.05 * range;
  } else {
    b0 = (asymptote && *asymptote > hi && *asymptote - hi <= range) ? *asymptote : hi + 0.05 * range;
  }
  // Weighted log-linear regression of sign * (y - b0) against m.
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double v = sign * (data.y[i] - b0);
    if (v <= 0) continue;
    const double w = v * v / (data.sigma[i] * data.sigma[i]);
    const double z = std::log(v);
    sw += w;
    sx += w * data.m[i];
    sy += w * z;
    sxx += w * data.m[i] * data.m[i];
    sxy += w * data.m[i] * z;
  }
  double slope = 0.0, intercept = std::log(std::max(range, 1e-12));
  const double den = sw * sxx - sx * sx;
  if (sw > 0 && std::abs(den) > 0) {
    slope = (sw * sxy - sx * sy) / den;
    intercept = (sy - slope * sx) / sw;
  }
  VectorXd p(3);
  p << sign * std::exp(intercept), std::clamp(std::exp(slope), 1e-3, 1.5), b0;
  return p;
}

void exp_model(const std::vector<double>& ms, const VectorXd& p, VectorXd& f, MatrixXd& jac) {
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double m = ms[i];
    const double am = std::pow(p(1), m);
    f(r) = p(0) * am + p(2);
    jac(r, 0) = am;
    jac(r, 1) = m == 0.0 ? 0.0 : p(0) * m * std::pow(p(1), m - 1.0);
    jac(r, 2) = 1.0;
  }
}

}  // namespace

double z_for_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("confidence level must lie in (0, 1)");
  const boost::math::normal standard;
  return boost::math::quantile(standard, 0.5 * (1.0 + level));
}

DecayFit fit_exponential(const DecayData& data, const FitOptions& options) {
  check_data(data, 4);
  const VectorXd y = Eigen::Map<const VectorXd>(data.y.data(), static_cast<Eigen::Index>(data.size()));
  const VectorXd w = weights_of(data);
  DecayFit fit;
  fit.ci_level = options.ci_level;
  fit.dof = static_cast<int>(data.size()) - 3;

  const auto [lo, hi] = std::minmax_element(data.y.begin(), data.y.end());
  if (*hi - *lo <= 1e-12 * std::max(1.0, std::abs(*hi))) {
    fit.degenerate = true;
    fit.converged = true;
    fit.A = 0.0;
    fit.alpha = 1.0;
    fit.B = (w.array() * y.array()).sum() / w.sum();
    for (double v : data.y) fit.residuals.push_back(v - fit.B);
    fit.chi2 = weighted_chi2(y, w, VectorXd::Constant(y.size(), fit.B));
    fit.chi2_reduced = fit.chi2 / fit.dof;
    fit.covariance(2, 2) = 1.0 / w.sum();
    fit.ci = {0.0, 0.0, z_for_level(options.ci_level) * std::sqrt(fit.covariance(2, 2))};
    fit.unidentifiable = {"A", "alpha"};
    return fit;
  }

  const LmModel model = [&data](const VectorXd& p, VectorXd& f, MatrixXd& jac) { exp_model(data.m, p, f, jac); };
  LmResult res = levenberg_marquardt(y, w, model, initial_guess(data, options.asymptote), options);

  fit.A = res.params(0);
  fit.alpha = res.params(1);
  fit.B = res.params(2);
  fit.chi2 = res.chi2;
  fit.chi2_reduced = res.chi2 / fit.dof;
  fit.converged = res.converged;
  fit.iterations = res.iterations;
  fit.chi2_trace = std::move(res.chi2_trace);
  for (std::size_t i = 0; i < data.size(); ++i) fit.residuals.push_back(data.y[i] - fit.evaluate(data.m[i]));

  static const char* const kNames[] = {"A", "alpha", "B"};
  for (std::size_t idx : null_directions(res.normal_matrix)) fit.unidentifiable.emplace_back(kNames[idx]);
  if (fit.unidentifiable.empty()) {
    fit.covariance = Eigen::Matrix3d(res.normal_matrix.inverse()) * (options.scale_covariance ? fit.chi2_reduced : 1.0);
    const double z = z_for_level(options.ci_level);
    for (int i = 0; i < 3; ++i) fit.ci[static_cast<std::size_t>(i)] = z * std::sqrt(fit.covariance(i, i));
  } else {
    fit.covariance.setConstant(std::numeric_limits<double>::quiet_NaN());
    fit.ci.fill(std::numeric_limits<double>::quiet_NaN());
  }
  return fit;
}

DecayFit fit_exponential(const SurvivalCurve& curve, const FitOptions& options) {
  return fit_exponential(DecayData::from_curve(curve), options);
}

std::array<Interval, 3> confidence_intervals(const DecayFit& fit, double level) {
  if (!fit.converged) throw FitError("confidence intervals need a converged fit");
  if (!fit.unidentifiable.empty()) {
    throw FitError(fmt::format("unidentifiable parameter directions: {}", fmt::join(fit.unidentifiable, ", ")));
  }
  const double z = z_for_level(level);
  const std::array<double, 3> values = {fit.A, fit.alpha, fit.B};
  std::array<Interval, 3> out;
  for (std::size_t i = 0; i < 3; ++i) {
    const double hw = z * std::sqrt(fit.covariance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    out[i] = {values[i] - hw, values[i] + hw, hw};
  }
  return out;
}

ChiSquare reduced_chi_square(const DecayData& data, std::span<const double> model_values, int num_params) {
  if (model_values.size() != data.size()) throw FitError("model and data lengths differ");
  ChiSquare c;
  c.dof = static_cast<int>(data.size()) - num_params;
  if (c.dof <= 0) throw FitError("no degrees of freedom left");
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (!(data.sigma[i] > 0.0)) throw FitError(fmt::format("standard error at m = {} must be positive", data.m[i]));
    const double r = (data.y[i] - model_values[i]) / data.sigma[i];
    c.chi2 += r * r;
  }
  c.reduced = c.chi2 / c.dof;
  return c;
}

ChiSquare reduced_chi_square(const SurvivalCurve& curve, std::span<const double> model_values, int num_params) {
  return reduced_chi_square(DecayData::from_curve(curve), model_values, num_params);
}

CorrelationFit fit_correlation_curve(const DecayData& data, double alpha1_2, double alpha2_1, const FitOptions& options) {
  CorrelationFit out;
  out.single = fit_exponential(data, options);
  const auto use_single = [&](std::string note) {
    out.background_model = false;
    out.alpha12 = out.single.alpha;
    out.sigma = out.single.unidentifiable.empty() ? out.single.sigma_alpha() : 0.0;
    out.A12 = out.single.A;
    out.B = out.single.B;
    out.A1 = out.A2 = 0.0;
    out.chi2_reduced = out.single.chi2_reduced;
    out.dof = out.single.dof;
    out.note = std::move(note);
    return out;
  };
  if (out.single.degenerate) return use_single("constant data; alpha_12 unidentifiable");
  if (data.size() < 6) return use_single("too few points for background terms");

  const VectorXd y = Eigen::Map<const VectorXd>(data.y.data(), static_cast<Eigen::Index>(data.size()));
  const VectorXd w = weights_of(data);
  const LmModel model = [&](const VectorXd& p, VectorXd& f, MatrixXd& jac) {
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const double m = data.m[i];
      const double a = std::pow(alpha1_2, m), b = std::pow(alpha2_1, m), c = std::pow(p(3), m);
      f(r) = p(0) * a + p(1) * b + p(2) * c + p(4);
      jac(r, 0) = a;
      jac(r, 1) = b;
      jac(r, 2) = c;
      jac(r, 3) = p(2) * m * std::pow(p(3), m - 1.0);
      jac(r, 4) = 1.0;
    }
  };
  VectorXd start(5);
  start << 0.0, 0.0, out.single.A, out.single.alpha, out.single.B;
  const LmResult res = levenberg_marquardt(y, w, model, start, options);
  const int dof = static_cast<int>(data.size()) - 5;
  if (!res.converged || !null_directions(res.normal_matrix).empty()) {
    return use_single("three-exponential fit ill-conditioned; single exponential reported");
  }
  // Likelihood-ratio test for the two extra amplitudes: chi-square with 2 dof at 99%.
  const double threshold = -2.0 * std::log(0.01);
  if (out.single.chi2 - res.chi2 <= threshold) {
    return use_single("background amplitudes consistent with zero; single exponential reported");
  }
  const MatrixXd cov = res.normal_matrix.inverse() * (options.scale_covariance ? res.chi2 / dof : 1.0);
  out.background_model = true;
  out.A1 = res.params(0);
  out.A2 = res.params(1);
  out.A12 = res.params(2);
  out.alpha12 = res.params(3);
  out.B = res.params(4);
  out.sigma = std::sqrt(cov(3, 3));
  out.chi2_reduced = res.chi2 / dof;
  out.dof = dof;
  out.note = "three-exponential fit with fixed alpha_{1|2}, alpha_{2|1}";
  return out;
}

CorrelationFit fit_correlation_curve(const SurvivalCurve& corr, double alpha1_2, double alpha2_1,
                                     const FitOptions& options) {
  return fit_correlation_curve(DecayData::from_curve(corr), alpha1_2, alpha2_1, options);
}

}  // namespace rbaddr
