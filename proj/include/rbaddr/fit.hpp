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

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rbaddr/rb.hpp"

namespace rbaddr {

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability mass within one standard deviation of a normal distribution.
inline constexpr double kOneSigmaLevel = 0.68268949213708585;

/// Threshold on chi2_reduced above which a single exponential is suspect.
inline constexpr double kChi2Threshold = 2.0;

struct FitOptions {
  int max_iterations = 500;
  double chi2_rel_tol = 1e-10;
  double step_tol = 1e-12;
  double lambda0 = 1e-3;
  double ci_level = kOneSigmaLevel;
  bool scale_covariance = true;  // multiply (J^T W J)^-1 by chi2_reduced
  /// Expected B (1/2 for traced projections, 1/4 for p00); seeds the fit.
  std::optional<double> asymptote;
};

/// Weighted data for a decay fit.
struct DecayData {
  std::vector<double> m, y, sigma;

  static DecayData from_curve(const SurvivalCurve& curve);
  std::size_t size() const { return m.size(); }
};

/// F(m) = A alpha^m + B.
struct DecayFit {
  double A = 0.0, alpha = 1.0, B = 0.0;
  Eigen::Matrix3d covariance = Eigen::Matrix3d::Zero();  // scaled by chi2_reduced
  std::array<double, 3> ci{};                             // half-widths at ci_level
  double ci_level = kOneSigmaLevel;
  double chi2 = 0.0;
  double chi2_reduced = 0.0;
  int dof = 0;
  std::vector<double> residuals;   // y - F(m)
  std::vector<double> chi2_trace;  // chi2 after each accepted step
  bool converged = false;
  int iterations = 0;
  bool degenerate = false;  // constant data, alpha unidentifiable
  std::vector<std::string> unidentifiable;

  double sigma_A() const { return std::sqrt(covariance(0, 0)); }
  double sigma_alpha() const { return std::sqrt(covariance(1, 1)); }
  double sigma_B() const { return std::sqrt(covariance(2, 2)); }
  bool physical() const { return alpha > 0.0 && alpha <= 1.0; }
  bool model_valid() const { return chi2_reduced <= kChi2Threshold; }
  double evaluate(double m) const { return A * std::pow(alpha, m) + B; }
};

/// Levenberg-Marquardt fit with analytic Jacobian. Throws FitError for fewer
/// than 4 points or non-positive sigma. Constant data is returned flagged as
/// degenerate with A = 0, alpha = 1, B = weighted mean.
DecayFit fit_exponential(const DecayData& data, const FitOptions& options = {});
DecayFit fit_exponential(const SurvivalCurve& curve, const FitOptions& options = {});

struct Interval {
  double lower = 0.0, upper = 0.0, half_width = 0.0;
};

/// z-score for a two-sided normal interval at `level`.
double z_for_level(double level);

/// Linearized intervals for (A, alpha, B). Throws FitError on unidentifiable fits.
std::array<Interval, 3> confidence_intervals(const DecayFit& fit, double level = kOneSigmaLevel);

struct ChiSquare {
  double chi2 = 0.0;
  int dof = 0;
  double reduced = 0.0;
};

ChiSquare reduced_chi_square(const DecayData& data, std::span<const double> model_values, int num_params = 3);
ChiSquare reduced_chi_square(const SurvivalCurve& curve, std::span<const double> model_values, int num_params = 3);

/// Fit of the correlation projection with alpha_{1|2} and alpha_{2|1} fixed.
struct CorrelationFit {
  double alpha12 = 1.0;
  double sigma = 0.0;  // one standard deviation
  bool background_model = false;  // true when the three-exponential form was kept
  double A1 = 0.0, A2 = 0.0, A12 = 0.0, B = 0.0;
  double chi2_reduced = 0.0;
  int dof = 0;
  DecayFit single;  // the single-exponential fit of the same curve
  std::string note;
};

/// Fits A1 alpha_{1|2}^m + A2 alpha_{2|1}^m + A12 alpha_12^m + B. The
/// single-exponential fit is reported instead when the background terms do
/// not lower chi2 significantly (likelihood ratio, 2 dof, 99%) or when the
/// five-parameter problem is ill-conditioned.
CorrelationFit fit_correlation_curve(const SurvivalCurve& corr, double alpha1_2, double alpha2_1,
                                     const FitOptions& options = {});
CorrelationFit fit_correlation_curve(const DecayData& data, double alpha1_2, double alpha2_1,
                                     const FitOptions& options = {});

/// Generic weighted least squares by Levenberg-Marquardt. `model` fills the
/// model values and the Jacobian for a parameter vector.
struct LmResult {
  Eigen::VectorXd params;
  Eigen::MatrixXd normal_matrix;  // J^T W J at the solution
  double chi2 = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> chi2_trace;
};

using LmModel = std::function<void(const Eigen::VectorXd& params, Eigen::VectorXd& values, Eigen::MatrixXd& jacobian)>;

LmResult levenberg_marquardt(const Eigen::VectorXd& y, const Eigen::VectorXd& weights, const LmModel& model,
                             Eigen::VectorXd start, const FitOptions& options);

}  // namespace rbaddr
