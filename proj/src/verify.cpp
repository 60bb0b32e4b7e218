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

#include "rbaddr/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "rbaddr/addressability.hpp"
#include "rbaddr/clifford.hpp"
#include "rbaddr/fit.hpp"
#include "rbaddr/noise.hpp"
#include "rbaddr/twirl.hpp"

namespace rbaddr {

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<int> calibration_lengths() {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i) out.push_back(1 + 16 * i);
  return out;
}

CoverageResult coverage_study(double alpha, double noise_sigma, std::span<const int> lengths, int reps,
                              std::uint64_t seed) {
  CoverageResult res;
  res.reps = reps;
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, noise_sigma);
  DecayData data;
  for (int m : lengths) {
    data.m.push_back(m);
    data.sigma.push_back(noise_sigma);
  }
  data.y.resize(data.m.size());
  for (int r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < data.m.size(); ++i) data.y[i] = 0.5 * std::pow(alpha, data.m[i]) + 0.5 + noise(rng);
    FitOptions opts;
    opts.asymptote = 0.5;
    const DecayFit fit = fit_exponential(data, opts);
    if (!fit.converged || !fit.unidentifiable.empty()) {
      ++res.failed_fits;
      continue;
    }
    if (std::abs(fit.alpha - alpha) <= fit.ci[1]) ++res.covered;
  }
  return res;
}

namespace {

std::vector<Ptm> pauli_group(int n) {
  std::vector<Ptm> out;
  for (std::size_t k = 0; k < pauli_count(n); ++k) out.push_back(pauli_conjugation_ptm(PauliLabel(n, k)));
  return out;
}

std::vector<Ptm> group_ptms(const CliffordGroup& g) {
  std::vector<Ptm> out;
  for (const auto& e : g.elements()) out.push_back(e.ptm);
  return out;
}

CheckResult max_error_check(const std::string& name, double err, double tol) {
  return {name, err <= tol, fmt::format("max |analytic - brute force| = {:.3g} (tolerance {:.3g})", err, tol)};
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport rep;
  auto add = [&](CheckResult c) { rep.checks.push_back(std::move(c)); };
  const bool full = options.level == VerifyLevel::Full;
  Rng rng(options.seed);

  // Group axioms.
  const CliffordGroup& c1 = shared_group(GroupKind::C1);
  {
    bool ok = c1.size() == 24;
    std::size_t bad = 0;
    for (std::size_t a = 0; a < c1.size(); ++a) {
      if (c1.multiply(a, c1.inverse(a)) != 0 || c1.multiply(c1.inverse(a), a) != 0) ++bad;
      for (std::size_t b = 0; b < c1.size(); ++b) {
        if (!compose(c1.element(a).ptm, c1.element(b).ptm).approx_equal(c1.element(c1.multiply(a, b)).ptm, 1e-12)) ++bad;
        for (std::size_t c = 0; c < c1.size(); ++c) {
          if (c1.multiply(c1.multiply(a, b), c) != c1.multiply(a, c1.multiply(b, c))) ++bad;
        }
      }
    }
    add({"c1_group_axioms", ok && bad == 0, fmt::format("|C1| = {}, violations = {}", c1.size(), bad)});
  }
  {
    const auto& cxc = shared_group(GroupKind::CxC);
    const auto& cxi = shared_group(GroupKind::CxI);
    const auto& ixc = shared_group(GroupKind::IxC);
    std::size_t bad = 0;
    const int samples = full ? 20000 : 2000;
    for (int s = 0; s < samples; ++s) {
      const std::size_t a = uniform_index(rng, cxc.size()), b = uniform_index(rng, cxc.size());
      if (!compose(cxc.element(a).ptm, cxc.element(b).ptm).approx_equal(cxc.element(cxc.multiply(a, b)).ptm, 1e-12)) ++bad;
    }
    const bool ok = cxc.size() == 576 && cxi.size() == 24 && ixc.size() == 24 && bad == 0;
    add({"product_groups", ok,
         fmt::format("|CxC| = {}, |CxI| = {}, |IxC| = {}, table mismatches = {}", cxc.size(), cxi.size(), ixc.size(), bad)});
  }
  const std::vector<Ptm> c2 = enumerate_two_qubit_cliffords();
  add({"c2_enumeration", c2.size() == 11520, fmt::format("|C2| = {}", c2.size())});

  // Twirl oracles.
  const int channels = full ? 50 : 10;
  const std::vector<Ptm> c1_ptms = group_ptms(c1);
  const std::vector<Ptm> cxc_ptms = group_ptms(shared_group(GroupKind::CxC));
  const std::vector<Ptm> cxi_ptms = group_ptms(shared_group(GroupKind::CxI));
  const std::vector<Ptm> ixc_ptms = group_ptms(shared_group(GroupKind::IxC));
  const std::vector<Ptm> pauli1 = pauli_group(1), pauli2 = pauli_group(2);
  const int c2_channels = full ? channels : 3;

  double e_c1 = 0, e_c2 = 0, e_cxc = 0, e_cxi = 0, e_ixc = 0, e_p1 = 0, e_p2 = 0, e_schur = 0;
  for (int k = 0; k < channels; ++k) {
    const Ptm r1 = random_channel(1, rng);
    const Ptm r2 = random_channel(2, rng);
    e_c1 = std::max(e_c1, twirl_full_clifford(r1).twirled.max_abs_diff(brute_force_twirl(r1, c1_ptms)));
    if (k < c2_channels) {
      e_c2 = std::max(e_c2, twirl_full_clifford(r2).twirled.max_abs_diff(brute_force_twirl(r2, c2)));
    }
    e_cxc = std::max(e_cxc, twirl_cxc(r2).twirled.max_abs_diff(brute_force_twirl(r2, cxc_ptms)));
    e_cxi = std::max(e_cxi, twirl_subsystem(r2, Subsystem::First).twirled.max_abs_diff(brute_force_twirl(r2, cxi_ptms)));
    e_ixc = std::max(e_ixc, twirl_subsystem(r2, Subsystem::Second).twirled.max_abs_diff(brute_force_twirl(r2, ixc_ptms)));
    e_p1 = std::max(e_p1, pauli_twirl(r1).max_abs_diff(brute_force_twirl(r1, pauli1)));
    e_p2 = std::max(e_p2, pauli_twirl(r2).max_abs_diff(brute_force_twirl(r2, pauli2)));
    const std::pair<TwirlGroup, Ptm> schur_cases[] = {
        {TwirlGroup::Clifford, twirl_full_clifford(r2).twirled},
        {TwirlGroup::CxC, twirl_cxc(r2).twirled},
        {TwirlGroup::CxI, twirl_subsystem(r2, Subsystem::First).twirled},
        {TwirlGroup::IxC, twirl_subsystem(r2, Subsystem::Second).twirled},
        {TwirlGroup::Pauli, pauli_twirl(r2)},
    };
    for (const auto& [g, analytic] : schur_cases) {
      e_schur = std::max(e_schur, schur_general_twirl(r2, standard_decomposition(g, 2)).max_abs_diff(analytic));
    }
  }
  const double tol = options.tolerance;
  add(max_error_check(fmt::format("twirl_clifford_n1 ({} channels)", channels), e_c1, tol));
  add(max_error_check(fmt::format("twirl_clifford_n2 ({} channels)", c2_channels), e_c2, tol));
  add(max_error_check(fmt::format("twirl_cxc ({} channels)", channels), e_cxc, tol));
  add(max_error_check(fmt::format("twirl_cxi ({} channels)", channels), e_cxi, tol));
  add(max_error_check(fmt::format("twirl_ixc ({} channels)", channels), e_ixc, tol));
  add(max_error_check(fmt::format("twirl_pauli_n1 ({} channels)", channels), e_p1, tol));
  add(max_error_check(fmt::format("twirl_pauli_n2 ({} channels)", channels), e_p2, tol));
  add(max_error_check(fmt::format("schur_decompositions ({} channels)", channels), e_schur, tol));

  // Recovery gates compose to the identity.
  {
    const auto& cxc = shared_group(GroupKind::CxC);
    const int sequences = full ? 1000 : 200;
    double worst = 0.0;
    for (int s = 0; s < sequences; ++s) {
      const int m = 1 + static_cast<int>(uniform_index(rng, 100));
      const CliffordGroup& g = (s % 2 == 0) ? c1 : cxc;
      const auto seq = sample_uniform(g, rng, static_cast<std::size_t>(m));
      Matrix total = Matrix::Identity(static_cast<Eigen::Index>(g.element(0).ptm.dim()),
                                      static_cast<Eigen::Index>(g.element(0).ptm.dim()));
      for (std::size_t idx : seq) total = g.element(idx).ptm.matrix() * total;
      total = g.element(recovery_gate(g, seq)).ptm.matrix() * total;
      worst = std::max(worst, (total - Matrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff());
    }
    add({"recovery_identity", worst <= 1e-12, fmt::format("{} sequences, max deviation {:.3g}", sequences, worst)});
  }

  // Product channels carry no correlation.
  {
    double worst = 0.0;
    for (int k = 0; k < channels; ++k) {
      const Ptm r = tensor(random_channel(1, rng), random_channel(1, rng));
      const auto a = twirl_cxc(r).alphas;
      worst = std::max(worst, std::abs(*a.both - *a.one_given_two * *a.two_given_one));
    }
    add({"product_channel_dalpha", worst < 1e-12, fmt::format("max |dalpha| = {:.3g}", worst)});
  }

  // Physical noise channels.
  {
    const DeviceParams a = sample_a_params();
    const Ptm d = decoherence_ptm(a.t1_1, a.t2_1, a.gate_time);
    const bool ok = is_cptp(d) && std::abs(d(1, 1) - std::exp(-a.gate_time / a.t2_1)) < 1e-12;
    add({"decoherence_channel", ok, fmt::format("R_XX = {:.12f}", d(1, 1))});
  }

  // Fit calibration.
  {
    const std::vector<int> lengths = calibration_lengths();
    const std::vector<double> rs = full ? std::vector<double>{0.0039, 0.0067, 0.0086, 0.0120, 0.0029, 0.0037, 0.0032, 0.0043}
                                        : std::vector<double>{0.0039};
    for (double r : rs) {
      const CoverageResult cov = coverage_study(1.0 - 2.0 * r, 0.005, lengths, 200, rng());
      const double f = cov.fraction();
      add({fmt::format("fit_coverage_r{:.4f}", r), f >= 0.58 && f <= 0.78 && cov.failed_fits == 0,
           fmt::format("{} of {} intervals cover the truth ({:.1f}%), {} failed fits", cov.covered, cov.reps, 100 * f,
                       cov.failed_fits)});
    }
  }

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace rbaddr
