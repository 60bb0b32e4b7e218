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

#include "rbaddr/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "rbaddr/io.hpp"
#include "rbaddr/pipeline.hpp"
#include "rbaddr/verify.hpp"

namespace rbaddr {

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("RB_ADDR_OUT"); env && *env) return env;
  return "rbaddr_out";
}

namespace {

RunConfig load_config(const std::optional<std::filesystem::path>& path, const std::optional<std::string>& preset) {
  if (path && preset) throw InputError("options", 0, "--config and --preset are mutually exclusive");
  if (path) {
    std::ifstream f(*path);
    if (!f) throw InputError(path->string(), 0, "cannot open config file");
    return parse_config(f, path->string());
  }
  if (preset) return preset_config(*preset);
  return RunConfig{};
}

std::optional<ModelType> model_type_from(std::string_view name) {
  for (ModelType t : {ModelType::Ideal, ModelType::Depolarizing, ModelType::Decoherence, ModelType::CrossTalk,
                      ModelType::CrossTalkDecoherence}) {
    if (to_string(t) == name) return t;
  }
  return std::nullopt;
}

std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// Classifies an exception into an exit code and prints it.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    fmt::print(err, "analysis error: {}\n", e.what());
    return kExitAnalysis;
  }
}

void write_analysis(const std::filesystem::path& dir, const Analysis& a, std::vector<FileDigest>& outputs,
                    std::ostream& out) {
  outputs.push_back(write_artifact(dir, "fits.json", json_text(fits_to_json(a))));
  std::ostringstream plot;
  write_plot_data(plot, a);
  outputs.push_back(write_artifact(dir, "plot_data.csv", plot.str()));
  if (a.report) {
    outputs.push_back(write_artifact(dir, "report.json", json_text(to_json(*a.report))));
    const std::string table = format_table(*a.report);
    outputs.push_back(write_artifact(dir, "report.txt", table));
    out << table;
  }
  for (const auto& n : a.notices) fmt::print(out, "note: {}\n", n);
}

}  // namespace

int cmd_simulate(const SimulateOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string started = utc_timestamp();
    if (!opts.config && !opts.preset && !opts.model) {
      throw InputError("options", 0, "simulate needs --config, --preset or --model");
    }
    RunConfig cfg = load_config(opts.config, opts.preset);
    if (opts.model) {
      const auto t = model_type_from(*opts.model);
      if (!t) throw InputError("options", 0, fmt::format("unknown model '{}'", *opts.model));
      cfg.model = *t;
      if (cfg.label.empty()) cfg.label = *opts.model;
    }
    if (opts.seed) cfg.rb.seed = *opts.seed;
    if (opts.lengths) cfg.rb.lengths = *opts.lengths;
    if (opts.K) cfg.rb.K = *opts.K;
    if (opts.threads) cfg.rb.threads = *opts.threads;
    if (opts.granularity) {
      if (*opts.granularity == "per_generator") {
        cfg.rb.granularity = NoiseGranularity::PerGenerator;
      } else if (*opts.granularity == "per_clifford") {
        cfg.rb.granularity = NoiseGranularity::PerClifford;
      } else {
        throw InputError("options", 0, fmt::format("unknown granularity '{}'", *opts.granularity));
      }
    }
    cfg.rb.validate();

    const NoiseModel model = build_model(cfg);
    const std::string snapshot = cfg.snapshot();
    const std::vector<SurvivalCurve> curves = simulate_protocol(cfg.rb, model);
    const ReportLabels labels{cfg.label, {sha256_hex(snapshot), cfg.rb.seed, model.description()}};
    const Analysis analysis = analyze_curves(curves, labels);

    const std::filesystem::path dir = opts.out.value_or(default_output_dir());
    std::vector<FileDigest> outputs;
    outputs.push_back(write_artifact(dir, "config.ini", snapshot));
    std::ostringstream csv;
    write_curves_csv(csv, curves);
    outputs.push_back(write_artifact(dir, "curves.csv", csv.str()));
    write_analysis(dir, analysis, outputs, out);

    RunManifest manifest{"simulate", snapshot, cfg.rb.seed, started, utc_timestamp(), {}, outputs};
    if (opts.config) manifest.inputs.push_back({opts.config->string(), sha256_file(*opts.config)});
    write_artifact(dir, "manifest.json", json_text(to_json(manifest)));
    fmt::print(out, "wrote {}\n", dir.string());
    return kExitOk;
  });
}

int cmd_fit(const FitCommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&]() -> int {
    const std::string started = utc_timestamp();
    std::ifstream f(opts.curves);
    if (!f) throw InputError(opts.curves.string(), 0, "cannot open curves file");
    std::vector<SurvivalCurve> curves;
    try {
      curves = read_curves_csv(f, opts.curves.string());
    } catch (const InputError& e) {
      fmt::print(err, "error: {}\n", e.what());
      return kExitAnalysis;
    }
    const std::string digest = sha256_file(opts.curves);
    const ReportLabels labels{opts.label, {digest, std::nullopt, "external data"}};
    const Analysis analysis = analyze_curves(curves, labels);
    const std::filesystem::path dir = opts.out.value_or(default_output_dir());
    std::vector<FileDigest> outputs;
    write_analysis(dir, analysis, outputs, out);
    if (!analysis.report) fmt::print(err, "notice: report skipped, fewer than two report quantities in the input\n");
    RunManifest manifest{"fit", "", std::nullopt, started, utc_timestamp(), {{opts.curves.string(), digest}}, outputs};
    write_artifact(dir, "manifest.json", json_text(to_json(manifest)));
    fmt::print(out, "wrote {}\n", dir.string());
    return kExitOk;
  });
}

int cmd_predict(const PredictOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!opts.config && !opts.preset) throw InputError("options", 0, "predict needs --config or --preset");
    RunConfig cfg = load_config(opts.config, opts.preset);
    if (opts.mu_scale != 1.0) {
      if (cfg.device.mu1) *cfg.device.mu1 *= opts.mu_scale;
      if (cfg.device.mu2) *cfg.device.mu2 *= opts.mu_scale;
    }
    const NoiseModel model = build_model(cfg);
    const NoiseGranularity g = cfg.rb.granularity;
    const Prediction p = make_prediction(predict_alphas(model, GroupKind::CxI, g), predict_alphas(model, GroupKind::IxC, g),
                                         predict_alphas(model, GroupKind::CxC, g));
    nlohmann::ordered_json j;
    j["label"] = cfg.label;
    j["model"] = model.description();
    j["granularity"] = to_string(g);
    j["mu_scale"] = opts.mu_scale;
    j["avg_generators_per_clifford"] = average_word_length(shared_group(GroupKind::C1));
    j["prediction"] = to_json(p);
    const std::string text = json_text(j);
    const std::filesystem::path dir = opts.out.value_or(default_output_dir());
    write_artifact(dir, "predict.json", text);
    out << text;
    return kExitOk;
  });
}

int cmd_verify(const VerifyCommandOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    VerifyOptions vo;
    if (opts.level == "quick") {
      vo.level = VerifyLevel::Quick;
    } else if (opts.level == "full") {
      vo.level = VerifyLevel::Full;
    } else {
      throw InputError("options", 0, fmt::format("unknown level '{}' (quick or full)", opts.level));
    }
    if (opts.tolerance) vo.tolerance = *opts.tolerance;
    if (opts.seed) vo.seed = *opts.seed;
    const VerifyReport rep = run_verification(vo);
    int failed = 0;
    for (const auto& c : rep.checks) {
      fmt::print(out, "{} {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
      if (!c.passed) ++failed;
    }
    fmt::print(out, "{} checks, {} failed, {:.1f} s\n", rep.checks.size(), failed, rep.seconds);
    return failed ? kExitVerification : kExitOk;
  });
}

int cmd_dump_group(const DumpGroupOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    GroupKind kind;
    if (opts.group == "C1") {
      kind = GroupKind::C1;
    } else if (opts.group == "CxC") {
      kind = GroupKind::CxC;
    } else if (opts.group == "CxI") {
      kind = GroupKind::CxI;
    } else if (opts.group == "IxC") {
      kind = GroupKind::IxC;
    } else {
      throw InputError("options", 0, fmt::format("unknown group '{}' (C1, CxC, CxI, IxC)", opts.group));
    }
    if (opts.out) {
      std::ostringstream ss;
      write_group_table(ss, shared_group(kind));
      write_artifact(opts.out->parent_path().empty() ? "." : opts.out->parent_path(), opts.out->filename().string(),
                     ss.str());
    } else {
      write_group_table(out, shared_group(kind));
    }
    return kExitOk;
  });
}

}  // namespace rbaddr
