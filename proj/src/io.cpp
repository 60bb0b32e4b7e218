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

#include "rbaddr/io.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <openssl/evp.h>

namespace rbaddr {

InputError::InputError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(line ? fmt::format("{}:{}: {}", source, line, what) : fmt::format("{}: {}", source, what)),
      line_(line) {}

std::string format_double(double v) { return fmt::format("{}", v); }

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  s = trim(s);
  T value{};
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

constexpr std::string_view kCsvHeader = "experiment,projection,m,mean,stderr,K";

}  // namespace

void write_curves_csv(std::ostream& out, const std::vector<SurvivalCurve>& curves) {
  out << kCsvHeader << '\n';
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out << to_string(c.experiment) << ',' << to_string(c.projection) << ',' << p.m << ',' << format_double(p.mean)
          << ',' << format_double(p.std_err) << ',' << p.K << '\n';
    }
  }
}

std::vector<SurvivalCurve> read_curves_csv(std::istream& in, const std::string& source) {
  std::vector<SurvivalCurve> curves;
  std::map<std::pair<Experiment, Projection>, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    if (!header_seen) {
      if (text != kCsvHeader) throw InputError(source, lineno, fmt::format("expected header '{}'", kCsvHeader));
      header_seen = true;
      continue;
    }
    const auto f = split(text, ',');
    if (f.size() != 6) throw InputError(source, lineno, fmt::format("expected 6 fields, found {}", f.size()));
    const auto e = parse_experiment(f[0]);
    if (!e) throw InputError(source, lineno, fmt::format("unknown experiment '{}'", f[0]));
    const auto p = parse_projection(f[1]);
    if (!p) throw InputError(source, lineno, fmt::format("unknown projection '{}'", f[1]));
    const auto m = parse_number<int>(f[2]);
    if (!m || *m < 1) throw InputError(source, lineno, fmt::format("m must be a positive integer, got '{}'", f[2]));
    const auto mean = parse_number<double>(f[3]);
    if (!mean || !std::isfinite(*mean)) throw InputError(source, lineno, fmt::format("invalid mean '{}'", f[3]));
    const auto se = parse_number<double>(f[4]);
    if (!se || !std::isfinite(*se)) throw InputError(source, lineno, fmt::format("invalid stderr '{}'", f[4]));
    if (*se <= 0.0) throw InputError(source, lineno, fmt::format("stderr must be positive, got {}", f[4]));
    const auto K = parse_number<int>(f[5]);
    if (!K || *K < 1) throw InputError(source, lineno, fmt::format("K must be a positive integer, got '{}'", f[5]));

    const auto key = std::make_pair(*e, *p);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, curves.size()).first;
      curves.push_back(SurvivalCurve{*e, *p, {}, {}});
    }
    auto& pts = curves[it->second].points;
    if (!pts.empty() && pts.back().m >= *m) {
      throw InputError(source, lineno, "m values must be strictly increasing within a curve");
    }
    pts.push_back({*m, *mean, *se, *K});
  }
  if (!header_seen) throw InputError(source, 0, "empty curves file");
  return curves;
}

namespace {

nlohmann::ordered_json triple(double a, double alpha, double b) {
  return {{"A", a}, {"alpha", alpha}, {"B", b}};
}

}  // namespace

nlohmann::ordered_json fits_to_json(const Analysis& analysis) {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["avg_generators_per_clifford"] = average_word_length(shared_group(GroupKind::C1));
  nlohmann::ordered_json fits = nlohmann::ordered_json::array();
  for (const auto& cf : analysis.fits) {
    const DecayFit& f = cf.fit;
    nlohmann::ordered_json o;
    o["experiment"] = to_string(cf.experiment);
    o["projection"] = to_string(cf.projection);
    const auto key = alpha_key_for(cf.experiment, cf.projection);
    o["quantity"] = key ? nlohmann::ordered_json(std::string(to_string(*key))) : nullptr;
    o["params"] = triple(f.A, f.alpha, f.B);
    o["sigma"] = triple(f.sigma_A(), f.sigma_alpha(), f.sigma_B());
    o["ci_level"] = f.ci_level;
    o["ci"] = triple(f.ci[0], f.ci[1], f.ci[2]);
    nlohmann::ordered_json cov = nlohmann::ordered_json::array();
    for (int r = 0; r < 3; ++r) cov.push_back({f.covariance(r, 0), f.covariance(r, 1), f.covariance(r, 2)});
    o["covariance"] = std::move(cov);
    o["chi2"] = f.chi2;
    o["dof"] = f.dof;
    o["chi2_reduced"] = f.chi2_reduced;
    o["model_valid"] = f.model_valid();
    o["converged"] = f.converged;
    o["iterations"] = f.iterations;
    o["degenerate"] = f.degenerate;
    o["physical"] = f.physical();
    o["unidentifiable"] = f.unidentifiable;
    o["residuals"] = f.residuals;
    fits.push_back(std::move(o));
  }
  j["fits"] = std::move(fits);
  if (analysis.correlation) {
    const auto& c = *analysis.correlation;
    j["correlation"] = {{"alpha_12", c.alpha12},        {"sigma", c.sigma},   {"background_model", c.background_model},
                        {"A1", c.A1},                   {"A2", c.A2},         {"A12", c.A12},
                        {"B", c.B},                     {"chi2_reduced", c.chi2_reduced},
                        {"dof", c.dof},                 {"note", c.note}};
  } else {
    j["correlation"] = nullptr;
  }
  j["notices"] = analysis.notices;
  return j;
}

void write_plot_data(std::ostream& out, const Analysis& analysis) {
  out << "experiment,projection,m,fit\n";
  for (const auto& cf : analysis.fits) {
    for (int m = 1; m <= cf.max_m; ++m) {
      out << to_string(cf.experiment) << ',' << to_string(cf.projection) << ',' << m << ','
          << format_double(cf.fit.evaluate(m)) << '\n';
    }
  }
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError(path.string(), 0, "cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return sha256_hex(ss.str());
}

std::string_view to_string(ModelType t) {
  switch (t) {
    case ModelType::Ideal: return "ideal";
    case ModelType::Depolarizing: return "depolarizing";
    case ModelType::Decoherence: return "decoherence";
    case ModelType::CrossTalk: return "crosstalk";
    case ModelType::CrossTalkDecoherence: return "crosstalk+decoherence";
  }
  return "?";
}

namespace {

std::optional<ModelType> parse_model_type(std::string_view s) {
  for (ModelType t : {ModelType::Ideal, ModelType::Depolarizing, ModelType::Decoherence, ModelType::CrossTalk,
                      ModelType::CrossTalkDecoherence}) {
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Quantity { Frequency, Detuning, Time, GateTime, Plain };

struct UnitSpec {
  std::string_view name;
  double factor;  // to SI (rad/s or s)
};

// Frequencies are given as f = omega / 2 pi unless the unit is rad/s.
constexpr UnitSpec kFrequencyUnits[] = {
    {"GHz", kTwoPi * 1e9}, {"MHz", kTwoPi * 1e6}, {"kHz", kTwoPi * 1e3}, {"Hz", kTwoPi}, {"rad/s", 1.0}};
constexpr UnitSpec kTimeUnits[] = {{"s", 1.0}, {"ms", 1e-3}, {"us", 1e-6}, {"\xC2\xB5s", 1e-6}, {"ns", 1e-9}};

double parse_quantity(std::string_view text, Quantity q, const std::string& source, std::size_t line) {
  text = trim(text);
  std::size_t split_at = 0;
  while (split_at < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[split_at])) || std::string_view("+-.eE").find(text[split_at]) != std::string_view::npos)) {
    ++split_at;
  }
  const auto number = parse_number<double>(text.substr(0, split_at));
  if (!number || !std::isfinite(*number)) throw InputError(source, line, fmt::format("invalid number '{}'", text));
  const std::string_view unit = trim(text.substr(split_at));
  if (q == Quantity::Plain) {
    if (!unit.empty()) throw InputError(source, line, fmt::format("unexpected unit '{}'", unit));
    return *number;
  }
  std::string_view default_unit;
  std::span<const UnitSpec> units;
  switch (q) {
    case Quantity::Frequency: default_unit = "GHz"; units = kFrequencyUnits; break;
    case Quantity::Detuning: default_unit = "MHz"; units = kFrequencyUnits; break;
    case Quantity::Time: default_unit = "us"; units = kTimeUnits; break;
    case Quantity::GateTime: default_unit = "ns"; units = kTimeUnits; break;
    case Quantity::Plain: break;
  }
  const std::string_view u = unit.empty() ? default_unit : unit;
  for (const auto& spec : units) {
    if (spec.name == u) return *number * spec.factor;
  }
  throw InputError(source, line, fmt::format("unknown unit '{}'", unit));
}

bool parse_bool(std::string_view v, const std::string& source, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InputError(source, line, fmt::format("expected a boolean, got '{}'", v));
}

double sample_a_pulse_alpha(double r) {
  // Per-pulse alpha whose per-Clifford value matches r over the average word length.
  return std::pow(1.0 - 2.0 * r, 1.0 / average_word_length(shared_group(GroupKind::C1)));
}

}  // namespace

std::vector<int> parse_lengths(std::string_view text) {
  std::vector<int> out;
  for (auto f : split(text, ',')) {
    const auto v = parse_number<int>(f);
    if (!v || *v < 1) throw std::invalid_argument(fmt::format("invalid sequence length '{}'", f));
    out.push_back(*v);
  }
  return out;
}

std::vector<std::string> preset_names() {
  return {"ideal", "sample_a_depolarizing", "sample_a_crosstalk", "sample_a", "sample_b"};
}

RunConfig preset_config(std::string_view name) {
  RunConfig c;
  c.preset = std::string(name);
  c.label = std::string(name);
  if (name == "ideal") {
    c.model = ModelType::Ideal;
  } else if (name == "sample_a_depolarizing") {
    c.model = ModelType::Depolarizing;
    c.device = sample_a_params();
    c.alpha1 = sample_a_pulse_alpha(0.0039);
    c.alpha2 = sample_a_pulse_alpha(0.0067);
  } else if (name == "sample_a_crosstalk") {
    c.model = ModelType::CrossTalk;
    c.device = sample_a_params();
  } else if (name == "sample_a") {
    c.model = ModelType::CrossTalkDecoherence;
    c.device = sample_a_params();
  } else if (name == "sample_b") {
    c.model = ModelType::Decoherence;
    c.device = sample_b_params();
  } else {
    throw InputError("preset", 0, fmt::format("unknown preset '{}' (known: {})", name, fmt::join(preset_names(), ", ")));
  }
  return c;
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, std::map<std::string, Entry>> sections;
  const std::map<std::string, std::vector<std::string>> known = {
      {"run", {"seed", "K", "lengths", "granularity", "shots", "threads", "label"}},
      {"model", {"preset", "type", "alpha1", "alpha2", "idle_noise"}},
      {"device",
       {"freq1", "freq2", "t1_1", "t1_2", "t2_1", "t2_2", "zeta", "m12", "m21", "mu1", "mu2", "nu1", "nu2", "gate_time",
        "detuning1", "detuning2"}},
      {"spam", {"readout"}},
  };
  std::string line;
  std::size_t lineno = 0;
  std::string section;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#' || text.front() == ';') continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw InputError(source, lineno, "malformed section header");
      section = std::string(trim(text.substr(1, text.size() - 2)));
      if (!known.contains(section)) throw InputError(source, lineno, fmt::format("unknown section [{}]", section));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw InputError(source, lineno, "expected 'key = value'");
    if (section.empty()) throw InputError(source, lineno, "key outside of a section");
    const std::string key(trim(text.substr(0, eq)));
    const auto& keys = known.at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw InputError(source, lineno, fmt::format("unknown key '{}' in [{}]", key, section));
    }
    if (sections[section].contains(key)) throw InputError(source, lineno, fmt::format("duplicate key '{}'", key));
    sections[section][key] = {std::string(trim(text.substr(eq + 1))), lineno};
  }

  auto get = [&](const std::string& s, const std::string& k) -> const Entry* {
    const auto it = sections.find(s);
    if (it == sections.end()) return nullptr;
    const auto jt = it->second.find(k);
    return jt == it->second.end() ? nullptr : &jt->second;
  };

  RunConfig cfg;
  if (const Entry* e = get("model", "preset")) {
    try {
      cfg = preset_config(e->value);
    } catch (const InputError&) {
      throw InputError(source, e->line, fmt::format("unknown preset '{}'", e->value));
    }
  }
  if (const Entry* e = get("model", "type")) {
    const auto t = parse_model_type(e->value);
    if (!t) throw InputError(source, e->line, fmt::format("unknown model type '{}'", e->value));
    cfg.model = *t;
  }
  if (const Entry* e = get("model", "alpha1")) cfg.alpha1 = parse_quantity(e->value, Quantity::Plain, source, e->line);
  if (const Entry* e = get("model", "alpha2")) cfg.alpha2 = parse_quantity(e->value, Quantity::Plain, source, e->line);
  if (const Entry* e = get("model", "idle_noise")) cfg.idle_noise = parse_bool(e->value, source, e->line);

  const std::pair<const char*, double*> freqs[] = {{"freq1", &cfg.device.omega1}, {"freq2", &cfg.device.omega2}};
  for (const auto& [k, dst] : freqs) {
    if (const Entry* e = get("device", k)) *dst = parse_quantity(e->value, Quantity::Frequency, source, e->line);
  }
  const std::pair<const char*, double*> detunings[] = {{"detuning1", &cfg.device.drive_detuning1},
                                                       {"detuning2", &cfg.device.drive_detuning2}};
  for (const auto& [k, dst] : detunings) {
    if (const Entry* e = get("device", k)) *dst = parse_quantity(e->value, Quantity::Detuning, source, e->line);
  }
  const std::pair<const char*, double*> times[] = {
      {"t1_1", &cfg.device.t1_1}, {"t1_2", &cfg.device.t1_2}, {"t2_1", &cfg.device.t2_1}, {"t2_2", &cfg.device.t2_2}};
  for (const auto& [k, dst] : times) {
    if (const Entry* e = get("device", k)) *dst = parse_quantity(e->value, Quantity::Time, source, e->line);
  }
  if (const Entry* e = get("device", "gate_time")) {
    cfg.device.gate_time = parse_quantity(e->value, Quantity::GateTime, source, e->line);
  }
  if (const Entry* e = get("device", "zeta")) cfg.device.zeta = parse_quantity(e->value, Quantity::Detuning, source, e->line);
  const std::pair<const char*, std::optional<double>*> couplings[] = {
      {"m12", &cfg.device.m12}, {"m21", &cfg.device.m21}, {"mu1", &cfg.device.mu1},
      {"mu2", &cfg.device.mu2}, {"nu1", &cfg.device.nu1}, {"nu2", &cfg.device.nu2}};
  for (const auto& [k, dst] : couplings) {
    if (const Entry* e = get("device", k)) *dst = parse_quantity(e->value, Quantity::Plain, source, e->line);
  }

  if (const Entry* e = get("run", "seed")) {
    const auto v = parse_number<std::uint64_t>(e->value);
    if (!v) throw InputError(source, e->line, fmt::format("invalid seed '{}'", e->value));
    cfg.rb.seed = *v;
  }
  if (const Entry* e = get("run", "K")) {
    const auto v = parse_number<int>(e->value);
    if (!v) throw InputError(source, e->line, fmt::format("invalid K '{}'", e->value));
    cfg.rb.K = *v;
  }
  if (const Entry* e = get("run", "lengths")) {
    try {
      cfg.rb.lengths = parse_lengths(e->value);
    } catch (const std::invalid_argument& ex) {
      throw InputError(source, e->line, ex.what());
    }
  }
  if (const Entry* e = get("run", "granularity")) {
    if (e->value == "per_generator") {
      cfg.rb.granularity = NoiseGranularity::PerGenerator;
    } else if (e->value == "per_clifford") {
      cfg.rb.granularity = NoiseGranularity::PerClifford;
    } else {
      throw InputError(source, e->line, fmt::format("unknown granularity '{}'", e->value));
    }
  }
  if (const Entry* e = get("run", "shots")) {
    const auto v = parse_number<int>(e->value);
    if (!v) throw InputError(source, e->line, fmt::format("invalid shots '{}'", e->value));
    cfg.rb.shots = *v;
  }
  if (const Entry* e = get("run", "threads")) {
    const auto v = parse_number<unsigned>(e->value);
    if (!v) throw InputError(source, e->line, fmt::format("invalid threads '{}'", e->value));
    cfg.rb.threads = *v;
  }
  if (const Entry* e = get("run", "label")) cfg.label = e->value;
  if (const Entry* e = get("spam", "readout")) {
    const auto f = split(e->value, ',');
    if (f.size() != 16) throw InputError(source, e->line, "readout needs 16 comma-separated entries (row-major)");
    for (std::size_t i = 0; i < 16; ++i) {
      cfg.rb.spam.readout(static_cast<Eigen::Index>(i / 4), static_cast<Eigen::Index>(i % 4)) =
          parse_quantity(f[i], Quantity::Plain, source, e->line);
    }
  }

  try {
    cfg.rb.validate();
    if (cfg.model != ModelType::Ideal && cfg.model != ModelType::Depolarizing) cfg.device.validate();
  } catch (const std::invalid_argument& ex) {
    throw InputError(source, 0, ex.what());
  }
  return cfg;
}

std::string RunConfig::snapshot() const {
  std::string s;
  s += "[run]\n";
  s += fmt::format("seed = {}\n", rb.seed);
  s += fmt::format("K = {}\n", rb.K);
  s += fmt::format("lengths = {}\n", fmt::join(rb.lengths, ","));
  s += fmt::format("granularity = {}\n", to_string(rb.granularity));
  if (rb.shots) s += fmt::format("shots = {}\n", *rb.shots);
  if (!label.empty()) s += fmt::format("label = {}\n", label);
  s += "\n[model]\n";
  if (!preset.empty()) s += fmt::format("preset = {}\n", preset);
  s += fmt::format("type = {}\n", to_string(model));
  s += fmt::format("alpha1 = {}\n", format_double(alpha1));
  s += fmt::format("alpha2 = {}\n", format_double(alpha2));
  s += fmt::format("idle_noise = {}\n", idle_noise);
  s += "\n[device]\n";
  s += fmt::format("freq1 = {} rad/s\n", format_double(device.omega1));
  s += fmt::format("freq2 = {} rad/s\n", format_double(device.omega2));
  s += fmt::format("detuning1 = {} rad/s\n", format_double(device.drive_detuning1));
  s += fmt::format("detuning2 = {} rad/s\n", format_double(device.drive_detuning2));
  s += fmt::format("t1_1 = {} s\n", format_double(device.t1_1));
  s += fmt::format("t1_2 = {} s\n", format_double(device.t1_2));
  s += fmt::format("t2_1 = {} s\n", format_double(device.t2_1));
  s += fmt::format("t2_2 = {} s\n", format_double(device.t2_2));
  s += fmt::format("gate_time = {} s\n", format_double(device.gate_time));
  if (device.zeta) s += fmt::format("zeta = {} rad/s\n", format_double(*device.zeta));
  const std::pair<const char*, const std::optional<double>*> couplings[] = {
      {"m12", &device.m12}, {"m21", &device.m21}, {"mu1", &device.mu1},
      {"mu2", &device.mu2}, {"nu1", &device.nu1}, {"nu2", &device.nu2}};
  for (const auto& [k, v] : couplings) {
    if (*v) s += fmt::format("{} = {}\n", k, format_double(**v));
  }
  s += "\n[spam]\nreadout = ";
  for (int i = 0; i < 16; ++i) {
    if (i) s += ',';
    s += format_double(rb.spam.readout(i / 4, i % 4));
  }
  s += '\n';
  return s;
}

NoiseModel build_model(const RunConfig& cfg) {
  switch (cfg.model) {
    case ModelType::Ideal: return NoiseModel::ideal();
    case ModelType::Depolarizing: return NoiseModel::depolarizing(cfg.alpha1, cfg.alpha2, cfg.idle_noise);
    case ModelType::Decoherence: return NoiseModel::decoherence(cfg.device);
    case ModelType::CrossTalk: return NoiseModel::crosstalk(cfg.device);
    case ModelType::CrossTalkDecoherence:
      return NoiseModel::composite({NoiseModel::crosstalk(cfg.device), NoiseModel::decoherence(cfg.device)});
  }
  throw std::invalid_argument("unknown model type");
}

nlohmann::ordered_json to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = "rbaddr";
  j["version"] = kVersion;
  j["command"] = m.command;
  j["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nullptr;
  j["config_snapshot"] = m.config_snapshot;
  j["config_sha256"] = m.config_snapshot.empty() ? std::string() : sha256_hex(m.config_snapshot);
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  auto digests = [](const std::vector<FileDigest>& v) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& d : v) a.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return a;
  };
  j["inputs"] = digests(m.inputs);
  j["outputs"] = digests(m.outputs);
  return j;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

FileDigest write_artifact(const std::filesystem::path& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  f << content;
  f.close();
  if (!f) throw std::runtime_error(fmt::format("failed writing {}", path.string()));
  return {name, sha256_hex(content)};
}

}  // namespace rbaddr
