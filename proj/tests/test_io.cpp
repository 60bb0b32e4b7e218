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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "rbaddr/commands.hpp"
#include "rbaddr/io.hpp"
#include "rbaddr/pipeline.hpp"

namespace rbaddr {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("rbaddr_test_" + name);
  fs::remove_all(d);
  return d;
}

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_curves_csv(in, "t.csv");
  } catch (const InputError& e) {
    return e.line();
  }
  return 0;
}

TEST(FormatDouble, RoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 0.9922, 1e-12, 123456789.125, std::numbers::pi}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(CurvesCsv, RoundTrip) {
  RBConfig cfg;
  cfg.lengths = {1, 3, 9, 27};
  cfg.K = 6;
  const auto curves = simulate_protocol(cfg, NoiseModel::depolarizing(0.99, 0.98));
  std::ostringstream out;
  write_curves_csv(out, curves);
  EXPECT_EQ(out.str().rfind("experiment,projection,m,mean,stderr,K\n", 0), 0u);
  std::istringstream in(out.str());
  const auto back = read_curves_csv(in);
  ASSERT_EQ(back.size(), curves.size());
  for (std::size_t c = 0; c < curves.size(); ++c) {
    EXPECT_EQ(back[c].experiment, curves[c].experiment);
    EXPECT_EQ(back[c].projection, curves[c].projection);
    ASSERT_EQ(back[c].points.size(), curves[c].points.size());
    for (std::size_t i = 0; i < curves[c].points.size(); ++i) {
      EXPECT_EQ(back[c].points[i].m, curves[c].points[i].m);
      EXPECT_EQ(back[c].points[i].mean, curves[c].points[i].mean);
      EXPECT_EQ(back[c].points[i].std_err, curves[c].points[i].std_err);
      EXPECT_EQ(back[c].points[i].K, curves[c].points[i].K);
    }
  }
  std::ostringstream again;
  write_curves_csv(again, back);
  EXPECT_EQ(again.str(), out.str());
}

TEST(CurvesCsv, ReportsLineNumbers) {
  const std::string header = "experiment,projection,m,mean,stderr,K\n";
  EXPECT_EQ(error_line(header + "Exp1_CxI,Q1,1,0.99,0.001,50\nExp1_CxI,Q1,2,abc,0.001,50\n"), 3u);
  EXPECT_EQ(error_line(header + "# comment\nExp1_CxI,Q1,1,0.99,0,50\n"), 3u);
  EXPECT_EQ(error_line(header + "Exp9,Q1,1,0.99,0.001,50\n"), 2u);
  EXPECT_EQ(error_line(header + "Exp1_CxI,Q1,4,0.99,0.001,50\nExp1_CxI,Q1,2,0.98,0.001,50\n"), 3u);
  EXPECT_EQ(error_line(header + "Exp1_CxI,Q1,1,0.99,0.001\n"), 2u);
  EXPECT_EQ(error_line("m,mean\n"), 1u);
}

TEST(Sha256, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Config, ParsesUnitsAndSections) {
  std::istringstream in(R"([run]
seed = 12
K = 20
lengths = 1,2,4,8
label = demo

[model]
type = crosstalk+decoherence

[device]
freq1 = 4.9895 GHz
freq2 = 5055.4 MHz
t1_1 = 9.7 us
t1_2 = 8200 ns
t2_1 = 10.3
t2_2 = 0.0071 ms
gate_time = 20 ns
zeta = 1.1
m12 = 0.19
m21 = 0.32
mu1 = -0.088
mu2 = -0.16
nu1 = -0.025
nu2 = -0.048
)");
  const RunConfig c = parse_config(in);
  const DeviceParams a = sample_a_params();
  EXPECT_EQ(c.rb.seed, 12u);
  EXPECT_EQ(c.rb.K, 20);
  EXPECT_EQ(c.rb.lengths, (std::vector<int>{1, 2, 4, 8}));
  EXPECT_EQ(c.label, "demo");
  EXPECT_EQ(c.model, ModelType::CrossTalkDecoherence);
  EXPECT_NEAR(c.device.omega1, a.omega1, 1e-6 * a.omega1);
  EXPECT_NEAR(c.device.omega2, a.omega2, 1e-6 * a.omega2);
  EXPECT_NEAR(c.device.t1_1, 9.7e-6, 1e-18);
  EXPECT_NEAR(c.device.t1_2, 8.2e-6, 1e-18);
  EXPECT_NEAR(c.device.t2_1, 10.3e-6, 1e-18);
  EXPECT_NEAR(c.device.t2_2, 7.1e-6, 1e-18);
  EXPECT_NEAR(*c.device.zeta, *a.zeta, 1e-6 * *a.zeta);
}

TEST(Config, RejectsUnknownKeysWithLine) {
  std::istringstream in("[run]\nseed = 1\nbogus = 3\n");
  try {
    parse_config(in, "c.ini");
    FAIL() << "expected an error";
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("c.ini:3"), std::string::npos);
  }
  std::istringstream section("[nope]\n");
  EXPECT_THROW(parse_config(section), InputError);
  std::istringstream unit("[device]\nt1_1 = 5 parsecs\n");
  EXPECT_THROW(parse_config(unit), InputError);
}

TEST(Config, SnapshotRoundTrips) {
  for (const auto& name : preset_names()) {
    const RunConfig c = preset_config(name);
    std::istringstream in(c.snapshot());
    const RunConfig back = parse_config(in);
    EXPECT_EQ(back.snapshot(), c.snapshot()) << name;
  }
  EXPECT_THROW(preset_config("nope"), InputError);
}

TEST(Config, LengthsValidation) {
  EXPECT_EQ(parse_lengths("1, 2,4"), (std::vector<int>{1, 2, 4}));
  EXPECT_THROW(parse_lengths("1,x"), std::invalid_argument);
  EXPECT_THROW(parse_lengths(""), std::invalid_argument);
}

TEST(Commands, SimulateWritesAllArtifacts) {
  const fs::path dir = scratch_dir("simulate");
  SimulateOptions o;
  o.preset = "sample_a_depolarizing";
  o.lengths = std::vector<int>{1, 4, 16, 64};
  o.K = 5;
  o.out = dir;
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(o, out, err), kExitOk) << err.str();
  for (const char* f :
       {"config.ini", "curves.csv", "fits.json", "plot_data.csv", "report.json", "report.txt", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  EXPECT_EQ(manifest["outputs"].size(), 6u);
  EXPECT_EQ(manifest["outputs"][1]["sha256"], sha256_file(dir / "curves.csv"));
  fs::remove_all(dir);
}

TEST(Commands, SimulateIsDeterministic) {
  SimulateOptions o;
  o.preset = "sample_a_crosstalk";
  o.lengths = std::vector<int>{1, 4, 16, 64, 128};
  o.K = 4;
  o.seed = 3;
  const fs::path a = scratch_dir("det_a"), b = scratch_dir("det_b");
  std::ostringstream out, err;
  o.out = a;
  o.threads = 1;
  ASSERT_EQ(cmd_simulate(o, out, err), kExitOk);
  o.out = b;
  o.threads = 3;
  ASSERT_EQ(cmd_simulate(o, out, err), kExitOk);
  for (const char* f : {"config.ini", "curves.csv", "fits.json", "plot_data.csv", "report.json", "report.txt"}) {
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Commands, FitReadsSimulatedCurves) {
  const fs::path dir = scratch_dir("fit");
  SimulateOptions s;
  s.preset = "sample_b";
  s.lengths = std::vector<int>{1, 4, 16, 64, 256};
  s.K = 5;
  s.out = dir / "sim";
  std::ostringstream out, err;
  ASSERT_EQ(cmd_simulate(s, out, err), kExitOk);
  FitCommandOptions f{dir / "sim" / "curves.csv", dir / "fit", "b"};
  ASSERT_EQ(cmd_fit(f, out, err), kExitOk) << err.str();
  // Same fits as the simulate run.
  EXPECT_EQ(slurp(dir / "sim" / "fits.json"), slurp(dir / "fit" / "fits.json"));
  fs::remove_all(dir);
}

TEST(Commands, FitExitCodes) {
  const fs::path dir = scratch_dir("fit_bad");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.csv") << "experiment,projection,m,mean,stderr,K\nExp1_CxI,Q1,1,0.9,-1,50\n";
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit({dir / "bad.csv", dir / "o", ""}, out, err), kExitAnalysis);
  EXPECT_NE(err.str().find("bad.csv:2"), std::string::npos);
  EXPECT_EQ(cmd_fit({dir / "missing.csv", dir / "o", ""}, out, err), kExitUsage);
  fs::remove_all(dir);
}

TEST(Commands, PartialInputSkipsReport) {
  const fs::path dir = scratch_dir("partial");
  fs::create_directories(dir);
  std::ofstream csv(dir / "one.csv");
  csv << "experiment,projection,m,mean,stderr,K\n";
  for (int m : {1, 2, 4, 8, 16, 32}) csv << "Exp1_CxI,Q1," << m << ',' << format_double(0.5 * std::pow(0.99, m) + 0.5) << ",0.001,50\n";
  csv.close();
  std::ostringstream out, err;
  EXPECT_EQ(cmd_fit({dir / "one.csv", dir / "o", ""}, out, err), kExitOk);
  EXPECT_TRUE(fs::exists(dir / "o" / "fits.json"));
  EXPECT_FALSE(fs::exists(dir / "o" / "report.json"));
  EXPECT_NE(err.str().find("report skipped"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Commands, PredictAndUsageErrors) {
  const fs::path dir = scratch_dir("predict");
  std::ostringstream out, err;
  PredictOptions p;
  p.preset = "sample_a";
  p.out = dir;
  ASSERT_EQ(cmd_predict(p, out, err), kExitOk) << err.str();
  const auto j = nlohmann::json::parse(slurp(dir / "predict.json"));
  EXPECT_GT(j["prediction"]["dr1_given_2"].get<double>(), 0.0);
  PredictOptions none;
  EXPECT_EQ(cmd_predict(none, out, err), kExitUsage);
  SimulateOptions bad;
  bad.preset = "nope";
  EXPECT_EQ(cmd_simulate(bad, out, err), kExitUsage);
  SimulateOptions badlen;
  badlen.preset = "ideal";
  badlen.lengths = std::vector<int>{4, 2};
  badlen.out = dir;
  EXPECT_EQ(cmd_simulate(badlen, out, err), kExitUsage);
  fs::remove_all(dir);
}

TEST(Commands, VerifyQuickPasses) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_verify({}, out, err), kExitOk) << out.str();
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
  VerifyCommandOptions strict;
  strict.tolerance = 1e-30;
  EXPECT_EQ(cmd_verify(strict, out, err), kExitVerification);
  VerifyCommandOptions bad;
  bad.level = "medium";
  EXPECT_EQ(cmd_verify(bad, out, err), kExitUsage);
}

TEST(Commands, DumpGroup) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_dump_group({"CxC", std::nullopt}, out, err), kExitOk);
  const std::string text = out.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 577);
  EXPECT_EQ(cmd_dump_group({"C9", std::nullopt}, out, err), kExitUsage);
}

TEST(Commands, DefaultOutputDirFromEnvironment) {
  ::setenv("RB_ADDR_OUT", "/tmp/somewhere", 1);
  EXPECT_EQ(default_output_dir(), fs::path("/tmp/somewhere"));
  ::unsetenv("RB_ADDR_OUT");
  EXPECT_EQ(default_output_dir(), fs::path("rbaddr_out"));
}

}  // namespace
}  // namespace rbaddr
