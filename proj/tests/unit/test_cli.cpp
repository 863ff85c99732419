/**
 * Copyright 2026 The Vibro Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vibro/cli.hpp"
#include "vibro/estimators.hpp"

using namespace vibro;
using namespace vibro::cli;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json squeezer_doc() {
  return json::parse(R"({
    "mode": "gaussian-exact",
    "circuit": {"unitary": [[1.0, 0.0]], "r0": [0.5], "alpha": [[0.0, 0.0]]},
    "weights": [1],
    "omega_max": 31,
    "seed": 7
  })");
}

json fock_doc() {
  return json::parse(R"({
    "mode": "fock-estimate",
    "circuit": {"unitary": [[0.6, 0.0], [0.0, 0.8], [0.0, 0.8], [0.6, 0.0]]},
    "weights": [1, 3],
    "omega_max": 8,
    "input_fock": [1, 1],
    "estimator": {"epsilon": 0.1, "confidence": 0.99},
    "seed": 11
  })");
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "vibro_unit" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string error_of(const json& doc) {
  try {
    (void)parse_spec(doc);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

int run(std::vector<std::string> args) {
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("spec validation names the field") {
  json d = squeezer_doc();
  d["weights"] = {-1};
  CHECK(error_of(d).find("weights[0]") != std::string::npos);
  d = squeezer_doc();
  d["mode"] = "fast";
  CHECK(error_of(d).find("mode") != std::string::npos);
  d = squeezer_doc();
  d["circuit"]["r0"] = {0.5, 0.1};
  CHECK(error_of(d).find("circuit.r0") != std::string::npos);
  d = squeezer_doc();
  d["doktorov"] = {{"omega_i", {1.0}}, {"omega_f", {1.0}}, {"u_r", {{1.0, 0.0}}}, {"delta", {0.0}}};
  CHECK(error_of(d).find("exactly one") != std::string::npos);
  d = squeezer_doc();
  d.erase("circuit");
  CHECK(error_of(d).find("exactly one") != std::string::npos);
  d = squeezer_doc();
  d["circuit"]["unitary"] = {{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  CHECK(error_of(d).find("circuit.unitary") != std::string::npos);
  d = squeezer_doc();
  d["circuit"]["unitary"] = {{2.0, 0.0}};
  CHECK(error_of(d).find("circuit.unitary") != std::string::npos);
  d = fock_doc();
  d["estimator"]["confidence"] = 1.5;
  CHECK(error_of(d).find("estimator.confidence") != std::string::npos);
  d = squeezer_doc();
  d.erase("omega_max");
  CHECK(error_of(d).find("omega_max") != std::string::npos);
}

TEST_CASE("spec round trip") {
  for (const json& d : {squeezer_doc(), fock_doc()}) {
    const json once = spec_to_json(parse_spec(d));
    const json twice = spec_to_json(parse_spec(once));
    CHECK(once == twice);
  }
  const json dk = json::parse(R"({"mode": "gaussian-exact",
    "doktorov": {"omega_i": [1.0, 2.0], "omega_f": [1.5, 2.0], "u_r": [[1,0],[0,0],[0,0],[1,0]], "delta": [0.3, 0.0]},
    "weights": [1, 2], "omega_max": 40})");
  CHECK(spec_to_json(parse_spec(dk)) == spec_to_json(parse_spec(spec_to_json(parse_spec(dk)))));
}

TEST_CASE("seed precedence") {
  ProblemSpec spec = parse_spec(squeezer_doc());
  RunOptions opt;
  opt.seed = 3;
  CHECK(resolve_seed(opt, spec) == 3);
  opt.seed.reset();
  CHECK(resolve_seed(opt, spec) == 7);
  spec.seed.reset();
  setenv("VIBRO_SEED", "42", 1);
  CHECK(resolve_seed(opt, spec) == 42);
  unsetenv("VIBRO_SEED");
  CHECK(resolve_seed(opt, spec) == 0);
}

TEST_CASE("gaussian-exact output matches the library call") {
  const ProblemSpec spec = parse_spec(squeezer_doc());
  RunOptions opt;
  opt.out_dir = scratch("exact").string();
  opt.emit_fourier = true;
  const SpectrumReport r = execute(spec, opt);
  const Spectrum lib = inverse_dft(exact_fourier_series(*spec.circuit, WeightVector({1}), SpectralGrid(31)));
  CHECK(r.spectrum == lib.values);
  write_outputs(r, opt);
  std::string want = "bin,omega,value\n";
  for (std::size_t i = 0; i < lib.values.size(); ++i) {
    want += std::to_string(i) + "," + std::to_string(i) + "," + fmt17(lib.values[i]) + "\n";
  }
  CHECK(slurp(fs::path(opt.out_dir) / "spectrum.csv") == want);
  CHECK(fs::exists(fs::path(opt.out_dir) / "fourier.csv"));
  const json rep = json::parse(slurp(fs::path(opt.out_dir) / "report.json"));
  CHECK(rep["route"] == "gaussian-exact");
  CHECK(rep["spectrum"].size() == 32);
}

TEST_CASE("oracle comparison and plot data") {
  json d = squeezer_doc();
  d["cutoff"] = 60;
  const ProblemSpec spec = parse_spec(d);
  RunOptions opt;
  opt.out_dir = scratch("overlay").string();
  opt.compare_oracle = true;
  opt.resolution = 200.0;
  const SpectrumReport r = execute(spec, opt);
  REQUIRE(r.oracle_max_diff.has_value());
  CHECK(*r.oracle_max_diff <= 1e-6);
  write_outputs(r, opt);
  const std::string a = slurp(fs::path(opt.out_dir) / "plot.dat");
  const std::string b = slurp(fs::path(opt.out_dir) / "plot_overlay.dat");
  std::istringstream sa(a), sb(b);
  std::string la, lb;
  int rows = 0;
  std::getline(sa, la);
  std::getline(sb, lb);
  while (std::getline(sa, la) && std::getline(sb, lb)) {
    CHECK(la.substr(0, la.find(' ')) == lb.substr(0, lb.find(' ')));
    CHECK(std::stod(la.substr(0, la.find(' '))) == 200.0 * rows);
    ++rows;
  }
  CHECK(rows == 32);
  const json rep = json::parse(slurp(fs::path(opt.out_dir) / "report.json"));
  CHECK(rep["diagnostics"]["oracle_max_diff"].get<double>() <= 1e-6);

  RunOptions single;
  single.out_dir = scratch("single").string();
  write_outputs(execute(spec, single), single);
  CHECK(fs::exists(fs::path(single.out_dir) / "plot.dat"));
  CHECK(!fs::exists(fs::path(single.out_dir) / "plot_overlay.dat"));
}

TEST_CASE("estimator reports carry their bounds") {
  const ProblemSpec spec = parse_spec(fock_doc());
  RunOptions opt;
  const SpectrumReport r = execute(spec, opt);
  REQUIRE(r.error_bound.has_value());
  REQUIRE(!r.components.empty());
  double worst = 0.0;
  for (const ComponentReport& c : r.components) {
    CHECK(c.std_error >= 0.0);
    CHECK(c.analytic_bound >= 0.0);
    if (c.k > 0) CHECK(c.analytic_bound > 0.0);
    worst = std::max(worst, c.analytic_bound);
  }
  CHECK(*r.error_bound == doctest::Approx(parseval_bound(std::sqrt(2.0) * worst, r.grid)));
  CHECK(r.samples_used == plan_samples(0.1, 0.99));
  const json rep = report_to_json(r);
  CHECK(rep["components"].size() == r.components.size());
  CHECK(rep["diagnostics"].contains("per_bin_error_bound"));
}

TEST_CASE("byte-identical outputs for identical inputs") {
  const ProblemSpec spec = parse_spec(fock_doc());
  RunOptions a;
  a.out_dir = scratch("det_a").string();
  a.emit_fourier = true;
  RunOptions b = a;
  b.out_dir = scratch("det_b").string();
  write_outputs(execute(spec, a), a);
  write_outputs(execute(spec, b), b);
  for (const char* f : {"spectrum.csv", "fourier.csv", "report.json", "plot.dat"}) {
    CHECK(slurp(fs::path(a.out_dir) / f) == slurp(fs::path(b.out_dir) / f));
  }
}

TEST_CASE("route override and mode checks") {
  json d = fock_doc();
  const ProblemSpec spec = parse_spec(d);
  RunOptions opt;
  opt.route = Mode::Oracle;
  const SpectrumReport r = execute(spec, opt);
  CHECK(r.route == Mode::Oracle);
  CHECK(r.mass_deficit.has_value());
  d["circuit"]["r0"] = {0.1, 0.0};
  CHECK_THROWS_AS(execute(parse_spec(d), RunOptions{}), DomainError);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch("exit");
  auto write = [&](const std::string& name, const json& doc) {
    std::ofstream(dir / name) << doc.dump();
    return (dir / name).string();
  };
  json bad = squeezer_doc();
  bad["weights"] = {-1};
  const std::string out = (dir / "out").string();
  CHECK(run({"vibro", "run", write("ok.json", squeezer_doc()), "--out", out}) == 0);
  CHECK(run({"vibro", "run", write("bad.json", bad), "--out", out}) == 2);
  CHECK(run({"vibro", "run", (dir / "missing.json").string(), "--out", out}) == 2);
  CHECK(run({"vibro", "run", write("ok2.json", squeezer_doc()), "--out", out, "--route", "nope"}) == 2);
  CHECK(run({"vibro", "frobnicate"}) == 2);
  json big = squeezer_doc();
  big["omega_max"] = 100000;
  CHECK(run({"vibro", "run", write("big.json", big), "--out", out}) == 3);
  std::ofstream(dir / "garbage.json") << "{not json";
  CHECK(run({"vibro", "run", (dir / "garbage.json").string(), "--out", out}) == 2);
}
