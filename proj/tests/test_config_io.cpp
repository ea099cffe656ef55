// Copyright 2026 The nematic-spectral Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "json.hpp"

#include "nematic/config.hpp"
#include "nematic/diagnostics.hpp"
#include "nematic/driver.hpp"
#include "nematic/error.hpp"
#include "nematic/snapshot.hpp"
#include "oracles.hpp"

using namespace nematic;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("nematic_test_" + name + "_" +
                                                    std::to_string(std::random_device{}()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string config_error(const json& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_coeffs(const ScalarField& a, const ScalarField& b) {
  return std::ranges::equal(a.coeffs(), b.coeffs());
}

RunConfig small_run(const std::string& preset, double dt, double t_end) {
  RunConfig c;
  c.grid.n = 8;
  c.initial_data.preset = preset;
  c.stepping.dt = dt;
  c.stepping.t_end = t_end;
  return c;
}

}  // namespace

TEST_CASE("empty document gives the defaults") {
  const RunConfig c = parse_config(json::object());
  CHECK(c == RunConfig{});
  CHECK(c.grid.n == 16);
  CHECK(c.stepping.splitting == Splitting::imex);
  CHECK(c.total_steps() == 100);
}

TEST_CASE("invalid configurations name the offending key") {
  CHECK(config_error({{"grid", {{"n", 7}}}}).find("grid.n must be even and >= 8") != std::string::npos);
  CHECK(config_error({{"grid", {{"n", 4}}}}).find("grid.n") != std::string::npos);
  CHECK(config_error({{"stepping", {{"dtt", 0.1}}}}).find("stepping.dtt: unknown key") != std::string::npos);
  CHECK(config_error({{"bogus", 1}}).find("bogus: unknown key") != std::string::npos);
  CHECK(config_error({{"stepping", {{"dt", "fast"}}}}).find("stepping.dt") != std::string::npos);
  CHECK(config_error({{"stepping", {{"dt", -1.0}}}}).find("stepping.dt") != std::string::npos);
  CHECK(config_error({{"stepping", {{"splitting", "rk4"}}}}).find("stepping.splitting") != std::string::npos);
  CHECK(config_error({{"model", {{"name", "builtin"}, {"params", {{"mu", 1.0}}}}}}).find("model.params") !=
        std::string::npos);
  CHECK(config_error({{"model", {{"params", {{"mu_lo", 2.0}, {"mu_hi", 1.0}}}}}}).find("model.params") !=
        std::string::npos);
  CHECK(config_error({{"initial_data", {{"params", {{"max_mode", 8}}}}}}).find("max_mode") != std::string::npos);
  CHECK_FALSE(config_error({{"initial_data", {{"preset", "vortex"}}}}).empty());
}

TEST_CASE("serialize then parse is the identity") {
  RunConfig c;
  c.grid.n = 24;
  c.grid.D = 1.25;
  c.model.name = "constant";
  c.model.params = {{"mu", 0.5}, {"lambda", 2.0}};
  c.model.theta_floor = 1.5;
  c.initial_data.preset = "random-smooth";
  c.initial_data.seed = 99;
  c.initial_data.params.max_mode = 5;
  c.initial_data.perturbation.delta = 1e-3;
  c.stepping.splitting = Splitting::fully_explicit;
  c.stepping.cubic_half_rule = true;
  c.output.snapshot_every = 0;
  c.experiments.refinement.cutoffs = {2, 4};
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));
}

TEST_CASE("load_config applies overrides") {
  const auto dir = scratch_dir("overrides");
  const fs::path path = dir / "c.json";
  std::ofstream(path) << R"({"grid": {"n": 8}, "stepping": {"dt": 0.01}})";
  const RunConfig c = load_config(path, {"stepping.dt=0.002", "initial_data.preset=shear-twist",
                                         "output.snapshot_every=0", "model.params.a=2"});
  CHECK(c.grid.n == 8);
  CHECK(c.stepping.dt == 0.002);
  CHECK(c.initial_data.preset == "shear-twist");
  CHECK(c.output.snapshot_every == 0);
  CHECK(c.model.params.at("a") == 2);
  CHECK_THROWS_AS(load_config(path, {"stepping.dt"}), ConfigError);
  CHECK_THROWS_AS(load_config(path, {"grid.n.x=3"}), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("presets satisfy the maximum principles") {
  for (const std::string preset : {"rest", "shear-twist", "random-smooth"}) {
    INFO(preset);
    RunConfig c;
    c.initial_data.preset = preset;
    const auto g = Grid::create(16);
    const State s = make_preset(c, g);
    const auto r = principle_checks(s, c.model.theta_floor);
    CHECK(r.all_ok());
    CHECK(r.d_margin <= 1e-12);
    CHECK(r.theta_margin >= -1e-12);
  }
}

TEST_CASE("rest preset sits exactly at the bounds") {
  RunConfig c;
  const State s = make_preset(c, Grid::create(8));
  const auto r = principle_checks(s, 1.0);
  CHECK(std::abs(r.d_margin) < 1e-15);
  CHECK(std::abs(r.theta_margin) < 1e-15);
}

TEST_CASE("shear-twist director is a unit field") {
  for (int alpha : {1, 2}) {
    RunConfig c;
    c.initial_data.preset = "shear-twist";
    c.initial_data.params.alpha = alpha;
    const State s = make_preset(c, Grid::create(16));
    const RealVector d = s.d.to_physical();
    double worst = 0.0;
    for (std::size_t i = 0; i < d[0].size(); ++i) {
      worst = std::max(worst, std::abs(std::sqrt(d[0][i] * d[0][i] + d[1][i] * d[1][i] + d[2][i] * d[2][i]) - 1.0));
    }
    CHECK(worst < 1e-15);
  }
}

TEST_CASE("random-smooth is deterministic per seed") {
  RunConfig c;
  c.initial_data.preset = "random-smooth";
  const auto g = Grid::create(16);
  const State a = make_preset(c, g);
  const State b = make_preset(c, g);
  CHECK(same_coeffs(a.u[0], b.u[0]));
  CHECK(same_coeffs(a.theta, b.theta));
  CHECK(same_coeffs(a.d[2], b.d[2]));
  CHECK(divergence_residual(a.u) < 1e-12);
  c.initial_data.seed = 43;
  CHECK_FALSE(same_coeffs(make_preset(c, g).theta, a.theta));
}

TEST_CASE("smooth random field is normalized") {
  const auto g = Grid::create(16);
  const auto f = smooth_random_field(g, 5, 3, 2.0);
  CHECK(std::abs(f[0]) < 1e-15);
  CHECK(sobolev_norm(f, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(energy_above(f, 3) < 1e-28);
}

TEST_CASE("perturbation keeps the director in the unit ball") {
  RunConfig c;
  c.initial_data.preset = "shear-twist";
  const auto g = Grid::create(16);
  const State s = make_preset(c, g);
  const auto pert = smooth_perturbation(g, 7);
  CHECK(divergence_residual(pert.u) < 1e-12);
  CHECK(sobolev_norm(pert.u, 0) == doctest::Approx(1.0));
  const State p = perturb(s, pert, 1e-2);
  CHECK(principle_checks(p, 1.0).d_margin <= 1e-15);
  CHECK(sobolev_norm(p.u - s.u, 0) == doctest::Approx(1e-2).epsilon(1e-10));
}

TEST_CASE("snapshot files round-trip byte for byte") {
  const auto dir = scratch_dir("snapshot");
  RunConfig c;
  c.initial_data.preset = "random-smooth";
  c.grid.D = 2.0;
  const auto g = Grid::create(16, 2.0);
  State s = make_preset(c, g);
  s.t = 0.375;
  const Snapshot snap = snapshot_from_state(s, 42);
  write_snapshot(dir / "a.bin", snap);
  const Snapshot back = read_snapshot(dir / "a.bin");
  CHECK(back.n == 16);
  CHECK(back.half_width == 2.0);
  CHECK(back.time == 0.375);
  CHECK(back.step == 42);
  REQUIRE(back.components.size() == kSnapshotComponents);
  CHECK(back.components == snap.components);
  write_snapshot(dir / "b.bin", back);
  CHECK(slurp(dir / "a.bin") == slurp(dir / "b.bin"));

  const State r = state_from_snapshot(back, g);
  CHECK(r.t == 0.375);
  CHECK(oracle::max_diff(r.theta.to_physical(), s.theta.to_physical()) < 1e-14);
  CHECK_THROWS_AS(state_from_snapshot(back, Grid::create(8, 2.0)), InvalidArgument);

  // The canonical state is exactly what a reload of its snapshot produces.
  const State canon = canonicalize(s, 42);
  const State reloaded = state_from_snapshot(back, g);
  for (int a = 0; a < 3; ++a) {
    CHECK(same_coeffs(canon.u[a], reloaded.u[a]));
    CHECK(same_coeffs(canon.d[a], reloaded.d[a]));
  }
  CHECK(same_coeffs(canon.theta, reloaded.theta));

  // Truncated and padded files are rejected.
  const std::string bytes = slurp(dir / "a.bin");
  std::ofstream(dir / "short.bin", std::ios::binary) << bytes.substr(0, bytes.size() - 8);
  CHECK_THROWS_AS(read_snapshot(dir / "short.bin"), IoError);
  std::ofstream(dir / "long.bin", std::ios::binary) << bytes << "x";
  CHECK_THROWS_AS(read_snapshot(dir / "long.bin"), IoError);
  CHECK_THROWS_AS(read_snapshot(dir / "none.bin"), IoError);
  fs::remove_all(dir);
}

TEST_CASE("rest run keeps the energy constant") {
  const auto dir = scratch_dir("rest");
  RunConfig c = small_run("rest", 1e-2, 0.1);
  RunOptions o;
  o.output_root = dir;
  const auto summary = run(c, o);
  CHECK(summary.code == ExitCode::ok);
  CHECK(summary.last_step == 10);
  const auto recs = read_diagnostics(dir / "diagnostics.jsonl");
  REQUIRE(recs.size() == 11);
  for (const auto& r : recs) {
    CHECK(r.total_energy == doctest::Approx(recs[0].total_energy).epsilon(1e-12));
    CHECK(r.dissipation == 0.0);
    CHECK(r.d_ok);
  }
  CHECK(fs::exists(dir / "snapshots" / snapshot_name(0)));
  CHECK(latest_snapshot(c, o).filename() == snapshot_name(0));
  fs::remove_all(dir);
}

TEST_CASE("interrupted and resumed run matches an uninterrupted one") {
  const auto a = scratch_dir("full");
  const auto b = scratch_dir("split");
  RunConfig c = small_run("shear-twist", 1e-3, 0.03);
  c.output.snapshot_every = 7;
  RunOptions oa;
  oa.output_root = a;
  REQUIRE(run(c, oa).code == ExitCode::ok);

  RunOptions ob;
  ob.output_root = b;
  ob.max_steps = 17;
  const auto first = run(c, ob);
  CHECK(first.code == ExitCode::ok);
  CHECK(first.last_step == 17);
  ob.max_steps.reset();
  const fs::path latest = latest_snapshot(c, ob);
  CHECK(latest.filename() == snapshot_name(14));
  const auto second = resume(c, latest, ob);
  CHECK(second.code == ExitCode::ok);
  CHECK(second.last_step == 30);
  CHECK(slurp(a / "diagnostics.jsonl") == slurp(b / "diagnostics.jsonl"));
  CHECK(slurp(a / "snapshots" / snapshot_name(28)) == slurp(b / "snapshots" / snapshot_name(28)));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("Picard failure exits with code 10 and a JSON report") {
  const auto dir = scratch_dir("picard");
  RunConfig c = small_run("shear-twist", 1e-3, 0.01);
  c.stepping.picard_max = 1;
  RunOptions o;
  o.output_root = dir;
  std::ostringstream err;
  o.err = &err;
  const auto s = run(c, o);
  CHECK(s.code == ExitCode::picard);
  const json report = json::parse(err.str());
  CHECK(report.at("error") == "picard_failure");
  CHECK(report.at("step") == 1);
  CHECK(report.at("residuals").size() == 1);
  CHECK(report.at("guidance").get<std::string>().find("halve") != std::string::npos);
  CHECK(report.at("F_trend").size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("an oversized step breaks the maximum principle and exits 11") {
  const auto dir = scratch_dir("principle");
  RunConfig c = small_run("shear-twist", 10.0, 200.0);
  RunOptions o;
  o.output_root = dir;
  std::ostringstream err;
  o.err = &err;
  const auto s = run(c, o);
  CHECK(s.code == ExitCode::principle);
  CHECK(json::parse(err.str()).at("error") == "principle_violation");
  fs::remove_all(dir);
}

TEST_CASE("non-finite initial data exits 12") {
  const auto dir = scratch_dir("nan");
  RunConfig c = small_run("rest", 1e-3, 0.01);
  State s = make_preset(c, Grid::create(8));
  Snapshot snap = snapshot_from_state(s, 0);
  snap.components[3][5] = std::numeric_limits<double>::quiet_NaN();
  write_snapshot(dir / "bad.bin", snap);
  c.initial_data.snapshot = (dir / "bad.bin").string();
  RunOptions o;
  o.output_root = dir;
  std::ostringstream err;
  o.err = &err;
  CHECK(run(c, o).code == ExitCode::nan);
  CHECK(json::parse(err.str()).at("error") == "nan_detected");
  fs::remove_all(dir);
}

TEST_CASE("output paths resolve below the output root") {
  RunOptions o;
  o.output_root = "/tmp/root";
  CHECK(resolve_output(o, "a/b.jsonl") == fs::path("/tmp/root/a/b.jsonl"));
  CHECK(resolve_output(o, "/abs/x") == fs::path("/abs/x"));
  CHECK(snapshot_name(12) == "snap_00000012.bin");
}
