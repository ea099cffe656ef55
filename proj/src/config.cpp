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

#include "nematic/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>

#include "nematic/error.hpp"
#include "nematic/snapshot.hpp"

namespace nematic {

using nlohmann::json;

namespace {

/// Walks one object of the document, consuming known keys; anything left
/// over is an unknown key.
class Section {
 public:
  Section(const json& doc, std::string path) : path_(std::move(path)) {
    if (!doc.is_object()) fail(path_.empty() ? "config" : path_, "must be an object");
    doc_ = &doc;
    for (auto it = doc.begin(); it != doc.end(); ++it) unseen_.insert(it.key());
  }

  std::string key_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    unseen_.erase(key);
    auto it = doc_->find(key);
    return it == doc_->end() ? nullptr : &*it;
  }

  template <class T>
  void read(const std::string& key, T& out) {
    const json* v = find(key);
    if (!v) return;
    try {
      if constexpr (std::is_same_v<T, int> || std::is_same_v<T, long> ||
                    std::is_same_v<T, std::uint64_t>) {
        if (!v->is_number_integer()) fail(key_path(key), "expected an integer");
      } else if constexpr (std::is_same_v<T, double>) {
        if (!v->is_number()) fail(key_path(key), "expected a number");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v->is_boolean()) fail(key_path(key), "expected a boolean");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v->is_string()) fail(key_path(key), "expected a string");
      }
      out = v->get<T>();
    } catch (const json::exception& e) {
      fail(key_path(key), e.what());
    }
  }

  void finish() const {
    if (!unseen_.empty()) fail(key_path(*unseen_.begin()), "unknown key");
  }

  [[noreturn]] static void fail(const std::string& key, const std::string& why) {
    throw ConfigError(key + ": " + why);
  }

 private:
  const json* doc_ = nullptr;
  std::string path_;
  std::set<std::string> unseen_;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"rest", "shear-twist", "random-smooth"};
  return names;
}

std::string splitting_name(Splitting s) {
  return s == Splitting::imex ? "imex" : "fully-explicit";
}

void parse_model_params(const ModelConfig& m) {
  const std::set<std::string> allowed =
      m.name == "builtin" ? std::set<std::string>{"lambda_bar", "a", "mu_lo", "mu_hi"}
                          : std::set<std::string>{"mu", "lambda"};
  for (auto it = m.params.begin(); it != m.params.end(); ++it) {
    require(allowed.count(it.key()) == 1, "model.params." + it.key() + ": unknown key");
    require(it->is_number(), "model.params." + it.key() + ": expected a number");
  }
}

template <class T>
std::vector<T> read_list(Section& s, const std::string& key, std::vector<T> fallback) {
  const json* v = s.find(key);
  if (!v) return fallback;
  if (!v->is_array() || v->empty()) Section::fail(s.key_path(key), "expected a nonempty array");
  std::vector<T> out;
  for (const auto& e : *v) {
    if (!e.is_number() || (std::is_integral_v<T> && !e.is_number_integer())) {
      Section::fail(s.key_path(key), "expected numeric entries");
    }
    out.push_back(e.get<T>());
  }
  return out;
}

}  // namespace

long RunConfig::total_steps() const {
  return std::max(1L, std::lround(stepping.t_end / stepping.dt));
}

StepConfig RunConfig::step_config() const {
  StepConfig c;
  c.dt = stepping.dt;
  c.picard_tol = stepping.picard_tol;
  c.picard_max = stepping.picard_max;
  c.splitting = stepping.splitting;
  c.dealias_on = stepping.dealias_on;
  c.cubic_half_rule = stepping.cubic_half_rule;
  c.skew_symmetric_advection = stepping.skew_symmetric_advection;
  return c;
}

RunConfig parse_config(const json& doc) {
  RunConfig c;
  Section root(doc, "");

  if (const json* g = root.find("grid")) {
    Section s(*g, "grid");
    s.read("n", c.grid.n);
    s.read("D", c.grid.D);
    s.finish();
  }
  if (const json* m = root.find("model")) {
    Section s(*m, "model");
    s.read("name", c.model.name);
    if (const json* p = s.find("params")) {
      if (!p->is_object()) Section::fail("model.params", "must be an object");
      c.model.params = *p;
    }
    s.read("theta_floor", c.model.theta_floor);
    s.finish();
  }
  if (const json* i = root.find("initial_data")) {
    Section s(*i, "initial_data");
    s.read("preset", c.initial_data.preset);
    if (const json* snap = s.find("snapshot"); snap && !snap->is_null()) {
      if (!snap->is_string()) Section::fail("initial_data.snapshot", "expected a string or null");
      c.initial_data.snapshot = snap->get<std::string>();
    }
    s.read("seed", c.initial_data.seed);
    if (const json* p = s.find("params")) {
      Section ps(*p, "initial_data.params");
      auto& pp = c.initial_data.params;
      ps.read("amplitude", pp.amplitude);
      ps.read("alpha", pp.alpha);
      ps.read("bump", pp.bump);
      ps.read("max_mode", pp.max_mode);
      ps.read("width", pp.width);
      ps.finish();
    }
    if (const json* p = s.find("perturbation")) {
      Section ps(*p, "initial_data.perturbation");
      ps.read("delta", c.initial_data.perturbation.delta);
      ps.read("seed", c.initial_data.perturbation.seed);
      ps.finish();
    }
    s.finish();
  }
  if (const json* st = root.find("stepping")) {
    Section s(*st, "stepping");
    auto& sc = c.stepping;
    s.read("dt", sc.dt);
    s.read("t_end", sc.t_end);
    std::string splitting = splitting_name(sc.splitting);
    s.read("splitting", splitting);
    if (splitting == "imex") {
      sc.splitting = Splitting::imex;
    } else if (splitting == "fully-explicit") {
      sc.splitting = Splitting::fully_explicit;
    } else {
      Section::fail("stepping.splitting", "must be \"imex\" or \"fully-explicit\"");
    }
    s.read("picard_tol", sc.picard_tol);
    s.read("picard_max", sc.picard_max);
    s.read("dealias_on", sc.dealias_on);
    s.read("cubic_half_rule", sc.cubic_half_rule);
    s.read("skew_symmetric_advection", sc.skew_symmetric_advection);
    s.finish();
  }
  if (const json* o = root.find("output")) {
    Section s(*o, "output");
    s.read("snapshot_every", c.output.snapshot_every);
    s.read("diagnostics_path", c.output.diagnostics_path);
    s.read("snapshot_dir", c.output.snapshot_dir);
    s.finish();
  }
  if (const json* e = root.find("experiments")) {
    Section s(*e, "experiments");
    if (const json* m = s.find("mms")) {
      Section ms(*m, "experiments.mms");
      auto& mc = c.experiments.mms;
      mc.resolutions = read_list<int>(ms, "resolutions", mc.resolutions);
      mc.dts = read_list<double>(ms, "dts", mc.dts);
      ms.read("spatial_dt", mc.spatial_dt);
      ms.read("t_end", mc.t_end);
      ms.read("temporal_n", mc.temporal_n);
      ms.finish();
    }
    if (const json* u = s.find("uniqueness")) {
      Section us(*u, "experiments.uniqueness");
      us.read("delta", c.experiments.uniqueness.delta);
      us.read("t_end", c.experiments.uniqueness.t_end);
      us.finish();
    }
    if (const json* r = s.find("refinement")) {
      Section rs(*r, "experiments.refinement");
      auto& rc = c.experiments.refinement;
      rs.read("n", rc.n);
      rc.cutoffs = read_list<int>(rs, "cutoffs", rc.cutoffs);
      rs.read("t_end", rc.t_end);
      rs.finish();
    }
    s.finish();
  }
  root.finish();

  // Invariants.
  require(c.grid.n >= 8 && c.grid.n % 2 == 0, "grid.n must be even and >= 8");
  require(c.grid.D > 0.0 && std::isfinite(c.grid.D), "grid.D must be positive");
  require(c.model.name == "builtin" || c.model.name == "constant",
          "model.name must be \"builtin\" or \"constant\"");
  parse_model_params(c.model);
  require(c.model.theta_floor > 0.0, "model.theta_floor must be positive");
  require(std::find(preset_names().begin(), preset_names().end(), c.initial_data.preset) !=
              preset_names().end(),
          "initial_data.preset must be one of rest, shear-twist, random-smooth");
  const auto& pp = c.initial_data.params;
  require(pp.amplitude >= 0.0, "initial_data.params.amplitude must be >= 0");
  require(pp.bump >= 0.0, "initial_data.params.bump must be >= 0");
  require(pp.max_mode >= 1 && 2 * pp.max_mode < c.grid.n,
          "initial_data.params.max_mode must lie in [1, n/2)");
  require(pp.width > 0.0, "initial_data.params.width must be positive");
  require(c.initial_data.perturbation.delta >= 0.0,
          "initial_data.perturbation.delta must be >= 0");
  const auto& sc = c.stepping;
  require(sc.dt > 0.0 && std::isfinite(sc.dt), "stepping.dt must be positive");
  require(sc.t_end > 0.0 && std::isfinite(sc.t_end), "stepping.t_end must be positive");
  require(sc.picard_tol > 0.0 && sc.picard_tol < 1.0, "stepping.picard_tol must lie in (0, 1)");
  require(sc.picard_max >= 1, "stepping.picard_max must be >= 1");
  require(c.output.snapshot_every >= 0, "output.snapshot_every must be >= 0");
  require(!c.output.diagnostics_path.empty(), "output.diagnostics_path must not be empty");
  require(!c.output.snapshot_dir.empty(), "output.snapshot_dir must not be empty");
  const auto& mc = c.experiments.mms;
  for (int n : mc.resolutions) {
    require(n >= 8 && n % 2 == 0, "experiments.mms.resolutions entries must be even and >= 8");
  }
  require(std::is_sorted(mc.resolutions.begin(), mc.resolutions.end()),
          "experiments.mms.resolutions must be increasing");
  for (double dt : mc.dts) require(dt > 0.0, "experiments.mms.dts entries must be positive");
  require(mc.spatial_dt > 0.0, "experiments.mms.spatial_dt must be positive");
  require(mc.t_end > 0.0, "experiments.mms.t_end must be positive");
  require(mc.temporal_n >= 8 && mc.temporal_n % 2 == 0,
          "experiments.mms.temporal_n must be even and >= 8");
  require(c.experiments.uniqueness.delta >= 0.0, "experiments.uniqueness.delta must be >= 0");
  require(c.experiments.uniqueness.t_end > 0.0, "experiments.uniqueness.t_end must be positive");
  const auto& rc = c.experiments.refinement;
  require(rc.n >= 8 && rc.n % 2 == 0, "experiments.refinement.n must be even and >= 8");
  require(rc.t_end > 0.0, "experiments.refinement.t_end must be positive");
  for (std::size_t i = 0; i < rc.cutoffs.size(); ++i) {
    require(rc.cutoffs[i] >= 1, "experiments.refinement.cutoffs entries must be >= 1");
    require(2 * rc.cutoffs[i] < rc.n, "experiments.refinement.cutoffs must lie below Nyquist");
    require(i == 0 || rc.cutoffs[i] > rc.cutoffs[i - 1],
            "experiments.refinement.cutoffs must be strictly increasing");
  }

  // The builtin model checks its bounds at construction; surface that as a
  // config error rather than a library error.
  try {
    (void)make_model(c.model);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("model.params: ") + e.what());
  }
  return c;
}

void apply_override(json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("override must have the form key=value: " + assignment);
  }
  const std::string key = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  json value = json::parse(text, nullptr, false);
  if (value.is_discarded()) value = text;

  json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot - start);
    if (part.empty()) throw ConfigError("override has an empty key segment: " + key);
    if (!node->is_object()) throw ConfigError(key + ": cannot override inside a non-object");
    if (dot == std::string::npos) {
      (*node)[part] = value;
      return;
    }
    node = &(*node)[part];
    if (node->is_null()) *node = json::object();
    start = dot + 1;
  }
}

RunConfig load_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: " + path.string() + " is not valid JSON");
  for (const auto& o : overrides) apply_override(doc, o);
  return parse_config(doc);
}

json serialize_config(const RunConfig& c) {
  const auto& pp = c.initial_data.params;
  const auto& sc = c.stepping;
  const auto& mc = c.experiments.mms;
  const auto& rc = c.experiments.refinement;
  return json{
      {"grid", {{"n", c.grid.n}, {"D", c.grid.D}}},
      {"model",
       {{"name", c.model.name}, {"params", c.model.params}, {"theta_floor", c.model.theta_floor}}},
      {"initial_data",
       {{"preset", c.initial_data.preset},
        {"snapshot", c.initial_data.snapshot ? json(*c.initial_data.snapshot) : json(nullptr)},
        {"seed", c.initial_data.seed},
        {"params",
         {{"amplitude", pp.amplitude},
          {"alpha", pp.alpha},
          {"bump", pp.bump},
          {"max_mode", pp.max_mode},
          {"width", pp.width}}},
        {"perturbation",
         {{"delta", c.initial_data.perturbation.delta},
          {"seed", c.initial_data.perturbation.seed}}}}},
      {"stepping",
       {{"dt", sc.dt},
        {"t_end", sc.t_end},
        {"splitting", splitting_name(sc.splitting)},
        {"picard_tol", sc.picard_tol},
        {"picard_max", sc.picard_max},
        {"dealias_on", sc.dealias_on},
        {"cubic_half_rule", sc.cubic_half_rule},
        {"skew_symmetric_advection", sc.skew_symmetric_advection}}},
      {"output",
       {{"snapshot_every", c.output.snapshot_every},
        {"diagnostics_path", c.output.diagnostics_path},
        {"snapshot_dir", c.output.snapshot_dir}}},
      {"experiments",
       {{"mms",
         {{"resolutions", mc.resolutions},
          {"dts", mc.dts},
          {"spatial_dt", mc.spatial_dt},
          {"t_end", mc.t_end},
          {"temporal_n", mc.temporal_n}}},
        {"uniqueness",
         {{"delta", c.experiments.uniqueness.delta}, {"t_end", c.experiments.uniqueness.t_end}}},
        {"refinement", {{"n", rc.n}, {"cutoffs", rc.cutoffs}, {"t_end", rc.t_end}}}}}};
}

CoefficientModel make_model(const ModelConfig& m) {
  const auto param = [&](const char* key, double fallback) {
    return m.params.contains(key) ? m.params.at(key).get<double>() : fallback;
  };
  if (m.name == "builtin") {
    return CoefficientModel::builtin(m.theta_floor, param("lambda_bar", 1.0), param("a", 1.0),
                                     param("mu_lo", 0.1), param("mu_hi", 1.0));
  }
  if (m.name == "constant") {
    return CoefficientModel::constant(param("mu", 1.0), param("lambda", 1.0), m.theta_floor);
  }
  throw InvalidArgument("unknown model: " + m.name);
}

ScalarField smooth_random_field(const GridPtr& grid, std::uint64_t seed, int max_mode,
                                double width) {
  if (max_mode < 1 || 2 * max_mode >= grid->n()) {
    throw InvalidArgument("smooth_random_field: max_mode must lie in [1, n/2)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ScalarField f(grid);
  const Grid& g = *grid;
  for_each_mode(g, [&](int ix, int iy, int iz, std::size_t idx) {
    const int m[3] = {g.mode(ix), g.mode(iy), g.mode(iz)};
    if (std::abs(m[0]) > max_mode || std::abs(m[1]) > max_mode || std::abs(m[2]) > max_mode) {
      return;
    }
    const double m2 = m[0] * m[0] + m[1] * m[1] + m[2] * m[2];
    if (m2 == 0) return;
    const double w = std::exp(-m2 / (2.0 * width * width));
    const double re = normal(rng);
    const double im = normal(rng);
    f[idx] = w * Complex(re, im);
  });
  // The inverse transform reads only a Hermitian-consistent part; rebuilding
  // from physical values makes the coefficients a valid real field.
  f = ScalarField::from_physical(grid, f.to_physical());
  const double norm = sobolev_norm(f, 0);
  if (norm > 0.0) f *= 1.0 / norm;
  return f;
}

namespace {

VectorField random_vector(const GridPtr& grid, std::uint64_t seed, int max_mode, double width) {
  VectorField v(grid);
  for (int a = 0; a < 3; ++a) v[a] = smooth_random_field(grid, seed * 3 + a, max_mode, width);
  return v;
}

void normalize(VectorField& v) {
  const double norm = sobolev_norm(v, 0);
  if (norm > 0.0) v *= 1.0 / norm;
}

}  // namespace

State make_preset(const RunConfig& c, const GridPtr& grid) {
  const Grid& g = *grid;
  const int n = g.n();
  const std::size_t size = g.physical_size();
  const double floor = c.model.theta_floor;
  const double kappa = std::numbers::pi / g.half_width();
  const auto& pp = c.initial_data.params;

  RealVector u{RealArray(size, 0.0), RealArray(size, 0.0), RealArray(size, 0.0)};
  RealVector d{RealArray(size, 1.0), RealArray(size, 0.0), RealArray(size, 0.0)};
  RealArray theta(size, floor);
  State s;

  if (c.initial_data.preset == "rest") {
    // defaults above
  } else if (c.initial_data.preset == "shear-twist") {
    for (int z = 0; z < n; ++z) {
      for (int y = 0; y < n; ++y) {
        for (int x = 0; x < n; ++x) {
          const std::size_t i = x + static_cast<std::size_t>(n) * (y + static_cast<std::size_t>(n) * z);
          const double x1 = kappa * g.coordinate(x);
          const double x2 = kappa * g.coordinate(y);
          const double x3 = kappa * g.coordinate(z);
          u[0][i] = pp.amplitude * std::sin(x2);
          const double phase = pp.alpha * x1;
          d[0][i] = std::cos(phase);
          d[1][i] = std::sin(phase);
          theta[i] = floor + pp.bump * (1.0 + std::cos(x1)) * (1.0 + std::cos(x2)) *
                                 (1.0 + std::cos(x3)) / 8.0;
        }
      }
    }
  } else if (c.initial_data.preset == "random-smooth") {
    const std::uint64_t seed = c.initial_data.seed;
    VectorField uf = leray_project(random_vector(grid, seed, pp.max_mode, pp.width));
    normalize(uf);
    uf *= pp.amplitude;
    s.u = uf;
    const RealArray r = smooth_random_field(grid, seed + 101, pp.max_mode, pp.width).to_physical();
    const double lo = *std::min_element(r.begin(), r.end());
    const double hi = *std::max_element(r.begin(), r.end());
    const double scale = hi > lo ? pp.bump / (hi - lo) : 0.0;
    for (std::size_t i = 0; i < size; ++i) theta[i] = floor + scale * (r[i] - lo);
    const RealVector dr = random_vector(grid, seed + 211, pp.max_mode, pp.width).to_physical();
    double r_max = 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      r_max = std::max(r_max, std::hypot(dr[0][i], dr[1][i], dr[2][i]));
    }
    // e1 plus a random part of length <= 1/2 keeps |v| >= 1/2, so the
    // normalized director stays as smooth as the random field.
    const double eps = r_max > 0.0 ? 0.5 / r_max : 0.0;
    for (std::size_t i = 0; i < size; ++i) {
      const double v[3] = {1.0 + eps * dr[0][i], eps * dr[1][i], eps * dr[2][i]};
      const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
      for (int a = 0; a < 3; ++a) d[a][i] = v[a] / len;
    }
  } else {
    throw ConfigError("initial_data.preset: unknown preset " + c.initial_data.preset);
  }

  if (s.u.empty()) s.u = VectorField::from_physical(grid, u);
  s.theta = ScalarField::from_physical(grid, theta);
  s.d = VectorField::from_physical(grid, d);
  s.t = 0.0;
  return s;
}

Perturbation smooth_perturbation(const GridPtr& grid, std::uint64_t seed) {
  constexpr int kMaxMode = 2;
  constexpr double kFlat = 1e6;
  Perturbation p;
  p.u = leray_project(random_vector(grid, seed, kMaxMode, kFlat));
  normalize(p.u);
  p.theta = smooth_random_field(grid, seed + 17, kMaxMode, kFlat);
  p.d = random_vector(grid, seed + 29, kMaxMode, kFlat);
  normalize(p.d);
  return p;
}

State perturb(const State& state, const Perturbation& pert, double delta) {
  State s = state;
  if (delta == 0.0) return s;
  s.u.axpy(delta, pert.u);
  s.theta.axpy(delta, pert.theta);
  VectorField d = state.d;
  d.axpy(delta, pert.d);
  RealVector dp = d.to_physical();
  for (std::size_t i = 0; i < dp[0].size(); ++i) {
    const double len = std::sqrt(dp[0][i] * dp[0][i] + dp[1][i] * dp[1][i] + dp[2][i] * dp[2][i]);
    if (len > 1.0) {
      for (int a = 0; a < 3; ++a) dp[a][i] /= len;
    }
  }
  s.d = VectorField::from_physical(state.grid_ptr(), dp);
  return s;
}

State make_initial_data(const RunConfig& c, const GridPtr& grid) {
  State s;
  if (c.initial_data.snapshot) {
    s = state_from_snapshot(read_snapshot(*c.initial_data.snapshot), grid);
  } else {
    s = make_preset(c, grid);
  }
  if (c.initial_data.perturbation.delta > 0.0) {
    s = perturb(s, smooth_perturbation(grid, c.initial_data.perturbation.seed),
                c.initial_data.perturbation.delta);
  }
  return s;
}

}  // namespace nematic
