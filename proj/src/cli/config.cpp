#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "psesk/chiral.hpp"
#include "psesk/errors.hpp"

namespace psesk::cli {

using nlohmann::json;

namespace {

const char* state_type_name(StateType t) {
  switch (t) {
    case StateType::HoSlater: return "ho_slater";
    case StateType::Interpolated: return "interpolated";
    case StateType::PotentialGround: return "potential_ground";
    case StateType::Coherent: return "coherent";
  }
  return "ho_slater";
}

StateType state_type_from(const std::string& s) {
  if (s == "ho_slater") return StateType::HoSlater;
  if (s == "interpolated") return StateType::Interpolated;
  if (s == "potential_ground") return StateType::PotentialGround;
  if (s == "coherent") return StateType::Coherent;
  throw ConfigError("unknown state type '" + s + "'");
}

PotentialConfig potential_from(const json& j) {
  PotentialConfig p;
  if (j.is_string()) {
    p.kind = j.get<std::string>();
  } else {
    p.kind = j.value("kind", std::string("sho"));
    p.expression = j.value("expression", std::string());
  }
  return p;
}

json potential_to(const PotentialConfig& p) {
  json j{{"kind", p.kind}};
  if (!p.expression.empty()) j["expression"] = p.expression;
  return j;
}

void read_grid(const json& j, Grid1D& g) {
  if (!j.is_array() || j.size() != 3) throw ConfigError("grid axes are [lo, hi, points]");
  g.lo = j[0].get<double>();
  g.hi = j[1].get<double>();
  g.n = j[2].get<int>();
}

}  // namespace

PotentialSpec PotentialConfig::build() const {
  if (kind == "custom") {
    if (expression.empty()) throw ConfigError("custom potential needs an expression");
    return PotentialSpec::custom(expression);
  }
  try {
    return PotentialSpec::builtin(kind);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("");
    } catch (...) {
      throw ConfigError("bad integer list '" + text + "'");
    }
  }
  return out;
}

int RunConfig::resolved_basis() const {
  if (basis > 0) return basis;
  switch (state.type) {
    case StateType::HoSlater:
      return state.occupied.empty() ? 1 : *std::max_element(state.occupied.begin(), state.occupied.end()) + 1;
    case StateType::Interpolated: return 3;
    case StateType::PotentialGround: return 100;
    case StateType::Coherent: {
      double n = state.w_re * state.w_re + state.w_im * state.w_im;
      return static_cast<int>(std::ceil(n + 10.0 * std::sqrt(n) + 30.0));
    }
  }
  return 1;
}

json RunConfig::to_json() const {
  json st{{"type", state_type_name(state.type)}};
  switch (state.type) {
    case StateType::HoSlater: st["occupied"] = state.occupied; break;
    case StateType::Interpolated:
      st["t"] = state.t;
      st["phi"] = state.phi;
      break;
    case StateType::PotentialGround:
      st["potential"] = potential_to(state.potential);
      st["N"] = state.particles;
      break;
    case StateType::Coherent: st["w"] = {state.w_re, state.w_im}; break;
  }
  return json{{"command", command},
              {"state", st},
              {"basis", resolved_basis()},
              {"theta_points", theta_points},
              {"quadrature", quadrature},
              {"t_grid", {{"start", t_start}, {"stop", t_stop}, {"step", t_step}}},
              {"grid", {{"x", {grid.x.lo, grid.x.hi, grid.x.n}}, {"p", {grid.p.lo, grid.p.hi, grid.p.n}}}},
              {"rotation", rotation},
              {"potential", potential_to(potential)},
              {"levels", levels},
              {"out", out},
              {"format", format},
              {"gnuplot", gnuplot}};
}

RunConfig config_from_json(const std::string& command, const json& doc) {
  RunConfig c;
  c.command = command;
  try {
    if (doc.contains("state")) {
      const json& s = doc["state"];
      c.state.type = state_type_from(s.value("type", std::string("ho_slater")));
      if (s.contains("occupied")) c.state.occupied = s["occupied"].get<std::vector<int>>();
      c.state.t = s.value("t", 0.0);
      c.state.phi = s.value("phi", 0.0);
      if (s.contains("potential")) c.state.potential = potential_from(s["potential"]);
      c.state.particles = s.value("N", 1);
      if (s.contains("w")) {
        c.state.w_re = s["w"].at(0).get<double>();
        c.state.w_im = s["w"].at(1).get<double>();
      }
    }
    c.basis = doc.value("basis", 0);
    c.theta_points = doc.value("theta_points", 256);
    c.quadrature = doc.value("quadrature", 0);
    if (doc.contains("t_grid")) {
      const json& t = doc["t_grid"];
      c.t_start = t.value("start", 0.0);
      c.t_stop = t.value("stop", 1.0);
      c.t_step = t.value("step", 0.01);
    }
    if (doc.contains("grid")) {
      if (doc["grid"].contains("x")) read_grid(doc["grid"]["x"], c.grid.x);
      if (doc["grid"].contains("p")) read_grid(doc["grid"]["p"], c.grid.p);
    }
    c.rotation = doc.value("rotation", 0.0);
    if (doc.contains("potential")) c.potential = potential_from(doc["potential"]);
    c.levels = doc.value("levels", 8);
    c.out = doc.value("out", std::string("."));
    c.format = doc.value("format", std::string("csv"));
    c.gnuplot = doc.value("gnuplot", false);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

void apply_overrides(RunConfig& c, const Overrides& f) {
  if (f.out) c.out = *f.out;
  if (f.format) c.format = *f.format;
  if (f.theta_points) c.theta_points = *f.theta_points;
  if (f.basis) c.basis = *f.basis;
  if (f.quadrature) c.quadrature = *f.quadrature;
  if (f.levels) c.levels = *f.levels;
  if (f.t_start) c.t_start = *f.t_start;
  if (f.t_stop) c.t_stop = *f.t_stop;
  if (f.t_step) c.t_step = *f.t_step;
  if (f.rotation) c.rotation = *f.rotation;
  if (f.gnuplot) c.gnuplot = true;
  if (f.occupied) {
    c.state.type = StateType::HoSlater;
    c.state.occupied = parse_int_list(*f.occupied);
  }
  if (f.t || f.phi) {
    if (c.state.type != StateType::Interpolated) {
      c.state = StateSpec{};
      c.state.type = StateType::Interpolated;
    }
    if (f.t) c.state.t = *f.t;
    if (f.phi) c.state.phi = *f.phi;
  }
  if (f.potential || f.expression) {
    PotentialConfig p = c.potential;
    if (f.potential) p.kind = *f.potential;
    if (f.expression) {
      p.expression = *f.expression;
      if (!f.potential) p.kind = "custom";
    }
    c.potential = p;
    if (c.command != "solve-potential") {
      c.state.type = StateType::PotentialGround;
      c.state.potential = p;
    }
  }
  if (f.particles) {
    if (c.state.type != StateType::PotentialGround) throw ConfigError("--particles needs a potential state");
    c.state.particles = *f.particles;
  }
  if (f.coherent) {
    auto pos = f.coherent->find(',');
    try {
      c.state = StateSpec{};
      c.state.type = StateType::Coherent;
      c.state.w_re = std::stod(f.coherent->substr(0, pos));
      c.state.w_im = pos == std::string::npos ? 0.0 : std::stod(f.coherent->substr(pos + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad --coherent value '" + *f.coherent + "'");
    }
  }
}

void validate(const RunConfig& c) {
  if (c.theta_points < 16 || c.theta_points % 2 != 0) throw ConfigError("theta_points must be even and >= 16");
  if (c.format != "csv" && c.format != "json") throw ConfigError("format must be csv or json");
  if (c.basis < 0 || c.basis > 2 * kMaxBasis) throw ConfigError("basis out of range");
  if (c.levels < 1) throw ConfigError("levels must be positive");
  if (c.grid.x.n < 2 || c.grid.p.n < 2 || !(c.grid.x.hi > c.grid.x.lo) || !(c.grid.p.hi > c.grid.p.lo))
    throw ConfigError("phase-space grid must have at least two points per axis and positive extent");
  if (!(c.t_step > 0.0) || c.t_stop < c.t_start) throw ConfigError("bad t grid");
  const int M = c.resolved_basis();
  switch (c.state.type) {
    case StateType::HoSlater: {
      const auto& occ = c.state.occupied;
      if (occ.empty()) throw ConfigError("ho_slater needs at least one occupied index");
      for (std::size_t i = 0; i < occ.size(); ++i) {
        if (occ[i] < 0) throw ConfigError("occupied indices must be nonnegative");
        if (i > 0 && occ[i] <= occ[i - 1]) throw ConfigError("occupied indices must be strictly ascending");
      }
      if (occ.back() + 1 > M) throw ConfigError("basis smaller than the largest occupied index + 1");
      break;
    }
    case StateType::Interpolated:
      if (M < 3) throw ConfigError("interpolated state needs basis >= 3");
      break;
    case StateType::PotentialGround:
      if (c.state.particles < 1) throw ConfigError("N must be positive");
      break;
    case StateType::Coherent: break;
  }
}

RunConfig load_config(const std::string& command, const std::string& path, const Overrides& flags) {
  json doc = json::object();
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
  }
  RunConfig c = config_from_json(command, doc);
  apply_overrides(c, flags);
  validate(c);
  return c;
}

SlaterState build_slater_state(const RunConfig& c) {
  const int M = c.resolved_basis();
  switch (c.state.type) {
    case StateType::HoSlater: return SlaterState::from_occupations(c.state.occupied, M);
    case StateType::Interpolated: return interpolated_state(c.state.t, c.state.phi, M);
    case StateType::PotentialGround: {
      PotentialSpec v = c.state.potential.build();
      return bound_states(v, M, c.state.particles, c.quadrature).states;
    }
    case StateType::Coherent: {
      HOExpansion e = coherent_state({c.state.w_re, c.state.w_im}, M);
      return SlaterState(e.coeffs.transpose());
    }
  }
  throw ConfigError("unsupported state");
}

}  // namespace psesk::cli
