#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psesk/hobasis.hpp"
#include "psesk/phasespace.hpp"
#include "psesk/potentials.hpp"

namespace psesk::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PotentialConfig {
  std::string kind = "sho";
  std::string expression;

  PotentialSpec build() const;
};

enum class StateType { HoSlater, Interpolated, PotentialGround, Coherent };

struct StateSpec {
  StateType type = StateType::HoSlater;
  std::vector<int> occupied{0};
  double t = 0.0;
  double phi = 0.0;
  PotentialConfig potential;
  int particles = 1;
  double w_re = 0.0;
  double w_im = 0.0;
};

struct RunConfig {
  std::string command;
  StateSpec state;
  int basis = 0;  // 0 picks a default from the state
  int theta_points = 256;
  int quadrature = 0;
  double t_start = 0.0;
  double t_stop = 1.0;
  double t_step = 0.01;
  PhaseGrid grid;
  double rotation = 0.0;
  PotentialConfig potential;
  int levels = 8;
  std::string out = ".";
  std::string format = "csv";
  bool gnuplot = false;

  int resolved_basis() const;
  nlohmann::json to_json() const;
};

// Flags parsed from the command line; set fields override the config file.
struct Overrides {
  std::optional<std::string> out, format, potential, expression, occupied, coherent;
  std::optional<int> theta_points, basis, particles, levels, quadrature;
  std::optional<double> t, phi, t_start, t_stop, t_step, rotation;
  bool gnuplot = false;
};

RunConfig load_config(const std::string& command, const std::string& path, const Overrides& flags);
RunConfig config_from_json(const std::string& command, const nlohmann::json& doc);
void apply_overrides(RunConfig& cfg, const Overrides& flags);
void validate(const RunConfig& cfg);

SlaterState build_slater_state(const RunConfig& cfg);

std::vector<int> parse_int_list(const std::string& text);

}  // namespace psesk::cli
