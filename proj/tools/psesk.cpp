#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

void add_common(CLI::App* sub, std::string& config, psesk::cli::Overrides& f) {
  sub->add_option("--config", config, "JSON config file");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--theta-points", f.theta_points, "theta grid size K (even, >= 16)");
  sub->add_option("--basis", f.basis, "HO basis size M");
  sub->add_option("--format", f.format, "dataset format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_flag("--gnuplot", f.gnuplot, "also write gnuplot data files");
  sub->add_option("--quadrature", f.quadrature, "Gauss-Hermite order for potential matrices");
}

void add_state(CLI::App* sub, psesk::cli::Overrides& f) {
  sub->add_option("--occupied", f.occupied, "occupied HO indices, e.g. 0,1,2,3");
  sub->add_option("--t", f.t, "interpolation parameter t");
  sub->add_option("--phi", f.phi, "interpolation phase phi");
  sub->add_option("--potential", f.potential, "potential kind for a potential ground state");
  sub->add_option("--expr", f.expression, "custom potential expression in x");
  sub->add_option("--particles", f.particles, "particle number N for a potential ground state");
  sub->add_option("--coherent", f.coherent, "coherent state parameter w as re,im");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space entanglement spectra of free-fermion Slater determinants"};
  app.require_subcommand(1);
  std::string config;
  psesk::cli::Overrides f;

  auto* spectrum = app.add_subcommand("spectrum", "entanglement spectrum over theta in [0, 2pi)");
  add_common(spectrum, config, f);
  add_state(spectrum, f);

  auto* winding = app.add_subcommand("winding", "chiral winding number nu_E");
  add_common(winding, config, f);
  add_state(winding, f);

  auto* surface = app.add_subcommand("entropy-surface", "entropy over (t, theta) for the interpolated family");
  add_common(surface, config, f);
  add_state(surface, f);
  surface->add_option("--t-start", f.t_start, "first t");
  surface->add_option("--t-stop", f.t_stop, "last t");
  surface->add_option("--t-step", f.t_step, "t spacing");

  auto* wigner = app.add_subcommand("wigner", "Wigner function of a state on a phase-space grid");
  add_common(wigner, config, f);
  add_state(wigner, f);
  wigner->add_option("--rotation", f.rotation, "rotate the state by this angle first");

  auto* solve = app.add_subcommand("solve-potential", "bound states of a 1D well in the HO basis");
  add_common(solve, config, f);
  solve->add_option("--potential", f.potential, "sho, anharmonic, double_well, poschl_teller, rosen_morse, custom");
  solve->add_option("--expr", f.expression, "custom potential expression in x");
  solve->add_option("--levels", f.levels, "number of bound states");

  auto* frft = app.add_subcommand("frft-check", "fractional Fourier transform oracle suite");
  add_common(frft, config, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return psesk::cli::kExitConfig;
  }

  std::string command = app.get_subcommands().front()->get_name();
  psesk::cli::RunConfig cfg;
  try {
    cfg = psesk::cli::load_config(command, config, f);
  } catch (const psesk::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psesk::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return psesk::cli::kExitConfig;
  }
  return psesk::cli::run_command(cfg, std::cout, std::cerr);
}
