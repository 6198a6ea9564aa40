#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "cli/io.hpp"
#include "psesk/chiral.hpp"
#include "psesk/entanglement.hpp"
#include "psesk/errors.hpp"
#include "psesk/overlap.hpp"
#include "psesk/parallel.hpp"
#include "psesk/phasespace.hpp"
#include "psesk/potentials.hpp"

namespace psesk::cli {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPlotClip = 30.0;

std::string path_in(const RunConfig& cfg, const std::string& name) { return join_path(cfg.out, name); }

json base_meta(const RunConfig& cfg) { return json{{"config", cfg.to_json()}}; }

void save_meta(const RunConfig& cfg, const std::string& name, const json& meta) {
  write_json(path_in(cfg, name + ".meta.json"), meta);
}

std::string fmt(double v) { return format_double(v); }

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  ensure_directory(cfg.out);
  SlaterState state = build_slater_state(cfg);
  const int K = cfg.theta_points;
  auto thetas = uniform_grid(K, 2.0 * kPi);
  PSESDataset d = pses_sweep(state, thetas);

  json meta = base_meta(cfg);
  meta["N"] = state.particles();
  meta["M"] = state.basis_size();
  double gap_min = std::numeric_limits<double>::infinity();
  std::size_t gap_at = 0;
  for (std::size_t k = 0; k < d.gap.size(); ++k)
    if (d.gap[k] < gap_min) {
      gap_min = d.gap[k];
      gap_at = k;
    }
  meta["gap_min"] = json_double(gap_min);
  meta["gap_min_theta"] = thetas[gap_at];
  try {
    ParitySortedState ps = parity_sort(state);
    meta["inversion_symmetric"] = true;
    meta["N_e"] = ps.n_even;
    meta["N_o"] = ps.n_odd;
    meta["flat_bands"] = flat_band_count(ps);
    meta["nu_E"] = nullptr;
    if (ps.n_even == ps.n_odd) {
      try {
        meta["nu_E"] = winding_number(ps).nu;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GapClosed && e.code() != ErrorCode::GridTooCoarse) throw;
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotInversionSymmetric) throw;
    meta["inversion_symmetric"] = false;
    double asym = 0.0;
    for (const auto& lv : d.energies) asym = std::max(asym, negation_asymmetry(lv));
    meta["chiral_asymmetry"] = asym;
  }

  if (cfg.format == "csv") {
    CsvWriter spec({"theta", "level", "epsilon"});
    CsvWriter ent({"theta", "entropy", "gap"});
    for (int k = 0; k < K; ++k) {
      for (std::size_t a = 0; a < d.energies[k].size(); ++a)
        spec.row({fmt(thetas[k]), std::to_string(a), fmt(d.energies[k][a])});
      ent.row({fmt(thetas[k]), fmt(d.entropy[k]), fmt(d.gap[k])});
    }
    spec.save(path_in(cfg, "spectrum.csv"));
    ent.save(path_in(cfg, "entropy.csv"));
    meta["files"] = {{"spectrum", "spectrum.csv"}, {"entropy", "entropy.csv"}};
  } else {
    json data{{"theta", thetas}, {"entropy", d.entropy}};
    json levels = json::array(), gaps = json::array();
    for (int k = 0; k < K; ++k) {
      json row = json::array();
      for (double e : d.energies[k]) row.push_back(json_double(e));
      levels.push_back(row);
      gaps.push_back(json_double(d.gap[k]));
    }
    data["epsilon"] = levels;
    data["gap"] = gaps;
    write_json(path_in(cfg, "spectrum.json"), data);
    meta["files"] = {{"spectrum", "spectrum.json"}, {"entropy", "spectrum.json"}};
  }
  if (cfg.gnuplot) {
    std::ostringstream g;
    g << "# theta epsilon_0 ... (clipped at +-" << kPlotClip << ")\n";
    for (int k = 0; k < K; ++k) {
      g << fmt(thetas[k]);
      for (double e : d.energies[k]) g << ' ' << fmt(std::clamp(e, -kPlotClip, kPlotClip));
      g << '\n';
    }
    write_text(path_in(cfg, "spectrum.dat"), g.str());
  }
  save_meta(cfg, "spectrum", meta);
  out << "spectrum: " << K << " angles x " << state.particles() << " levels, gap min " << fmt(gap_min)
      << " at theta " << fmt(thetas[gap_at]) << "\n";
  return kExitOk;
}

int cmd_winding(const RunConfig& cfg, std::ostream& out) {
  ensure_directory(cfg.out);
  SlaterState state = build_slater_state(cfg);
  ParitySortedState ps = parity_sort(state);
  json report{{"N_e", ps.n_even}, {"N_o", ps.n_odd}, {"flat_bands", flat_band_count(ps)}};
  json meta = base_meta(cfg);
  if (ps.n_even != ps.n_odd || ps.n_even == 0) {
    report["nu_E"] = nullptr;
    write_json(path_in(cfg, "winding.json"), report);
    meta["report"] = report;
    save_meta(cfg, "winding", meta);
    out << "nu_E undefined (N_e = " << ps.n_even << ", N_o = " << ps.n_odd << "); flat bands: "
        << flat_band_count(ps) << "\n";
    return kExitOk;
  }
  auto grid = uniform_grid(cfg.theta_points, kPi);
  try {
    WindingResult w = winding_number(ps, cfg.theta_points);
    report["nu_E"] = w.nu;
    report["K_used"] = w.grid_used;
    report["min_abs_det"] = w.min_abs_det;
    report["closings"] = detect_gap_closings(ps, grid);
    write_json(path_in(cfg, "winding.json"), report);
    meta["report"] = report;
    save_meta(cfg, "winding", meta);
    out << "nu_E = " << w.nu << "\n";
    return kExitOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::GapClosed && e.code() != ErrorCode::GridTooCoarse) throw;
    double min_det = 0.0;
    minimize_abs_det(ps, &min_det);
    report["nu_E"] = nullptr;
    report["K_used"] = cfg.theta_points;
    report["min_abs_det"] = min_det;
    report["closings"] = detect_gap_closings(ps, grid);
    report["error"] = e.name();
    write_json(path_in(cfg, "winding.json"), report);
    meta["report"] = report;
    save_meta(cfg, "winding", meta);
    out << "gap closed; closings at theta =";
    for (double th : report["closings"]) out << ' ' << fmt(th);
    out << "\n";
    return kExitGapClosed;
  }
}

int cmd_entropy_surface(const RunConfig& cfg, std::ostream& out) {
  if (cfg.state.type != StateType::Interpolated) throw ConfigError("entropy-surface needs an interpolated state");
  ensure_directory(cfg.out);
  const int T = static_cast<int>(std::floor((cfg.t_stop - cfg.t_start) / cfg.t_step + 1e-9)) + 1;
  const int K = cfg.theta_points;
  auto thetas = uniform_grid(K, 2.0 * kPi);
  const int M = cfg.resolved_basis();
  std::vector<double> ts(T);
  for (int i = 0; i < T; ++i) ts[i] = cfg.t_start + i * cfg.t_step;
  std::vector<std::vector<double>> s(T, std::vector<double>(K));
  parallel_for(static_cast<std::size_t>(T) * K, [&](std::size_t idx) {
    std::size_t i = idx / K, k = idx % K;
    SlaterState st = interpolated_state(ts[i], cfg.state.phi, M);
    s[i][k] = entanglement_entropy(schmidt_values(rotated_overlap(st, thetas[k])));
  });
  double best = -1.0;
  int bi = 0, bk = 0;
  for (int i = 0; i < T; ++i)
    for (int k = 0; k < K; ++k)
      if (s[i][k] > best) {
        best = s[i][k];
        bi = i;
        bk = k;
      }
  if (cfg.format == "csv") {
    CsvWriter w({"t", "theta", "entropy"});
    for (int i = 0; i < T; ++i)
      for (int k = 0; k < K; ++k) w.row({fmt(ts[i]), fmt(thetas[k]), fmt(s[i][k])});
    w.save(path_in(cfg, "entropy_surface.csv"));
  } else {
    write_json(path_in(cfg, "entropy_surface.json"), json{{"t", ts}, {"theta", thetas}, {"entropy", s}});
  }
  if (cfg.gnuplot) {
    std::ostringstream g;
    for (int i = 0; i < T; ++i) {
      for (int k = 0; k < K; ++k) g << fmt(ts[i]) << ' ' << fmt(thetas[k]) << ' ' << fmt(s[i][k]) << '\n';
      g << '\n';
    }
    write_text(path_in(cfg, "entropy_surface.dat"), g.str());
  }
  json meta = base_meta(cfg);
  meta["argmax"] = {{"t", ts[bi]}, {"theta", thetas[bk]}, {"entropy", best}};
  save_meta(cfg, "entropy_surface", meta);
  out << "max entropy " << fmt(best) << " at t = " << fmt(ts[bi]) << ", theta = " << fmt(thetas[bk]) << "\n";
  return kExitOk;
}

int cmd_wigner(const RunConfig& cfg, std::ostream& out) {
  ensure_directory(cfg.out);
  SlaterState state = build_slater_state(cfg);
  const int M = state.basis_size();
  CMatrix b = state.coeffs;
  for (int n = 0; n < M; ++n) b.col(n) *= std::polar(1.0, n * cfg.rotation);
  WignerField f = wigner_of_density(one_body_density(SlaterState(b)), cfg.grid, true);
  const Grid1D& gx = f.x_grid;
  const Grid1D& gp = f.p_grid;
  Eigen::Index pi = 0, pj = 0;
  f.values.real().maxCoeff(&pi, &pj);
  if (cfg.format == "csv") {
    CsvWriter w({"x", "p", "w_re", "w_im"});
    for (int i = 0; i < gx.n; ++i)
      for (int j = 0; j < gp.n; ++j)
        w.row({fmt(gx.at(i)), fmt(gp.at(j)), fmt(f.values(i, j).real()), fmt(f.values(i, j).imag())});
    w.save(path_in(cfg, "wigner.csv"));
  } else {
    json re = json::array(), im = json::array();
    for (int i = 0; i < gx.n; ++i) {
      json r = json::array(), m = json::array();
      for (int j = 0; j < gp.n; ++j) {
        r.push_back(f.values(i, j).real());
        m.push_back(f.values(i, j).imag());
      }
      re.push_back(r);
      im.push_back(m);
    }
    write_json(path_in(cfg, "wigner.json"), json{{"x", gx.points()}, {"p", gp.points()}, {"w_re", re}, {"w_im", im}});
  }
  if (cfg.gnuplot) {
    std::ostringstream g;
    g << gx.n;
    for (int i = 0; i < gx.n; ++i) g << ' ' << fmt(gx.at(i));
    g << '\n';
    for (int j = 0; j < gp.n; ++j) {
      g << fmt(gp.at(j));
      for (int i = 0; i < gx.n; ++i) g << ' ' << fmt(f.values(i, j).real());
      g << '\n';
    }
    write_text(path_in(cfg, "wigner.dat"), g.str());
  }
  json meta = base_meta(cfg);
  meta["peak"] = {{"x", gx.at(static_cast<int>(pi))}, {"p", gp.at(static_cast<int>(pj))}, {"value", f.values(pi, pj).real()}};
  meta["integral"] = f.integral().real();
  meta["N"] = state.particles();
  save_meta(cfg, "wigner", meta);
  out << "wigner: peak " << fmt(f.values(pi, pj).real()) << " at (" << fmt(gx.at(static_cast<int>(pi))) << ", "
      << fmt(gp.at(static_cast<int>(pj))) << ")\n";
  return kExitOk;
}

int cmd_solve_potential(const RunConfig& cfg, std::ostream& out) {
  ensure_directory(cfg.out);
  PotentialSpec v = cfg.potential.build();
  const int M = cfg.basis > 0 ? cfg.basis : 100;
  BoundStateOptions opt;
  opt.check_convergence = true;
  BoundStateSet bs = bound_states(v, M, cfg.levels, cfg.quadrature, opt);
  auto par = parity_check(bs);
  if (cfg.format == "csv") {
    CsvWriter w({"n", "energy", "parity"});
    for (std::size_t n = 0; n < bs.energies.size(); ++n)
      w.row({std::to_string(n), fmt(bs.energies[n]), parity_name(par[n])});
    w.save(path_in(cfg, "energies.csv"));
    std::vector<std::string> header{"state"};
    for (int k = 0; k < M; ++k) {
      header.push_back("re_" + std::to_string(k));
      header.push_back("im_" + std::to_string(k));
    }
    CsvWriter c(header);
    for (int a = 0; a < bs.states.particles(); ++a) {
      std::vector<std::string> row{std::to_string(a)};
      for (int k = 0; k < M; ++k) {
        row.push_back(fmt(bs.states.coeffs(a, k).real()));
        row.push_back(fmt(bs.states.coeffs(a, k).imag()));
      }
      c.row(row);
    }
    c.save(path_in(cfg, "coefficients.csv"));
  } else {
    json states = json::array();
    for (int a = 0; a < bs.states.particles(); ++a) {
      json row = json::array();
      for (int k = 0; k < M; ++k) row.push_back({bs.states.coeffs(a, k).real(), bs.states.coeffs(a, k).imag()});
      states.push_back(row);
    }
    json parities = json::array();
    for (auto p : par) parities.push_back(parity_name(p));
    write_json(path_in(cfg, "energies.json"),
               json{{"energy", bs.energies}, {"parity", parities}, {"coefficients", states}});
  }
  json meta = base_meta(cfg);
  meta["basis"] = M;
  meta["quadrature"] = bs.quadrature_order;
  meta["convergence_delta"] = bs.convergence_delta;
  meta["converged"] = bs.converged;
  save_meta(cfg, "energies", meta);
  for (std::size_t n = 0; n < bs.energies.size(); ++n)
    out << n << ' ' << fmt(bs.energies[n]) << ' ' << parity_name(par[n]) << "\n";
  if (!bs.converged) out << "warning: levels differ from the reduced-basis solve by more than 1e-6\n";
  return kExitOk;
}

namespace {

struct CheckRow {
  std::string name;
  double error;
  double tol;
};

double kernel_composition_error(double a, double b) {
  const double c = 1.0 / std::tan(a) + 1.0 / std::tan(b);
  const cplx rot = std::polar(1.0, -0.25 * kPi * (c > 0 ? 1.0 : -1.0));
  const double L = 30.0, h = 0.005;
  const int n = static_cast<int>(2 * L / h);
  double worst = 0.0;
  for (auto [x, y] : {std::pair{0.3, -0.7}, std::pair{1.1, 0.4}, std::pair{-0.9, -1.3}}) {
    cplx acc = 0.0;
    for (int i = 0; i <= n; ++i) {
      cplx z = rot * (-L + i * h);
      acc += frft_kernel(a, cplx(x), z) * frft_kernel(b, z, cplx(y));
    }
    acc *= rot * h;
    worst = std::max(worst, std::abs(acc - frft_kernel(a + b, x, y)));
  }
  return worst;
}

}  // namespace

int cmd_frft_check(const RunConfig& cfg, std::ostream& out) {
  std::mt19937_64 rng(20240917);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> angle(0.05, 2.0 * kPi - 0.05);
  auto random_state = [&](int nmax) {
    CVector c(nmax + 1);
    for (auto& v : c) v = cplx(gauss(rng), gauss(rng));
    c /= c.norm();
    return HOExpansion(c);
  };
  const Grid1D grid{-12.0, 12.0, 961};
  std::vector<CheckRow> rows;

  double mod_err = 0.0;
  for (double th : {0.4, 1.3, 2.2, 3.9, 5.5})
    for (double x : {-2.0, 0.5, 3.0})
      for (double y : {-1.5, 0.0, 2.5}) {
        double expect = std::abs(cplx(1.0, -1.0 / std::tan(th))) / (2.0 * kPi);
        mod_err = std::max(mod_err, std::fabs(std::norm(frft_kernel(th, x, y)) - expect) / expect);
      }
  rows.push_back({"kernel modulus", mod_err, 1e-12});

  double unit = 0.0, group = 0.0;
  for (int r = 0; r < 12; ++r) {
    HOExpansion c = random_state(10);
    double a = angle(rng), b = angle(rng);
    unit = std::max(unit, std::fabs(frft_ho(c, a).coeffs.norm() - c.coeffs.norm()));
    group = std::max(group, (frft_ho(frft_ho(c, a), b).coeffs - frft_ho(c, a + b).coeffs).cwiseAbs().maxCoeff());
  }
  rows.push_back({"HO-path unitarity", unit, 1e-13});
  rows.push_back({"HO-path group law", group, 1e-13});

  double direct = 0.0, norm_err = 0.0, direct_group = 0.0;
  for (int r = 0; r < 12; ++r) {
    HOExpansion c = random_state(10);
    double th = angle(rng);
    auto s = sample_state(c, grid);
    auto d = frft_direct(s, grid, th);
    auto ref = sample_state(frft_ho(c, th), grid);
    double n0 = 0.0, n1 = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      direct = std::max(direct, std::abs(d[i] - ref[i]));
      n0 += std::norm(s[i]);
      n1 += std::norm(d[i]);
    }
    norm_err = std::max(norm_err, std::fabs(n1 - n0) * grid.step());
    if (r < 3) {
      double th2 = angle(rng);
      auto twice = frft_direct(d, grid, th2);
      auto once = frft_direct(s, grid, th + th2);
      for (int i = 0; i < grid.n; ++i) direct_group = std::max(direct_group, std::abs(twice[i] - once[i]));
    }
  }
  rows.push_back({"direct vs HO path", direct, 1e-5});
  rows.push_back({"direct norm", norm_err, 1e-6});
  rows.push_back({"direct group law", direct_group, 1e-5});

  double ft = 0.0;
  for (double a : {0.0, 1.0, -2.0}) {
    std::vector<cplx> s(grid.n);
    for (int i = 0; i < grid.n; ++i) s[i] = std::exp(-0.5 * (grid.at(i) - a) * (grid.at(i) - a));
    auto d = frft_direct(s, grid, 0.5 * kPi);
    for (int i = 0; i < grid.n; ++i) {
      double x = grid.at(i);
      cplx expect = std::polar(std::exp(-0.5 * x * x), x * a);
      ft = std::max(ft, std::abs(d[i] - expect));
    }
  }
  rows.push_back({"Fourier transform of Gaussians", ft, 1e-6});

  double comp = std::max(kernel_composition_error(0.7, 1.1), kernel_composition_error(2.3, 2.9));
  rows.push_back({"kernel composition", comp, 1e-6});

  bool ok = true;
  json report = json::array();
  out << "check                            max error      tolerance  result\n";
  for (const auto& r : rows) {
    bool pass = r.error <= r.tol;
    ok = ok && pass;
    char line[160];
    std::snprintf(line, sizeof line, "%-32s %-14.3e %-10.0e %s\n", r.name.c_str(), r.error, r.tol, pass ? "PASS" : "FAIL");
    out << line;
    report.push_back({{"check", r.name}, {"error", r.error}, {"tolerance", r.tol}, {"pass", pass}});
  }
  ensure_directory(cfg.out);
  json meta = base_meta(cfg);
  meta["checks"] = report;
  save_meta(cfg, "frft_check", meta);
  return ok ? kExitOk : kExitNumeric;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, out);
    if (cfg.command == "winding") return cmd_winding(cfg, out);
    if (cfg.command == "entropy-surface") return cmd_entropy_surface(cfg, out);
    if (cfg.command == "wigner") return cmd_wigner(cfg, out);
    if (cfg.command == "solve-potential") return cmd_solve_potential(cfg, out);
    if (cfg.command == "frft-check") return cmd_frft_check(cfg, out);
    err << "unknown command '" << cfg.command << "'\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << "\n";
    if (e.code() == ErrorCode::ParseError) return kExitConfig;
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace psesk::cli
