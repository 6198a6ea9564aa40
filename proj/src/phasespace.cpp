#include "psesk/phasespace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "psesk/errors.hpp"
#include "psesk/parallel.hpp"
#include "psesk/specfun.hpp"

namespace psesk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

// theta reduced to (-pi, pi]
double reduce_angle(double theta) {
  double r = std::remainder(theta, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double distance_to_pi_multiple(double theta) { return std::fabs(std::remainder(theta, kPi)); }

std::vector<double> trapezoid_weights(const Grid1D& g) {
  std::vector<double> w(static_cast<std::size_t>(g.n), g.step());
  if (g.n > 1) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

void check_edges(const std::vector<cplx>& s, double tol) {
  if (s.empty()) throw Error(ErrorCode::InvalidParameter, "empty sample vector");
  double peak = 0.0;
  for (const auto& v : s) peak = std::max(peak, std::abs(v));
  double edge = std::max(std::abs(s.front()), std::abs(s.back()));
  if (edge > tol * std::max(1.0, peak))
    throw Error(ErrorCode::EdgeLeakage, "samples do not decay at the grid edges (|edge| = " + std::to_string(edge) + ")");
}

std::vector<cplx> apply_kernel(const std::vector<cplx>& s, const Grid1D& g, double theta) {
  std::vector<cplx> out(s.size());
  const double h = g.step();
  parallel_for(s.size(), [&](std::size_t i) {
    double x = g.at(static_cast<int>(i));
    cplx acc = 0.0;
    for (int j = 0; j < g.n; ++j) acc += frft_kernel(theta, x, g.at(j)) * s[j];
    out[i] = h * acc;
  });
  return out;
}

}  // namespace

std::vector<double> Grid1D::points() const {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = at(i);
  return v;
}

cplx WignerField::integral() const {
  auto wx = trapezoid_weights(x_grid);
  auto wp = trapezoid_weights(p_grid);
  cplx s = 0.0;
  for (int i = 0; i < x_grid.n; ++i)
    for (int j = 0; j < p_grid.n; ++j) s += wx[i] * wp[j] * values(i, j);
  return s / (2.0 * kPi);
}

cplx frft_kernel(double theta, cplx x, cplx y) {
  if (distance_to_pi_multiple(theta) < kDegenerateAngleTol)
    throw Error(ErrorCode::DegenerateAngle, "kernel is distributional at multiples of pi");
  double r = reduce_angle(theta);
  double s = std::sin(r), c = std::cos(r);
  double phase = 0.25 * kPi * (s > 0 ? 1.0 : -1.0) - 0.5 * r;
  cplx arg = -0.5 * kI * ((c / s) * (x * x + y * y) - 2.0 * x * y / s);
  return std::polar(1.0 / std::sqrt(2.0 * kPi * std::fabs(s)), phase) * std::exp(arg);
}

cplx frft_kernel(double theta, double x, double y) { return frft_kernel(theta, cplx(x), cplx(y)); }

HOExpansion frft_ho(const HOExpansion& coeffs, double theta) {
  HOExpansion out = coeffs;
  for (int n = 0; n < out.truncation(); ++n) out.coeffs[n] *= std::polar(1.0, n * theta);
  return out;
}

std::vector<cplx> frft_direct(const std::vector<cplx>& samples, const Grid1D& grid, double theta,
                              double edge_tol) {
  if (static_cast<int>(samples.size()) != grid.n)
    throw Error(ErrorCode::DimensionMismatch, "frft_direct: sample count differs from grid size");
  check_edges(samples, edge_tol);
  double r = reduce_angle(theta);
  if (std::fabs(r) < kDegenerateAngleTol) return samples;
  if (kPi - std::fabs(r) < kDegenerateAngleTol) {
    if (std::fabs(grid.lo + grid.hi) > 1e-12 * std::max(1.0, grid.hi))
      throw Error(ErrorCode::InvalidParameter, "inversion needs a grid symmetric about the origin");
    return std::vector<cplx>(samples.rbegin(), samples.rend());
  }
  if (std::fabs(std::sin(r)) < 0.5) {
    auto half = apply_kernel(samples, grid, 0.5 * kPi);
    return apply_kernel(half, grid, r - 0.5 * kPi);
  }
  return apply_kernel(samples, grid, r);
}

CMatrix wigner_matrix(int M, double x, double p) {
  CMatrix w = CMatrix::Zero(M, M);
  const cplx z = cplx(x, p) / std::sqrt(2.0);
  const double r2 = std::norm(z);
  const double y = 4.0 * r2;
  const double mod = std::abs(z);
  const double ang = std::arg(z);
  std::vector<double> lag(static_cast<std::size_t>(M));
  for (int nu = 0; nu < M; ++nu) {
    int count = M - nu;
    if (nu > 0 && mod == 0.0) break;
    lag[0] = 1.0;
    if (count > 1) lag[1] = 1.0 + nu - y;
    for (int k = 1; k + 1 < count; ++k)
      lag[k + 1] = ((2.0 * k + 1.0 + nu - y) * lag[k] - (k + nu) * lag[k - 1]) / (k + 1.0);
    const cplx ph = std::polar(1.0, -nu * ang);
    const double log_z = nu > 0 ? nu * std::log(2.0 * mod) : 0.0;
    for (int m = 0; m < count; ++m) {
      int n = m + nu;
      double mag = std::exp(0.5 * (log_factorial(m) - log_factorial(n)) + log_z - 2.0 * r2);
      double sgn = (m % 2 == 0) ? 2.0 : -2.0;
      cplx v = sgn * mag * lag[m] * ph;
      w(m, n) = v;
      if (nu > 0) w(n, m) = std::conj(v);
    }
  }
  return w;
}

cplx wigner_mn(int m, int n, double x, double p) {
  if (m < 0 || n < 0) throw Error(ErrorCode::DomainError, "wigner_mn: negative index");
  if (n < m) return std::conj(wigner_mn(n, m, x, p));
  const int nu = n - m;
  const cplx z = cplx(x, p) / std::sqrt(2.0);
  const double r2 = std::norm(z);
  if (nu > 0 && r2 == 0.0) return 0.0;
  double log_mag = 0.5 * (log_factorial(m) - log_factorial(n)) - 2.0 * r2;
  if (nu > 0) log_mag += nu * std::log(2.0 * std::abs(z));
  double sgn = (m % 2 == 0) ? 2.0 : -2.0;
  return sgn * std::exp(log_mag) * assoc_laguerre(m, nu, 4.0 * r2) * std::polar(1.0, -nu * std::arg(z));
}

cplx wigner_at(const HOExpansion& state, double x, double p) {
  CMatrix w = wigner_matrix(state.truncation(), x, p);
  return (state.coeffs.adjoint() * w * state.coeffs)(0, 0);
}

CMatrix one_body_density(const SlaterState& state) { return state.coeffs.adjoint() * state.coeffs; }

WignerField wigner_of_density(const CMatrix& rho, const PhaseGrid& grid, bool hermitian) {
  if (rho.rows() != rho.cols()) throw Error(ErrorCode::DimensionMismatch, "density matrix must be square");
  const int M = static_cast<int>(rho.rows());
  WignerField f;
  f.x_grid = grid.x;
  f.p_grid = grid.p;
  f.is_diagonal = hermitian;
  f.values.resize(grid.x.n, grid.p.n);
  parallel_for(static_cast<std::size_t>(grid.x.n), [&](std::size_t i) {
    double x = grid.x.at(static_cast<int>(i));
    for (int j = 0; j < grid.p.n; ++j) {
      CMatrix w = wigner_matrix(M, x, grid.p.at(j));
      f.values(static_cast<Eigen::Index>(i), j) = rho.cwiseProduct(w).sum();
    }
  });
  return f;
}

WignerField wigner_of_state(const HOExpansion& state, const PhaseGrid& grid) {
  if (state.norm2() > 1.0 + 1e-8) throw Error(ErrorCode::InvalidParameter, "wigner_of_state: norm exceeds 1");
  CMatrix rho = state.coeffs.conjugate() * state.coeffs.transpose();
  return wigner_of_density(rho, grid, true);
}

WignerField wigner_cross(const HOExpansion& phi, const HOExpansion& psi, const PhaseGrid& grid) {
  if (phi.truncation() != psi.truncation())
    throw Error(ErrorCode::DimensionMismatch, "wigner_cross: expansions differ in size");
  CMatrix rho = phi.coeffs.conjugate() * psi.coeffs.transpose();
  return wigner_of_density(rho, grid, false);
}

WignerField wigner_pure(const std::vector<cplx>& samples, const Grid1D& sample_grid, const PhaseGrid& grid,
                        double edge_tol) {
  if (static_cast<int>(samples.size()) != sample_grid.n)
    throw Error(ErrorCode::DimensionMismatch, "wigner_pure: sample count differs from grid size");
  check_edges(samples, edge_tol);
  const double h = sample_grid.step();
  const int S = sample_grid.n;
  std::vector<int> center(static_cast<std::size_t>(grid.x.n));
  for (int i = 0; i < grid.x.n; ++i) {
    double u = (grid.x.at(i) - sample_grid.lo) / h;
    long c = std::lround(u);
    if (std::fabs(u - c) > 1e-9 || c < 0 || c >= S)
      throw Error(ErrorCode::InvalidParameter, "wigner_pure: phase-space x grid not aligned with the sample grid");
    center[i] = static_cast<int>(c);
  }
  WignerField f;
  f.x_grid = grid.x;
  f.p_grid = grid.p;
  f.is_diagonal = true;
  f.values.resize(grid.x.n, grid.p.n);
  parallel_for(static_cast<std::size_t>(grid.x.n), [&](std::size_t i) {
    int c = center[i];
    int kmax = std::min(c, S - 1 - c);
    std::vector<cplx> g(static_cast<std::size_t>(2 * kmax + 1));
    for (int k = -kmax; k <= kmax; ++k) g[k + kmax] = std::conj(samples[c - k]) * samples[c + k];
    for (int j = 0; j < grid.p.n; ++j) {
      double p = grid.p.at(j);
      cplx acc = 0.0;
      for (int k = -kmax; k <= kmax; ++k) acc += std::polar(1.0, -2.0 * p * k * h) * g[k + kmax];
      f.values(static_cast<Eigen::Index>(i), j) = 2.0 * h * acc;
    }
  });
  return f;
}

HOExpansion coherent_state(cplx w, int M) {
  CVector c = CVector::Zero(M);
  const double a = std::abs(w);
  if (a == 0.0) {
    c[0] = 1.0;
    return HOExpansion(c);
  }
  for (int n = 0; n < M; ++n) {
    double mag = std::exp(-0.5 * a * a + n * std::log(a) - 0.5 * log_factorial(n));
    c[n] = std::polar(mag, n * std::arg(w));
  }
  return HOExpansion(c);
}

WignerField coherent_wigner(cplx w, const PhaseGrid& grid) {
  WignerField f;
  f.x_grid = grid.x;
  f.p_grid = grid.p;
  f.is_diagonal = true;
  f.values.resize(grid.x.n, grid.p.n);
  for (int i = 0; i < grid.x.n; ++i)
    for (int j = 0; j < grid.p.n; ++j) {
      cplx z = cplx(grid.x.at(i), grid.p.at(j)) / std::sqrt(2.0);
      f.values(i, j) = 2.0 * std::exp(-2.0 * std::norm(z - w));
    }
  return f;
}

std::vector<cplx> marginal_position_complex(const WignerField& field) {
  auto wp = trapezoid_weights(field.p_grid);
  std::vector<cplx> out(static_cast<std::size_t>(field.x_grid.n));
  for (int i = 0; i < field.x_grid.n; ++i) {
    cplx s = 0.0;
    for (int j = 0; j < field.p_grid.n; ++j) s += wp[j] * field.values(i, j);
    out[i] = s / (2.0 * kPi);
  }
  return out;
}

std::vector<double> marginal_position(const WignerField& field) {
  auto c = marginal_position_complex(field);
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = c[i].real();
  return out;
}

std::vector<cplx> sample_state(const HOExpansion& state, const Grid1D& grid) {
  std::vector<cplx> s(static_cast<std::size_t>(grid.n));
  for (int i = 0; i < grid.n; ++i) s[i] = state.evaluate(grid.at(i));
  return s;
}

}  // namespace psesk
