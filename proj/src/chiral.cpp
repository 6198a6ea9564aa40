#include "psesk/chiral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "psesk/errors.hpp"
#include "psesk/overlap.hpp"
#include "psesk/parallel.hpp"

namespace psesk {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double golden_section(F f, double a, double b, double tol, double* fmin) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  if (fmin) *fmin = f(x);
  return x;
}

CMatrix lowdin(const CMatrix& a) {
  if (a.rows() == 0) return a;
  CMatrix s = a * a.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
  RVector inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  CMatrix x = es.eigenvectors() * inv_sqrt.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return x * a;
}

}  // namespace

CMatrix inversion_matrix(const SlaterState& state) {
  const CMatrix& a = state.coeffs;
  CMatrix signed_a = a;
  for (int k = 1; k < state.basis_size(); k += 2) signed_a.col(k) = -signed_a.col(k);
  return a.conjugate() * signed_a.transpose();
}

ParitySortedState parity_sort(const SlaterState& state, double tol) {
  state.require_orthonormal();
  const int N = state.particles();
  const int M = state.basis_size();
  CMatrix inv = inversion_matrix(state);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (inv + inv.adjoint()), Eigen::EigenvaluesOnly);
  int n_even = 0;
  for (int i = 0; i < N; ++i) {
    double ev = es.eigenvalues()[i];
    if (std::fabs(ev - 1.0) <= tol) {
      ++n_even;
    } else if (std::fabs(ev + 1.0) > tol) {
      throw Error(ErrorCode::NotInversionSymmetric,
                  "inversion matrix eigenvalue " + std::to_string(ev) + " is not +-1");
    }
  }
  const int n_odd = N - n_even;
  // Pivoted parity parts of the input rows, kept in input order.
  auto group = [&](int sign, int count) -> CMatrix {
    if (count == 0) return CMatrix(0, M);
    CMatrix parts = state.coeffs;
    for (int k = (sign > 0 ? 1 : 0); k < M; k += 2) parts.col(k).setZero();
    Eigen::ColPivHouseholderQR<CMatrix> qr(parts.transpose());
    std::vector<int> pick;
    for (int i = 0; i < count; ++i) pick.push_back(qr.colsPermutation().indices()[i]);
    std::sort(pick.begin(), pick.end());
    CMatrix rows(count, M);
    for (int i = 0; i < count; ++i) rows.row(i) = parts.row(pick[i]);
    return lowdin(rows);
  };
  ParitySortedState ps;
  ps.n_even = n_even;
  ps.n_odd = n_odd;
  ps.coeffs.resize(N, M);
  if (n_even > 0) ps.coeffs.topRows(n_even) = group(+1, n_even);
  if (n_odd > 0) ps.coeffs.bottomRows(n_odd) = group(-1, n_odd);
  ps.parity.assign(n_even, 1);
  ps.parity.insert(ps.parity.end(), n_odd, -1);
  return ps;
}

ChiralBlock chiral_block(const ParitySortedState& ps, double theta) {
  if (ps.n_even == 0 || ps.n_odd == 0)
    throw Error(ErrorCode::EmptyBlock, "chiral block needs both parity sectors occupied");
  const int M = static_cast<int>(ps.coeffs.cols());
  auto table = shared_overlap_table(M);
  CMatrix be = ps.coeffs.topRows(ps.n_even);
  CMatrix bo = ps.coeffs.bottomRows(ps.n_odd);
  for (int n = 0; n < M; ++n) {
    cplx ph = std::polar(1.0, n * theta);
    be.col(n) *= ph;
    bo.col(n) *= ph;
  }
  ChiralBlock out;
  out.theta = theta;
  out.m_theta = be.conjugate() * table->topLeftCorner(M, M).cast<cplx>() * bo.transpose();
  return out;
}

CMatrix chiral_offdiagonal(const ParitySortedState& ps, double theta) {
  CMatrix o = rotated_overlap(ps.state(), theta).entries;
  return 2.0 * o - CMatrix::Identity(o.rows(), o.cols());
}

cplx chiral_determinant(const ParitySortedState& ps, double theta) {
  if (ps.n_even != ps.n_odd)
    throw Error(ErrorCode::DimensionMismatch, "determinant needs N_e = N_o");
  return chiral_block(ps, theta).m_theta.determinant();
}

WindingResult winding_number(const ParitySortedState& ps, int grid_size, int grid_cap) {
  if (ps.n_even == 0 || ps.n_odd == 0)
    throw Error(ErrorCode::EmptyBlock, "winding number needs both parity sectors occupied");
  if (ps.n_even != ps.n_odd) throw Error(ErrorCode::DimensionMismatch, "winding number needs N_e = N_o");
  if (grid_size < 2) throw Error(ErrorCode::InvalidParameter, "winding grid too small");
  int K = grid_size;
  for (;;) {
    std::vector<cplx> det(static_cast<std::size_t>(K) + 1);
    parallel_for(det.size(), [&](std::size_t k) { det[k] = chiral_determinant(ps, kPi * double(k) / K); });
    double min_abs = std::abs(det[0]);
    for (const auto& d : det) min_abs = std::min(min_abs, std::abs(d));
    if (min_abs < kGapClosedTol)
      throw Error(ErrorCode::GapClosed, "|det m| = " + std::to_string(min_abs) + " on the winding grid");
    double total = 0.0, worst = 0.0;
    for (int k = 0; k < K; ++k) {
      double step = std::arg(det[k + 1] / det[k]);
      total += step;
      worst = std::max(worst, std::fabs(step));
    }
    if (worst >= 0.5 * kPi) {
      if (2 * K > grid_cap)
        throw Error(ErrorCode::GridTooCoarse, "phase increments stay above pi/2 at K = " + std::to_string(K));
      K *= 2;
      continue;
    }
    WindingResult r;
    r.raw = total / kPi;
    r.nu = static_cast<int>(std::lround(r.raw));
    r.grid_used = K;
    r.min_abs_det = min_abs;
    return r;
  }
}

int flat_band_count(const ParitySortedState& ps) { return std::abs(ps.n_even - ps.n_odd); }

std::vector<double> detect_gap_closings(const ParitySortedState& ps, const std::vector<double>& thetas) {
  if (ps.n_even != ps.n_odd) throw Error(ErrorCode::DimensionMismatch, "gap closings need N_e = N_o");
  const std::size_t K = thetas.size();
  std::vector<double> a(K);
  parallel_for(K, [&](std::size_t k) { a[k] = std::abs(chiral_determinant(ps, thetas[k])); });
  std::vector<double> events;
  if (K == 0) return events;
  const double amax = *std::max_element(a.begin(), a.end());
  auto f = [&](double th) { return std::abs(chiral_determinant(ps, th)); };
  for (std::size_t k = 0; k < K; ++k) {
    bool left_ok = k == 0 || a[k] <= a[k - 1];
    bool right_ok = k + 1 == K || a[k] <= a[k + 1];
    if (!left_ok || !right_ok || !(a[k] < 0.5 * amax)) continue;
    double lo = thetas[k == 0 ? 0 : k - 1];
    double hi = thetas[k + 1 == K ? K - 1 : k + 1];
    double fmin = a[k];
    double th = thetas[k];
    if (hi > lo) th = golden_section(f, lo, hi, 1e-10, &fmin);
    if (fmin < kClosingThreshold) {
      if (events.empty() || std::fabs(th - events.back()) > 1e-6) events.push_back(th);
    }
  }
  return events;
}

SlaterState interpolated_state(double t, double phi, int M) {
  if (M < 3) throw Error(ErrorCode::InvalidParameter, "interpolated state needs M >= 3");
  CMatrix c = CMatrix::Zero(2, M);
  c(0, 0) = std::cos(0.5 * kPi * t);
  c(0, 2) = std::polar(std::sin(0.5 * kPi * t), -phi);
  c(1, 1) = 1.0;
  return SlaterState(c);
}

double minimize_abs_det(const ParitySortedState& ps, double* min_value, int samples) {
  std::vector<double> a(static_cast<std::size_t>(samples));
  parallel_for(a.size(), [&](std::size_t k) {
    a[k] = std::abs(chiral_determinant(ps, kPi * double(k) / samples));
  });
  std::size_t best = std::min_element(a.begin(), a.end()) - a.begin();
  const double h = kPi / samples;
  double c = best * h;
  auto f = [&](double th) { return std::abs(chiral_determinant(ps, th)); };
  double fmin = 0.0;
  double th = golden_section(f, c - h, c + h, 1e-10, &fmin);
  th = std::fmod(th, kPi);
  if (th < 0) th += kPi;
  if (min_value) *min_value = fmin;
  return th;
}

GapTransition locate_gap_transition(double phi, double t0, double t1, double dt) {
  auto nu_at = [&](double t) -> std::optional<int> {
    auto ps = parity_sort(interpolated_state(t, phi));
    try {
      return winding_number(ps).nu;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::GapClosed || e.code() == ErrorCode::GridTooCoarse) return std::nullopt;
      throw;
    }
  };
  GapTransition g;
  const int steps = static_cast<int>(std::lround((t1 - t0) / dt));
  std::optional<int> prev = nu_at(t0);
  if (!prev) throw Error(ErrorCode::GapClosed, "gap closed at the start of the t scan");
  for (int k = 1; k <= steps; ++k) {
    double t = t0 + k * dt;
    std::optional<int> cur = nu_at(t);
    if (cur && *cur == *prev) continue;
    g.found = true;
    g.t_lo = t - dt;
    g.t_hi = t;
    g.nu_before = *prev;
    auto depth = [&](double tt) {
      double v = 0.0;
      minimize_abs_det(parity_sort(interpolated_state(tt, phi)), &v);
      return v;
    };
    g.t_star = golden_section(depth, g.t_lo, g.t_hi, 1e-10, nullptr);
    if (cur) {
      g.nu_after = *cur;
    } else {
      auto after = nu_at(std::min(t + dt, t1));
      g.nu_after = after ? *after : *prev;
    }
    g.theta_star = minimize_abs_det(parity_sort(interpolated_state(g.t_star, phi)), &g.min_abs_det);
    return g;
  }
  return g;
}

}  // namespace psesk
