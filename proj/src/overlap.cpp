#include "psesk/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "psesk/errors.hpp"
#include "psesk/specfun.hpp"

namespace psesk {

double ho_halfspace_overlap(int m, int n) {
  if (m < 0 || n < 0) throw Error(ErrorCode::DomainError, "ho_halfspace_overlap: negative index");
  if ((m + n) % 2 == 0) return m == n ? 0.5 : 0.0;
  if (n < m) std::swap(m, n);
  const int nu = n - m;
  // sin(nu pi / 2) for odd nu
  const int s = ((nu - 1) / 2) % 2 == 0 ? 1 : -1;
  const int sign_m = m % 2 == 0 ? 1 : -1;
  SignedLog f = hyp2f1_terminating_exact(m, nu + 2, 2, nu + 1, 1, 2);
  if (f.sign == 0) return 0.0;
  double log_mag = 0.5 * (log_factorial(n) - log_factorial(m)) + 0.5 * nu * std::numbers::ln2 -
                   log_factorial(nu) + log_gamma_special(nu) - std::log(2.0 * std::numbers::pi) + f.log_abs;
  return s * sign_m * f.sign * std::exp(log_mag);
}

static RMatrix build_table(int M) {
  RMatrix t = RMatrix::Zero(M, M);
  for (int m = 0; m < M; ++m) {
    t(m, m) = 0.5;
    for (int n = m + 1; n < M; n += 2) {
      double v = ho_halfspace_overlap(m, n);
      t(m, n) = v;
      t(n, m) = v;
    }
  }
  return t;
}

std::shared_ptr<const RMatrix> shared_overlap_table(int M) {
  static std::mutex mu;
  static std::shared_ptr<const RMatrix> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table || table->rows() < M) {
    int size = std::max(M, 128);
    table = std::make_shared<const RMatrix>(build_table(size));
  }
  return table;
}

HOOverlapTable ho_overlap_table(int M) {
  if (M < 1) throw Error(ErrorCode::InvalidParameter, "ho_overlap_table: M must be positive");
  auto t = shared_overlap_table(M);
  return HOOverlapTable{t->topLeftCorner(M, M)};
}

double position_cutoff(int M) { return std::sqrt(4.0 * M) + 10.0; }

double overlap_quadrature_oracle(int m, int n, int Q) {
  if (m < 0 || n < 0) throw Error(ErrorCode::DomainError, "overlap_quadrature_oracle: negative index");
  if (Q == 0) Q = std::max(2 * (m + n), 16);
  const int M = std::max(m, n) + 1;
  const double cut = position_cutoff(M);
  const auto& gl = gauss_legendre_cached(Q);
  const int panels = static_cast<int>(std::ceil(cut));
  const double width = cut / panels;
  std::vector<double> phi(static_cast<std::size_t>(M));
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    double a = k * width;
    double part = 0.0;
    for (int q = 0; q < Q; ++q) {
      double x = a + 0.5 * width * (gl.nodes[q] + 1.0);
      ho_wavefunctions(M, x, phi.data());
      part += gl.weights[q] * phi[m] * phi[n];
    }
    sum += 0.5 * width * part;
  }
  return sum;
}

static CMatrix rotated_coeffs(const SlaterState& state, double theta) {
  const int M = state.basis_size();
  CMatrix b = state.coeffs;
  for (int n = 0; n < M; ++n) b.col(n) *= std::polar(1.0, n * theta);
  return b;
}

static OverlapMatrix rotated_with_sign(const SlaterState& state, double theta, bool complement) {
  const int M = state.basis_size();
  if (M < 1 || state.particles() < 1)
    throw Error(ErrorCode::DimensionMismatch, "rotated_overlap: empty state");
  if (M > 2 * kMaxBasis) throw Error(ErrorCode::DimensionMismatch, "rotated_overlap: basis too large");
  auto table = shared_overlap_table(M);
  RMatrix o = table->topLeftCorner(M, M);
  if (complement) {
    for (int m = 0; m < M; ++m)
      for (int n = 0; n < M; ++n)
        if ((m + n) % 2 == 1) o(m, n) = -o(m, n);
  }
  CMatrix b = rotated_coeffs(state, theta);
  OverlapMatrix out;
  out.kind = CutKind::Rotation;
  out.parameter = theta;
  out.entries = b.conjugate() * o.cast<cplx>() * b.transpose();
  return out;
}

OverlapMatrix rotated_overlap(const SlaterState& state, double theta) {
  return rotated_with_sign(state, theta, false);
}

OverlapMatrix rotated_overlap_complement(const SlaterState& state, double theta) {
  return rotated_with_sign(state, theta, true);
}

OverlapMatrix translated_overlap(const SlaterState& state, double t) {
  const int M = state.basis_size();
  const int N = state.particles();
  if (M < 1 || N < 1) throw Error(ErrorCode::DimensionMismatch, "translated_overlap: empty state");
  OverlapMatrix out;
  out.kind = CutKind::Translation;
  out.parameter = t;
  out.entries = CMatrix::Zero(N, N);
  const double cut = position_cutoff(M);
  const double a = std::max(t, -cut);
  if (a >= cut) return out;
  const int Q = std::max(32, M);
  const auto& gl = gauss_legendre_cached(Q);
  const int panels = static_cast<int>(std::ceil(cut - a));
  const double width = (cut - a) / panels;
  const int P = panels * Q;
  RMatrix phi(P, M);
  RVector w(P);
  std::vector<double> buf(static_cast<std::size_t>(M));
  for (int k = 0; k < panels; ++k) {
    double lo = a + k * width;
    for (int q = 0; q < Q; ++q) {
      double x = lo + 0.5 * width * (gl.nodes[q] + 1.0);
      ho_wavefunctions(M, x, buf.data());
      int r = k * Q + q;
      for (int n = 0; n < M; ++n) phi(r, n) = buf[n];
      w[r] = 0.5 * width * gl.weights[q];
    }
  }
  CMatrix psi = phi.cast<cplx>() * state.coeffs.transpose();
  out.entries = psi.adjoint() * w.cast<cplx>().asDiagonal() * psi;
  return out;
}

}  // namespace psesk
