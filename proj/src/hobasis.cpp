#include "psesk/hobasis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "psesk/errors.hpp"

namespace psesk {

void ho_wavefunctions(int M, double x, double* out) {
  if (M <= 0) return;
  // Recurrence on phi_k e^{x^2/2}, rescaled by powers of two to stay finite.
  constexpr int kStep = 256;
  const double big = std::ldexp(1.0, kStep);
  const double pi_m14 = std::pow(std::numbers::pi, -0.25);
  int scale = 0;
  auto gauss = [&](int s) { return std::exp(-0.5 * x * x + s * std::numbers::ln2); };
  double g = gauss(scale);
  double pm = 0.0, p = pi_m14;
  out[0] = p * g;
  for (int k = 0; k + 1 < M; ++k) {
    double pn = std::sqrt(2.0 / (k + 1.0)) * x * p - std::sqrt(k / (k + 1.0)) * pm;
    pm = p;
    p = pn;
    if (std::fabs(p) > big) {
      p = std::ldexp(p, -kStep);
      pm = std::ldexp(pm, -kStep);
      scale += kStep;
      g = gauss(scale);
    }
    out[k + 1] = p * g;
  }
}

RVector ho_wavefunctions(int M, double x) {
  RVector v(M);
  ho_wavefunctions(M, x, v.data());
  return v;
}

double ho_wavefunction(int n, double x) {
  if (n < 0) throw Error(ErrorCode::DomainError, "ho_wavefunction: negative index");
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  ho_wavefunctions(n + 1, x, buf.data());
  return buf[n];
}

int basis_parity(int n) { return (n % 2 == 0) ? 1 : -1; }

QuadratureRule gauss_hermite(int Q) {
  if (Q < 1) throw Error(ErrorCode::InvalidParameter, "gauss_hermite: Q must be positive");
  QuadratureRule rule;
  rule.order = Q;
  std::vector<double> x(Q, 0.0);
  if (Q > 1) {
    RVector diag = RVector::Zero(Q);
    RVector off(Q - 1);
    for (int k = 1; k < Q; ++k) off[k - 1] = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    for (int q = 0; q < Q; ++q) x[q] = es.eigenvalues()[q];
  }
  std::vector<double> phi(static_cast<std::size_t>(Q) + 1);
  for (int q = 0; q < Q; ++q) {
    for (int it = 0; it < 2; ++it) {
      ho_wavefunctions(Q + 1, x[q], phi.data());
      double d = std::sqrt(2.0 * Q) * phi[Q - 1] - x[q] * phi[Q];
      if (d != 0.0) x[q] -= phi[Q] / d;
    }
  }
  std::sort(x.begin(), x.end());
  for (int q = 0; q < Q / 2; ++q) {
    double a = 0.5 * (x[Q - 1 - q] - x[q]);
    x[q] = -a;
    x[Q - 1 - q] = a;
  }
  if (Q % 2 == 1) x[Q / 2] = 0.0;
  rule.nodes = x;
  rule.weights.resize(Q);
  rule.scaled_weights.resize(Q);
  for (int q = 0; q < Q; ++q) {
    ho_wavefunctions(Q, x[q], phi.data());
    double s = 0.0;
    for (int k = 0; k < Q; ++k) s += phi[k] * phi[k];
    rule.scaled_weights[q] = 1.0 / s;
    rule.weights[q] = std::exp(-x[q] * x[q]) / s;
  }
  return rule;
}

QuadratureRule gauss_legendre(int Q) {
  if (Q < 1) throw Error(ErrorCode::InvalidParameter, "gauss_legendre: Q must be positive");
  QuadratureRule rule;
  rule.order = Q;
  std::vector<double> x(Q, 0.0);
  if (Q > 1) {
    RVector diag = RVector::Zero(Q);
    RVector off(Q - 1);
    for (int k = 1; k < Q; ++k) off[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<RMatrix> es;
    es.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
    for (int q = 0; q < Q; ++q) x[q] = es.eigenvalues()[q];
  }
  auto legendre = [Q](double t, double& pq, double& dp) {
    double p0 = 1.0, p1 = t;
    for (int k = 1; k < Q; ++k) {
      double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    pq = Q == 0 ? 1.0 : p1;
    dp = Q * (t * p1 - p0) / (t * t - 1.0);
  };
  rule.weights.resize(Q);
  for (int q = 0; q < Q; ++q) {
    double pq, dp;
    for (int it = 0; it < 2; ++it) {
      legendre(x[q], pq, dp);
      x[q] -= pq / dp;
    }
  }
  std::sort(x.begin(), x.end());
  for (int q = 0; q < Q / 2; ++q) {
    double a = 0.5 * (x[Q - 1 - q] - x[q]);
    x[q] = -a;
    x[Q - 1 - q] = a;
  }
  if (Q % 2 == 1) x[Q / 2] = 0.0;
  for (int q = 0; q < Q; ++q) {
    double pq, dp;
    legendre(x[q], pq, dp);
    rule.weights[q] = 2.0 / ((1.0 - x[q] * x[q]) * dp * dp);
  }
  if (Q == 1) rule.weights[0] = 2.0;
  rule.nodes = x;
  return rule;
}

namespace {

template <class Make>
const QuadratureRule& cached(std::map<int, std::unique_ptr<QuadratureRule>>& cache, std::mutex& mu,
                             int Q, Make make) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(Q);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<QuadratureRule>(make(Q));
  auto& ref = *rule;
  cache.emplace(Q, std::move(rule));
  return ref;
}

}  // namespace

const QuadratureRule& gauss_hermite_cached(int Q) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, Q, gauss_hermite);
}

const QuadratureRule& gauss_legendre_cached(int Q) {
  static std::map<int, std::unique_ptr<QuadratureRule>> cache;
  static std::mutex mu;
  return cached(cache, mu, Q, gauss_legendre);
}

cplx HOExpansion::evaluate(double x) const {
  int M = truncation();
  std::vector<double> phi(static_cast<std::size_t>(M));
  ho_wavefunctions(M, x, phi.data());
  cplx s = 0.0;
  for (int n = 0; n < M; ++n) s += coeffs[n] * phi[n];
  return s;
}

HOExpansion HOExpansion::basis_state(int n, int M) {
  if (n < 0 || n >= M) throw Error(ErrorCode::InvalidParameter, "basis_state index outside basis");
  CVector c = CVector::Zero(M);
  c[n] = 1.0;
  return HOExpansion(c);
}

HOExpansion SlaterState::orbital(int a) const {
  return HOExpansion(coeffs.row(a).transpose());
}

double SlaterState::orthonormality_error() const {
  CMatrix g = coeffs.conjugate() * coeffs.transpose();
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

void SlaterState::require_orthonormal(double tol) const {
  if (particles() == 0) throw Error(ErrorCode::InvalidParameter, "empty Slater state");
  double e = orthonormality_error();
  if (!(e <= tol))
    throw Error(ErrorCode::NotOrthonormal, "orbital Gram matrix deviates from identity by " + std::to_string(e));
}

SlaterState SlaterState::from_occupations(const std::vector<int>& occupied, int M) {
  CMatrix c = CMatrix::Zero(static_cast<Eigen::Index>(occupied.size()), M);
  for (std::size_t a = 0; a < occupied.size(); ++a) {
    int n = occupied[a];
    if (n < 0 || n >= M) throw Error(ErrorCode::InvalidParameter, "occupied index outside basis");
    if (a > 0 && occupied[a - 1] >= n)
      throw Error(ErrorCode::InvalidParameter, "occupied indices must be strictly ascending");
    c(static_cast<Eigen::Index>(a), n) = 1.0;
  }
  return SlaterState(c);
}

HOExpansion expand_function(const std::function<cplx(double)>& f, int M, int Q, double tail_tolerance) {
  if (M < 1) throw Error(ErrorCode::InvalidParameter, "expand_function: M must be positive");
  if (Q == 0) Q = 2 * M + 32;
  if (Q < 2 * M) throw Error(ErrorCode::InvalidParameter, "expand_function: Q must be at least 2M");
  const auto& rule = gauss_hermite_cached(Q);
  CVector c = CVector::Zero(M);
  double mass = 0.0;
  std::vector<double> phi(static_cast<std::size_t>(M));
  for (int q = 0; q < Q; ++q) {
    double x = rule.nodes[q];
    cplx fx = f(x);
    ho_wavefunctions(M, x, phi.data());
    double w = rule.scaled_weights[q];
    mass += w * std::norm(fx);
    for (int n = 0; n < M; ++n) c[n] += w * phi[n] * fx;
  }
  HOExpansion out(c);
  out.tail_mass = mass - c.squaredNorm();
  if (out.tail_mass > tail_tolerance)
    throw Error(ErrorCode::TruncationError,
                "expand_function: tail mass " + std::to_string(out.tail_mass) + " exceeds tolerance");
  return out;
}

}  // namespace psesk
