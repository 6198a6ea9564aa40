#include "psesk/potentials.hpp"

#include <cmath>
#include <limits>

#include "psesk/errors.hpp"
#include "psesk/expression.hpp"

namespace psesk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sech(double x) { return 1.0 / std::cosh(x); }

void check_growth(const std::function<double(double)>& v, double x) {
  for (double s : {-1.0, 1.0}) {
    double val = v(s * x);
    if (!std::isfinite(val) || std::log(std::fabs(val) + 1e-300) - x * x > std::log(1e6))
      throw Error(ErrorCode::QuadratureOverflow,
                  "potential grows faster than the Gaussian weight at x = " + std::to_string(s * x));
  }
}

}  // namespace

const char* potential_kind_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Sho: return "sho";
    case PotentialKind::Anharmonic: return "anharmonic";
    case PotentialKind::DoubleWell: return "double_well";
    case PotentialKind::PoschlTeller: return "poschl_teller";
    case PotentialKind::RosenMorse: return "rosen_morse";
    case PotentialKind::Custom: return "custom";
  }
  return "unknown";
}

PotentialKind potential_kind_from_name(const std::string& name) {
  for (auto k : {PotentialKind::Sho, PotentialKind::Anharmonic, PotentialKind::DoubleWell,
                 PotentialKind::PoschlTeller, PotentialKind::RosenMorse, PotentialKind::Custom})
    if (name == potential_kind_name(k)) return k;
  throw Error(ErrorCode::InvalidParameter, "unknown potential kind '" + name + "'");
}

PotentialSpec PotentialSpec::builtin(PotentialKind kind) {
  PotentialSpec v;
  v.kind = kind;
  switch (kind) {
    case PotentialKind::Sho:
      v.sampler = [](double x) { return 0.5 * x * x; };
      v.threshold = kInf;
      break;
    case PotentialKind::Anharmonic:
      v.sampler = [](double x) { return 0.5 * x * x + 0.25 * x * x * x * x; };
      v.threshold = kInf;
      break;
    case PotentialKind::DoubleWell:
      v.sampler = [](double x) { return -2.0 * x * x + 0.25 * x * x * x * x; };
      v.threshold = kInf;
      break;
    case PotentialKind::PoschlTeller:
      v.params = {{"depth", 45.0}};
      v.sampler = [](double x) { return -45.0 * sech(x) * sech(x); };
      v.threshold = 0.0;
      break;
    case PotentialKind::RosenMorse:
      v.params = {{"depth", 45.0}, {"tilt", 2.0}};
      v.sampler = [](double x) { return -45.0 * sech(x) * sech(x) - 2.0 * std::tanh(x); };
      v.threshold = -2.0;
      break;
    case PotentialKind::Custom:
      throw Error(ErrorCode::InvalidParameter, "custom potentials need an expression");
  }
  return v;
}

PotentialSpec PotentialSpec::builtin(const std::string& name) { return builtin(potential_kind_from_name(name)); }

PotentialSpec PotentialSpec::custom(const std::string& expression) {
  PotentialSpec v;
  v.kind = PotentialKind::Custom;
  v.expression = expression;
  v.sampler = parse_expression(expression);
  check_growth(v.sampler, 30.0);
  double r1 = v.sampler(40.0), r2 = v.sampler(60.0);
  double l1 = v.sampler(-40.0), l2 = v.sampler(-60.0);
  bool flat_r = std::fabs(r1 - r2) < 1e-8, flat_l = std::fabs(l1 - l2) < 1e-8;
  if (flat_r && flat_l) v.threshold = std::min(r2, l2);
  else if (flat_r) v.threshold = r2;
  else if (flat_l) v.threshold = l2;
  else v.threshold = kInf;
  return v;
}

RMatrix kinetic_matrix(int M) {
  RMatrix t = RMatrix::Zero(M, M);
  for (int n = 0; n < M; ++n) {
    t(n, n) = (2.0 * n + 1.0) / 4.0;
    if (n + 2 < M) {
      double v = -std::sqrt((n + 1.0) * (n + 2.0)) / 4.0;
      t(n, n + 2) = v;
      t(n + 2, n) = v;
    }
  }
  return t;
}

RMatrix hamiltonian_matrix(const PotentialSpec& V, int M, int Q) {
  if (M < 1) throw Error(ErrorCode::InvalidParameter, "hamiltonian_matrix: M must be positive");
  if (Q == 0) Q = 2 * M + 32;
  if (Q < 2 * M) throw Error(ErrorCode::InvalidParameter, "hamiltonian_matrix: Q must be at least 2M");
  if (V.kind == PotentialKind::Sho) {
    RMatrix h = RMatrix::Zero(M, M);
    for (int n = 0; n < M; ++n) h(n, n) = n + 0.5;
    return h;
  }
  const auto& rule = gauss_hermite_cached(Q);
  RMatrix phi(Q, M);
  RVector wv(Q);
  std::vector<double> buf(static_cast<std::size_t>(M));
  for (int q = 0; q < Q; ++q) {
    double x = rule.nodes[q];
    double v = V(x);
    if (!std::isfinite(v) || std::fabs(v) * std::exp(-x * x) > 1e6)
      throw Error(ErrorCode::QuadratureOverflow, "potential overflows the quadrature at x = " + std::to_string(x));
    ho_wavefunctions(M, x, buf.data());
    for (int n = 0; n < M; ++n) phi(q, n) = buf[n];
    wv[q] = rule.scaled_weights[q] * v;
  }
  RMatrix vm = phi.transpose() * wv.asDiagonal() * phi;
  RMatrix h = kinetic_matrix(M) + 0.5 * (vm + vm.transpose());
  return h;
}

static std::vector<double> lowest_energies(const PotentialSpec& V, int M, int Q, int N) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(hamiltonian_matrix(V, M, Q), Eigen::EigenvaluesOnly);
  std::vector<double> e(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) e[n] = es.eigenvalues()[n];
  return e;
}

BoundStateSet bound_states(const PotentialSpec& V, int M, int N, int Q, const BoundStateOptions& options) {
  if (N < 1) throw Error(ErrorCode::InvalidParameter, "bound_states: N must be positive");
  if (N > M) throw Error(ErrorCode::NotEnoughBoundStates, "bound_states: N exceeds the basis size");
  if (Q == 0) Q = 2 * M + 32;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(hamiltonian_matrix(V, M, Q));
  BoundStateSet out;
  out.basis_size = M;
  out.quadrature_order = Q;
  if (es.eigenvalues()[N - 1] >= V.threshold)
    throw Error(ErrorCode::NotEnoughBoundStates,
                "only levels below " + std::to_string(V.threshold) + " are bound; level " + std::to_string(N - 1) +
                    " is at " + std::to_string(es.eigenvalues()[N - 1]));
  CMatrix c(N, M);
  for (int n = 0; n < N; ++n) {
    out.energies.push_back(es.eigenvalues()[n]);
    RVector v = es.eigenvectors().col(n);
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < v.size(); ++k)
      if (std::fabs(v[k]) > std::fabs(v[best])) best = k;
    if (v[best] < 0) v = -v;
    c.row(n) = v.cast<cplx>().transpose();
  }
  out.states = SlaterState(c);
  if (options.check_convergence || options.require_converged) {
    int ref = options.reference_basis > 0 ? options.reference_basis : (4 * M) / 5;
    auto e_ref = lowest_energies(V, ref, 2 * ref + 32, N);
    out.converged = true;
    for (int n = 0; n < N; ++n) {
      double d = std::fabs(out.energies[n] - e_ref[n]);
      out.convergence_delta.push_back(d);
      if (!(d < options.convergence_tol)) out.converged = false;
    }
    if (options.require_converged && !out.converged)
      throw Error(ErrorCode::TruncationError, "bound-state energies not converged in the basis size");
  }
  return out;
}

const char* parity_name(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Asymmetric: return "asym";
  }
  return "asym";
}

std::vector<Parity> parity_check(const BoundStateSet& states, double tol) {
  std::vector<Parity> out;
  const CMatrix& c = states.states.coeffs;
  for (Eigen::Index a = 0; a < c.rows(); ++a) {
    double even = 0.0, odd = 0.0;
    for (Eigen::Index k = 0; k < c.cols(); ++k) (k % 2 == 0 ? even : odd) += std::norm(c(a, k));
    double total = even + odd;
    if (odd <= tol * total) out.push_back(Parity::Even);
    else if (even <= tol * total) out.push_back(Parity::Odd);
    else out.push_back(Parity::Asymmetric);
  }
  return out;
}

}  // namespace psesk
