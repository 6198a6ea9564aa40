#include "psesk/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "psesk/errors.hpp"
#include "psesk/parallel.hpp"

namespace psesk {

static void require_hermitian(const CMatrix& O) {
  if (O.rows() != O.cols()) throw Error(ErrorCode::DimensionMismatch, "overlap matrix is not square");
  double d = (O - O.adjoint()).cwiseAbs().maxCoeff();
  if (d > kHermitianTol)
    throw Error(ErrorCode::NonHermitian, "overlap matrix deviates from Hermitian by " + std::to_string(d));
}

static double clamp_mu(double mu) {
  if (mu < -kClampTol || mu > 1.0 + kClampTol)
    throw Error(ErrorCode::SpectrumOutOfRange, "overlap eigenvalue " + std::to_string(mu) + " outside [0,1]");
  return std::clamp(mu, 0.0, 1.0);
}

SchmidtValues schmidt_values(const CMatrix& O) {
  require_hermitian(O);
  CMatrix h = 0.5 * (O + O.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  SchmidtValues out;
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = ev.size(); i-- > 0;) out.mu.push_back(clamp_mu(ev[i]));
  return out;
}

SchmidtValues schmidt_values(const OverlapMatrix& O) { return schmidt_values(O.entries); }

static double energy_of(double mu) {
  if (mu >= 1.0) return -std::numeric_limits<double>::infinity();
  if (mu <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log1p(-mu) - std::log(mu);
}

std::vector<double> entanglement_energies(const SchmidtValues& mu) {
  std::vector<double> e;
  e.reserve(mu.mu.size());
  for (double m : mu.mu) e.push_back(energy_of(m));
  std::sort(e.begin(), e.end());
  return e;
}

CMatrix entanglement_hamiltonian(const CMatrix& O) {
  require_hermitian(O);
  CMatrix h = 0.5 * (O + O.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  RVector eps(h.rows());
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    double mu = clamp_mu(es.eigenvalues()[i]);
    if (mu < kSingularTol || mu > 1.0 - kSingularTol)
      throw Error(ErrorCode::SingularOverlap, "overlap eigenvalue within tolerance of 0 or 1");
    eps[i] = energy_of(mu);
  }
  const CMatrix& v = es.eigenvectors();
  return v * eps.cast<cplx>().asDiagonal() * v.adjoint();
}

CMatrix entanglement_hamiltonian(const OverlapMatrix& O) { return entanglement_hamiltonian(O.entries); }

double entanglement_entropy(const SchmidtValues& mu) {
  double s = 0.0;
  for (double m : mu.mu) {
    if (m <= 0.0 || m >= 1.0) continue;
    s -= m * std::log(m) + (1.0 - m) * std::log1p(-m);
  }
  return s;
}

PSESDataset pses_sweep(const SlaterState& state, const std::vector<double>& thetas) {
  state.require_orthonormal();
  PSESDataset d;
  const std::size_t K = thetas.size();
  d.thetas = thetas;
  d.energies.resize(K);
  d.entropy.resize(K);
  d.gap.resize(K);
  parallel_for(K, [&](std::size_t k) {
    auto mu = schmidt_values(rotated_overlap(state, thetas[k]));
    d.energies[k] = entanglement_energies(mu);
    d.entropy[k] = entanglement_entropy(mu);
    double g = std::numeric_limits<double>::infinity();
    for (double e : d.energies[k]) g = std::min(g, std::fabs(e));
    d.gap[k] = g;
  });
  return d;
}

std::vector<double> uniform_grid(int K, double span, bool closed) {
  std::vector<double> g(static_cast<std::size_t>(K));
  double step = closed ? span / std::max(K - 1, 1) : span / K;
  for (int k = 0; k < K; ++k) g[k] = k * step;
  return g;
}

double negation_asymmetry(const std::vector<double>& energies, double clip) {
  std::vector<double> e(energies);
  for (double& v : e) v = std::clamp(v, -clip, clip);
  std::sort(e.begin(), e.end());
  double worst = 0.0;
  const std::size_t n = e.size();
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::fabs(e[i] + e[n - 1 - i]));
  return worst;
}

}  // namespace psesk
