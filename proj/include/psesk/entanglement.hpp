#pragma once

#include <vector>

#include "psesk/hobasis.hpp"
#include "psesk/overlap.hpp"
#include "psesk/types.hpp"

namespace psesk {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kClampTol = 1e-9;
inline constexpr double kSingularTol = 1e-12;

struct SchmidtValues {
  std::vector<double> mu;  // descending, in [0, 1]
};

SchmidtValues schmidt_values(const CMatrix& O);
SchmidtValues schmidt_values(const OverlapMatrix& O);

// Ascending; +inf / -inf for mu = 0 / 1.
std::vector<double> entanglement_energies(const SchmidtValues& mu);

CMatrix entanglement_hamiltonian(const CMatrix& O);
CMatrix entanglement_hamiltonian(const OverlapMatrix& O);

double entanglement_entropy(const SchmidtValues& mu);

struct PSESDataset {
  std::vector<double> thetas;
  std::vector<std::vector<double>> energies;
  std::vector<double> entropy;
  std::vector<double> gap;
};

PSESDataset pses_sweep(const SlaterState& state, const std::vector<double>& thetas);

// K points on [0, span), or [0, span] when closed.
std::vector<double> uniform_grid(int K, double span, bool closed = false);

// Largest |eps_i + eps_{N-1-i}| over sorted levels: the bottleneck distance between
// {eps} and {-eps}. Infinite levels are clipped at +-clip.
double negation_asymmetry(const std::vector<double>& energies, double clip = 30.0);

}  // namespace psesk
