#pragma once

#include <vector>

#include "psesk/hobasis.hpp"
#include "psesk/types.hpp"

namespace psesk {

CMatrix inversion_matrix(const SlaterState& state);

struct ParitySortedState {
  CMatrix coeffs;  // even-parity rows first
  int n_even = 0;
  int n_odd = 0;
  std::vector<int> parity;

  SlaterState state() const { return SlaterState(coeffs); }
};

ParitySortedState parity_sort(const SlaterState& state, double tol = 1e-8);

struct ChiralBlock {
  CMatrix m_theta;
  double theta = 0.0;
};

ChiralBlock chiral_block(const ParitySortedState& ps, double theta);

// Full off-diagonal matrix M(theta) with O = (1 + M)/2.
CMatrix chiral_offdiagonal(const ParitySortedState& ps, double theta);

cplx chiral_determinant(const ParitySortedState& ps, double theta);

struct WindingResult {
  int nu = 0;
  int grid_used = 0;
  double min_abs_det = 0.0;
  double raw = 0.0;  // accumulated phase / pi before rounding
};

inline constexpr double kGapClosedTol = 1e-10;
inline constexpr int kWindingGridCap = 1 << 16;

WindingResult winding_number(const ParitySortedState& ps, int grid_size = 256, int grid_cap = kWindingGridCap);

int flat_band_count(const ParitySortedState& ps);

inline constexpr double kClosingThreshold = 1e-6;

std::vector<double> detect_gap_closings(const ParitySortedState& ps, const std::vector<double>& thetas);

// Two-fermion path from {phi_0, phi_1} (t = 0) to {phi_1, phi_2} (t = 1): the even orbital is
// cos(pi t/2) phi_0 + e^{-i phi} sin(pi t/2) phi_2, the odd orbital phi_1.
SlaterState interpolated_state(double t, double phi, int M = 3);

struct GapTransition {
  bool found = false;
  double t_lo = 0.0;  // grid bracket
  double t_hi = 0.0;
  double t_star = 0.0;  // refined
  double theta_star = 0.0;
  double min_abs_det = 0.0;
  int nu_before = 0;
  int nu_after = 0;
};

// Scans t in [t0, t1] with step dt for a change of winding (or a closed gap), then refines.
GapTransition locate_gap_transition(double phi, double t0 = 0.0, double t1 = 1.0, double dt = 1e-3);

// argmin of |det m(theta)| on [0, pi), refined to 1e-10.
double minimize_abs_det(const ParitySortedState& ps, double* min_value = nullptr, int samples = 256);

}  // namespace psesk
