#pragma once

#include <vector>

#include "psesk/hobasis.hpp"
#include "psesk/types.hpp"

namespace psesk {

struct Grid1D {
  double lo = -8.0;
  double hi = 8.0;
  int n = 161;

  double step() const { return n > 1 ? (hi - lo) / (n - 1) : 0.0; }
  double at(int i) const { return lo + i * step(); }
  std::vector<double> points() const;
};

struct PhaseGrid {
  Grid1D x;
  Grid1D p;
};

struct WignerField {
  Grid1D x_grid;
  Grid1D p_grid;
  CMatrix values;  // values(i, j) = W(x_i, p_j)
  bool is_diagonal = false;

  // Trapezoid estimate of the integral of W dx dp / (2 pi).
  cplx integral() const;
};

inline constexpr double kDegenerateAngleTol = 1e-6;

// Kernel of the rotation by theta; e^{i n theta} on phi_n.
cplx frft_kernel(double theta, double x, double y);
cplx frft_kernel(double theta, cplx x, cplx y);

HOExpansion frft_ho(const HOExpansion& coeffs, double theta);

// Samples on a uniform grid; trapezoid quadrature of the kernel.
std::vector<cplx> frft_direct(const std::vector<cplx>& samples, const Grid1D& grid, double theta,
                              double edge_tol = 1e-10);

cplx wigner_mn(int m, int n, double x, double p);

// All W_mn(x, p) for m, n < M.
CMatrix wigner_matrix(int M, double x, double p);

// W = sum rho_mn W_mn with rho_mn = conj(a_m) b_n; pure state when a = b.
cplx wigner_at(const HOExpansion& state, double x, double p);

WignerField wigner_of_state(const HOExpansion& state, const PhaseGrid& grid = {});

// rho_mn = sum_a conj(A_am) A_an over the orbitals of a Slater state.
CMatrix one_body_density(const SlaterState& state);
WignerField wigner_of_density(const CMatrix& rho, const PhaseGrid& grid = {}, bool hermitian = true);

// Cross-Wigner function of |psi><phi|; its momentum marginal is conj(phi) psi.
WignerField wigner_cross(const HOExpansion& phi, const HOExpansion& psi, const PhaseGrid& grid = {});

// Brute-force oracle from position samples. Every grid.x point must lie on the sample grid.
WignerField wigner_pure(const std::vector<cplx>& samples, const Grid1D& sample_grid, const PhaseGrid& grid = {},
                        double edge_tol = 1e-10);

HOExpansion coherent_state(cplx w, int M);
WignerField coherent_wigner(cplx w, const PhaseGrid& grid = {});

std::vector<double> marginal_position(const WignerField& field);
std::vector<cplx> marginal_position_complex(const WignerField& field);

std::vector<cplx> sample_state(const HOExpansion& state, const Grid1D& grid);

}  // namespace psesk
