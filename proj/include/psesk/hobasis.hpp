#pragma once

#include <functional>
#include <vector>

#include "psesk/types.hpp"

namespace psesk {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<double> scaled_weights;  // w_q e^{x_q^2}; Gauss-Hermite only
  int order = 0;
};

struct HOExpansion {
  CVector coeffs;
  double tail_mass = 0.0;

  HOExpansion() = default;
  explicit HOExpansion(CVector c) : coeffs(std::move(c)) {}

  int truncation() const { return static_cast<int>(coeffs.size()); }
  double norm2() const { return coeffs.squaredNorm(); }
  bool normalized(double tol = 1e-8) const { return std::abs(norm2() - 1.0) <= tol; }
  cplx evaluate(double x) const;

  static HOExpansion basis_state(int n, int M);
};

// N orthonormal single-particle states as rows of an N x M coefficient matrix.
struct SlaterState {
  CMatrix coeffs;

  SlaterState() = default;
  explicit SlaterState(CMatrix c) : coeffs(std::move(c)) {}

  int particles() const { return static_cast<int>(coeffs.rows()); }
  int basis_size() const { return static_cast<int>(coeffs.cols()); }
  HOExpansion orbital(int a) const;
  double orthonormality_error() const;
  void require_orthonormal(double tol = 1e-9) const;

  static SlaterState from_occupations(const std::vector<int>& occupied, int M);
};

double ho_wavefunction(int n, double x);

// phi_0(x) .. phi_{M-1}(x) into out[0..M-1].
void ho_wavefunctions(int M, double x, double* out);
RVector ho_wavefunctions(int M, double x);

QuadratureRule gauss_hermite(int Q);
const QuadratureRule& gauss_hermite_cached(int Q);

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int Q);
const QuadratureRule& gauss_legendre_cached(int Q);

// Q defaults to 2M + 32.
HOExpansion expand_function(const std::function<cplx(double)>& f, int M, int Q = 0,
                            double tail_tolerance = 1e-6);

int basis_parity(int n);

}  // namespace psesk
