#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "psesk/hobasis.hpp"
#include "psesk/types.hpp"

namespace psesk {

enum class PotentialKind { Sho, Anharmonic, DoubleWell, PoschlTeller, RosenMorse, Custom };

const char* potential_kind_name(PotentialKind kind);
PotentialKind potential_kind_from_name(const std::string& name);

struct PotentialSpec {
  PotentialKind kind = PotentialKind::Sho;
  std::map<std::string, double> params;
  std::function<double(double)> sampler;
  std::string expression;  // custom kind only
  // Lowest continuum edge; +inf for confining wells.
  double threshold = 0.0;

  double operator()(double x) const { return sampler(x); }

  static PotentialSpec builtin(PotentialKind kind);
  static PotentialSpec builtin(const std::string& name);
  static PotentialSpec custom(const std::string& expression);
};

RMatrix kinetic_matrix(int M);

// Q defaults to 2M + 32.
RMatrix hamiltonian_matrix(const PotentialSpec& V, int M, int Q = 0);

struct BoundStateOptions {
  bool check_convergence = false;
  bool require_converged = false;
  int reference_basis = 0;  // defaults to 4M/5
  double convergence_tol = 1e-6;
};

struct BoundStateSet {
  std::vector<double> energies;
  SlaterState states;
  int basis_size = 0;
  int quadrature_order = 0;
  std::vector<double> convergence_delta;  // |E_n(M) - E_n(reference)| when checked
  bool converged = true;
};

BoundStateSet bound_states(const PotentialSpec& V, int M, int N, int Q = 0, const BoundStateOptions& options = {});

enum class Parity { Even, Odd, Asymmetric };

const char* parity_name(Parity p);

std::vector<Parity> parity_check(const BoundStateSet& states, double tol = 1e-8);

}  // namespace psesk
