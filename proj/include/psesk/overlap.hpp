#pragma once

#include <memory>

#include "psesk/hobasis.hpp"
#include "psesk/types.hpp"

namespace psesk {

// <phi_m|phi_n> restricted to [0, inf).
double ho_halfspace_overlap(int m, int n);

struct HOOverlapTable {
  RMatrix entries;
  int size() const { return static_cast<int>(entries.rows()); }
};

HOOverlapTable ho_overlap_table(int M);

// Shared, lazily grown table; at least M x M.
std::shared_ptr<const RMatrix> shared_overlap_table(int M);

// Half-line Gauss-Legendre oracle; Q is the per-panel order (0 picks a default).
double overlap_quadrature_oracle(int m, int n, int Q = 0);

enum class CutKind { Rotation, Translation };

struct OverlapMatrix {
  CMatrix entries;
  CutKind kind = CutKind::Rotation;
  double parameter = 0.0;

  int size() const { return static_cast<int>(entries.rows()); }
};

OverlapMatrix rotated_overlap(const SlaterState& state, double theta);

// Same rotation, subsystem B = (-inf, 0].
OverlapMatrix rotated_overlap_complement(const SlaterState& state, double theta);

OverlapMatrix translated_overlap(const SlaterState& state, double t);

// Extent used for position-space quadrature of M-term expansions.
double position_cutoff(int M);

}  // namespace psesk
