#pragma once

#include <vector>

namespace psesk {

class LogFactorialTable {
 public:
  explicit LogFactorialTable(int n_max);

  double operator()(int n) const { return values_[n]; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& values() const { return values_; }

  // Shared table of length 2*kMaxBasis + 2.
  static const LogFactorialTable& shared();

 private:
  std::vector<double> values_;
};

// ln(n!) from the shared table, falling back to lgamma beyond it.
double log_factorial(int n);

double hermite_phys(int n, double x);

// Generalized Laguerre L_n^alpha(x). Requires n + alpha >= 0.
double assoc_laguerre(int n, int alpha, double x);

// Gamma(two_k / 2) for integer two_k, poles at 0, -2, -4, ...
double gamma_special(int two_k);

// ln Gamma(two_k / 2) for two_k > 0.
double log_gamma_special(int two_k);

// 2F1(-m, b; c; x), finite sum of m + 1 terms.
double hyp2f1_terminating(int m, double b, double c, double x);

struct SignedLog {
  int sign = 0;  // 0 when the value is exactly zero
  double log_abs = 0.0;
  double value() const;
};

// Same series with rational parameters b = b_num/b_den, c = c_num/c_den and
// integer x, summed exactly in rational arithmetic.
SignedLog hyp2f1_terminating_exact(int m, long b_num, long b_den, long c_num, long c_den, long x);

}  // namespace psesk
