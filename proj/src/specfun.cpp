#include "psesk/specfun.hpp"

#include <cmath>
#include <numbers>

#include <gmpxx.h>

#include "psesk/errors.hpp"
#include "psesk/types.hpp"

namespace psesk {

LogFactorialTable::LogFactorialTable(int n_max) : values_(static_cast<std::size_t>(n_max) + 1) {
  values_[0] = 0.0;
  for (int n = 1; n <= n_max; ++n) values_[n] = std::lgamma(static_cast<double>(n) + 1.0);
}

const LogFactorialTable& LogFactorialTable::shared() {
  static const LogFactorialTable table(2 * kMaxBasis + 1);
  return table;
}

double log_factorial(int n) {
  if (n < 0) throw Error(ErrorCode::DomainError, "log_factorial of negative integer");
  const auto& t = LogFactorialTable::shared();
  if (n < t.size()) return t(n);
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double hermite_phys(int n, double x) {
  if (n < 0) throw Error(ErrorCode::DomainError, "hermite_phys: negative order");
  if (n == 0) return 1.0;
  double hm = 1.0, h = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    double hp = 2.0 * x * h - 2.0 * k * hm;
    hm = h;
    h = hp;
  }
  return h;
}

double assoc_laguerre(int n, int alpha, double x) {
  if (n < 0 || n + alpha < 0)
    throw Error(ErrorCode::DomainError, "assoc_laguerre: requires n >= 0 and n + alpha >= 0");
  if (n == 0) return 1.0;
  double a = alpha;
  double lm = 1.0, l = 1.0 + a - x;
  for (int k = 1; k < n; ++k) {
    double lp = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm) / (k + 1.0);
    lm = l;
    l = lp;
  }
  return l;
}

double gamma_special(int two_k) {
  if (two_k <= 0 && two_k % 2 == 0)
    throw Error(ErrorCode::PoleError, "gamma_special: pole at " + std::to_string(two_k / 2));
  bool half = (two_k % 2) != 0;
  int start = half ? 1 : 2;
  double g = half ? std::sqrt(std::numbers::pi) : 1.0;
  if (two_k >= start) {
    for (int t = start; t < two_k; t += 2) g *= 0.5 * t;
  } else {
    for (int t = start; t > two_k; t -= 2) g /= 0.5 * (t - 2);
  }
  return g;
}

double log_gamma_special(int two_k) {
  if (two_k <= 0) throw Error(ErrorCode::DomainError, "log_gamma_special: argument must be positive");
  if (two_k % 2 == 0) return log_factorial(two_k / 2 - 1);
  return std::lgamma(0.5 * two_k);
}

static void check_c(int m, bool c_is_int, long c_int) {
  if (c_is_int && c_int <= 0 && c_int >= -m + 1)
    throw Error(ErrorCode::InvalidParameter,
                "hyp2f1_terminating: c is a nonpositive integer inside the series range");
}

double hyp2f1_terminating(int m, double b, double c, double x) {
  if (m < 0) throw Error(ErrorCode::DomainError, "hyp2f1_terminating: m must be nonnegative");
  bool c_int = std::floor(c) == c;
  check_c(m, c_int, c_int ? static_cast<long>(c) : 0);
  double term = 1.0, sum = 1.0;
  for (int q = 0; q < m; ++q) {
    term *= (-m + q) * (b + q) / ((c + q) * (q + 1.0)) * x;
    sum += term;
  }
  return sum;
}

double SignedLog::value() const {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

static double log_abs_mpz(const mpz_class& z) {
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(std::fabs(mant)) + exp2 * std::numbers::ln2;
}

SignedLog hyp2f1_terminating_exact(int m, long b_num, long b_den, long c_num, long c_den, long x) {
  if (m < 0) throw Error(ErrorCode::DomainError, "hyp2f1_terminating_exact: m must be nonnegative");
  if (b_den == 0 || c_den == 0) throw Error(ErrorCode::InvalidParameter, "zero denominator");
  mpq_class b(b_num, b_den), c(c_num, c_den), xq(x);
  b.canonicalize();
  c.canonicalize();
  check_c(m, c.get_den() == 1, c.get_den() == 1 ? c.get_num().get_si() : 0);
  mpq_class term(1), sum(1);
  for (int q = 0; q < m; ++q) {
    term *= mpq_class(q - m) * (b + q) * xq / ((c + q) * (q + 1));
    sum += term;
  }
  SignedLog out;
  out.sign = sgn(sum);
  if (out.sign != 0) out.log_abs = log_abs_mpz(sum.get_num()) - log_abs_mpz(sum.get_den());
  return out;
}

}  // namespace psesk
