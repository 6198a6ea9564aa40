#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "psesk/errors.hpp"
#include "psesk/hobasis.hpp"
#include "psesk/specfun.hpp"

using namespace psesk;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("wavefunction values") {
  CHECK(ho_wavefunction(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(ho_wavefunction(1, 0.0) == 0.0);
  CHECK(ho_wavefunction(2, 0.0) == doctest::Approx(-0.5311259660135985).epsilon(1e-15));
}

TEST_CASE("wavefunction matches the Hermite form at moderate n") {
  for (int n = 0; n <= 20; ++n)
    for (double x : {-2.3, -0.4, 0.0, 1.1, 3.7}) {
      double ref = std::pow(kPi, -0.25) * std::exp(-0.5 * (n * std::log(2.0) + log_factorial(n))) *
                   hermite_phys(n, x) * std::exp(-0.5 * x * x);
      CHECK(ho_wavefunction(n, x) == doctest::Approx(ref).epsilon(1e-12).scale(1e-12));
    }
}

TEST_CASE("wavefunction stays finite at large n and x") {
  double v = ho_wavefunction(400, 28.0);
  CHECK(std::isfinite(v));
  CHECK(std::fabs(v) < 1.0);
  CHECK(ho_wavefunction(100, 15.0) != 0.0);
  CHECK(std::isfinite(ho_wavefunction(500, 40.0)));
}

TEST_CASE("parity") {
  CHECK(basis_parity(0) == 1);
  CHECK(basis_parity(1) == -1);
  CHECK(basis_parity(8) == 1);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int k = 0; k < 200; ++k) {
    int n = k % 60;
    double x = u(rng);
    CHECK(ho_wavefunction(n, -x) == doctest::Approx(basis_parity(n) * ho_wavefunction(n, x)).scale(1e-300));
  }
}

TEST_CASE("Gauss-Hermite small rules") {
  const double sp = std::sqrt(kPi);
  auto r1 = gauss_hermite(1);
  CHECK(r1.nodes[0] == 0.0);
  CHECK(r1.weights[0] == doctest::Approx(sp));
  auto r2 = gauss_hermite(2);
  CHECK(r2.nodes[0] == doctest::Approx(-1 / std::sqrt(2.0)));
  CHECK(r2.nodes[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(r2.weights[0] == doctest::Approx(sp / 2));
  CHECK(r2.weights[1] == doctest::Approx(sp / 2));
  auto r3 = gauss_hermite(3);
  CHECK(r3.nodes[1] == 0.0);
  CHECK(r3.nodes[2] == doctest::Approx(std::sqrt(1.5)));
  CHECK(r3.weights[1] == doctest::Approx(2 * sp / 3));
  CHECK(r3.weights[0] == doctest::Approx(sp / 6));
}

TEST_CASE("Gauss-Hermite integrates monomials") {
  for (int Q : {5, 8, 20, 64, 232}) {
    auto r = gauss_hermite(Q);
    for (int d = 0; d <= 8; ++d) {
      double s = 0.0;
      for (int q = 0; q < Q; ++q) s += r.weights[q] * std::pow(r.nodes[q], d);
      double exact = d % 2 ? 0.0 : std::tgamma(0.5 * (d + 1));
      CHECK(std::fabs(s - exact) <= 1e-10 * std::max(1.0, exact));
    }
    for (int q = 0; q < Q; ++q) CHECK(r.nodes[q] == -r.nodes[Q - 1 - q]);
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials") {
  for (int Q : {1, 2, 7, 40}) {
    auto r = gauss_legendre(Q);
    for (int d = 0; d < 2 * Q; ++d) {
      double s = 0.0;
      for (int q = 0; q < Q; ++q) s += r.weights[q] * std::pow(r.nodes[q], d);
      double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-13).scale(1));
    }
  }
}

TEST_CASE("orthonormality up to M = 120") {
  for (int M : {10, 60, 120}) {
    auto r = gauss_hermite(2 * M);
    RMatrix phi(2 * M, M);
    for (int q = 0; q < 2 * M; ++q) phi.row(q) = ho_wavefunctions(M, r.nodes[q]).transpose();
    RVector w = Eigen::Map<const RVector>(r.scaled_weights.data(), 2 * M);
    RMatrix g = phi.transpose() * w.asDiagonal() * phi;
    CHECK((g - RMatrix::Identity(M, M)).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("expand_function") {
  auto e3 = expand_function([](double x) { return cplx(ho_wavefunction(3, x)); }, 12);
  for (int n = 0; n < 12; ++n) CHECK(std::abs(e3.coeffs[n] - (n == 3 ? 1.0 : 0.0)) <= 1e-10);
  CHECK(std::fabs(e3.tail_mass) <= 1e-10);

  auto e0 = expand_function([](double x) { return cplx(std::pow(kPi, -0.25) * std::exp(-0.5 * x * x)); }, 8);
  for (int n = 0; n < 8; ++n) CHECK(std::abs(e0.coeffs[n] - (n == 0 ? 1.0 : 0.0)) <= 1e-10);

  // x e^{-x^2/2}: int phi_1 x e^{-x^2/2} dx = sqrt2 pi^{-1/4} int x^2 e^{-x^2} dx = sqrt2 pi^{-1/4} sqrt(pi)/2
  auto e1 = expand_function([](double x) { return cplx(x * std::exp(-0.5 * x * x)); }, 10);
  double a1 = std::sqrt(2.0) * std::pow(kPi, -0.25) * std::sqrt(kPi) / 2.0;
  CHECK(e1.coeffs[1].real() == doctest::Approx(a1).epsilon(1e-12));
  CHECK(a1 == doctest::Approx(std::pow(kPi / 4, 0.25)));
  for (int n = 0; n < 10; ++n)
    if (n != 1) CHECK(std::abs(e1.coeffs[n]) <= 1e-12);
}

TEST_CASE("expand then reconstruct is the identity on band-limited input") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  const int M = 25;
  CVector c(M);
  for (auto& v : c) v = cplx(g(rng), g(rng));
  c /= c.norm();
  HOExpansion in(c);
  auto out = expand_function([&](double x) { return in.evaluate(x); }, M);
  CHECK((out.coeffs - c).cwiseAbs().maxCoeff() <= 1e-8);
  for (double x : {-3.0, 0.2, 4.4}) CHECK(std::abs(out.evaluate(x) - in.evaluate(x)) <= 1e-8);
}

TEST_CASE("expand_function reports truncation") {
  auto wide = [](double x) { return cplx(std::exp(-0.02 * x * x)); };
  try {
    expand_function(wide, 10);
    FAIL("expected truncation error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationError);
  }
}

TEST_CASE("Slater state helpers") {
  auto s = SlaterState::from_occupations({0, 2, 5}, 8);
  CHECK(s.particles() == 3);
  CHECK(s.orthonormality_error() == 0.0);
  CHECK_THROWS_AS(SlaterState::from_occupations({2, 1}, 4), Error);
  CHECK_THROWS_AS(SlaterState::from_occupations({0, 4}, 4), Error);
  CMatrix c = CMatrix::Zero(2, 3);
  c(0, 0) = 1.0;
  c(1, 0) = 1.0;
  CHECK_THROWS_AS(SlaterState(c).require_orthonormal(), Error);
}
