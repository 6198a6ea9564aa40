#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "psesk/entanglement.hpp"
#include "psesk/errors.hpp"
#include "psesk/overlap.hpp"
#include "test_util.hpp"

using namespace psesk;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("half-space overlap examples") {
  CHECK(ho_halfspace_overlap(0, 0) == 0.5);
  CHECK(ho_halfspace_overlap(0, 1) == doctest::Approx(1.0 / std::sqrt(2 * kPi)).epsilon(1e-14));
  CHECK(ho_halfspace_overlap(1, 2) == doctest::Approx(0.5 / std::sqrt(kPi)).epsilon(1e-14));
  CHECK(ho_halfspace_overlap(0, 1) / ho_halfspace_overlap(2, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::atan(ho_halfspace_overlap(0, 1) / ho_halfspace_overlap(2, 1)) * 2 / kPi ==
        doctest::Approx(0.6081734479693927));
  CHECK(ho_halfspace_overlap(2, 4) == 0.0);
  CHECK(ho_halfspace_overlap(7, 7) == 0.5);
  CHECK(ho_halfspace_overlap(5, 2) == ho_halfspace_overlap(2, 5));
}

TEST_CASE("overlap table") {
  auto t1 = ho_overlap_table(1);
  CHECK(t1.entries(0, 0) == 0.5);
  auto t2 = ho_overlap_table(2);
  CHECK(t2.entries(0, 1) == doctest::Approx(0.3989422804014327));
  CHECK(t2.entries(1, 0) == t2.entries(0, 1));
  auto t = ho_overlap_table(80);
  CHECK((t.entries - t.entries.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int m = 0; m < 80; ++m)
    for (int n = 0; n < 80; ++n)
      if ((m + n) % 2 == 0) CHECK(t.entries(m, n) == (m == n ? 0.5 : 0.0));
  Eigen::SelfAdjointEigenSolver<RMatrix> es(t.entries);
  CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-10);
}

TEST_CASE("quadrature oracle examples") {
  CHECK(overlap_quadrature_oracle(0, 0) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(std::fabs(overlap_quadrature_oracle(0, 1) - 0.3989422804014327) <= 1e-9);
  CHECK(std::fabs(overlap_quadrature_oracle(3, 3) - 0.5) <= 1e-9);
  // closed Gaussian integral: int_0^inf phi_0 phi_1 = sqrt2 pi^{-1/2} / 2
  CHECK(overlap_quadrature_oracle(0, 1) == doctest::Approx(std::sqrt(2.0) / std::sqrt(kPi) / 2).epsilon(1e-12));
}

TEST_CASE("closed form agrees with the oracle for m, n <= 40") {
  double worst = 0.0;
  for (int m = 0; m <= 40; ++m)
    for (int n = 0; n <= 40; ++n)
      worst = std::max(worst, std::fabs(ho_halfspace_overlap(m, n) - overlap_quadrature_oracle(m, n)));
  CHECK(worst <= 1e-8);
}

TEST_CASE("closed form stays accurate for large indices") {
  for (auto [m, n] : {std::pair{60, 61}, std::pair{99, 98}, std::pair{120, 125}, std::pair{10, 151}})
    CHECK(std::fabs(ho_halfspace_overlap(m, n) - overlap_quadrature_oracle(m, n)) <= 1e-8);
}

TEST_CASE("rotated overlap examples") {
  auto s0 = SlaterState::from_occupations({0}, 1);
  CHECK(std::abs(rotated_overlap(s0, 0.0).entries(0, 0) - 0.5) <= 1e-15);
  for (int n : {0, 3, 8})
    for (double th : {0.0, 0.7, 2.9, 5.1}) {
      auto s = SlaterState::from_occupations({n}, n + 1);
      CHECK(std::abs(rotated_overlap(s, th).entries(0, 0) - 0.5) <= 1e-14);
    }
  auto s01 = SlaterState::from_occupations({0, 1}, 2);
  CHECK_THROWS_AS(rotated_overlap(SlaterState(CMatrix(0, 0)), 0.0), Error);
  auto o = rotated_overlap(s01, 0.4).entries;
  CHECK(std::abs(o(0, 1) - std::polar(0.3989422804014327, 0.4)) <= 1e-14);
}

TEST_CASE("rotation by pi swaps the subsystems") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = test::random_slater(rng, 1 + trial % 5, 12 + trial);
    CMatrix o0 = rotated_overlap(s, 0.0).entries;
    CMatrix opi = rotated_overlap(s, kPi).entries;
    CMatrix comp = rotated_overlap_complement(s, 0.0).entries;
    CHECK((opi - comp).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((opi + o0 - CMatrix::Identity(o0.rows(), o0.cols())).cwiseAbs().maxCoeff() <= 1e-12);
    auto mu0 = schmidt_values(o0).mu;
    auto mupi = schmidt_values(opi).mu;
    for (double& m : mupi) m = 1.0 - m;
    std::sort(mu0.begin(), mu0.end());
    std::sort(mupi.begin(), mupi.end());
    for (std::size_t i = 0; i < mu0.size(); ++i) CHECK(std::fabs(mu0[i] - mupi[i]) <= 1e-8);
  }
}

TEST_CASE("spectra at theta and theta + pi are complementary") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = test::random_slater(rng, 1 + trial % 6, 20);
    double th = ang(rng);
    auto a = schmidt_values(rotated_overlap(s, th)).mu;
    auto b = schmidt_values(rotated_overlap(s, th + kPi)).mu;
    for (double& m : b) m = 1.0 - m;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= 1e-8);
  }
}

TEST_CASE("Gram bound and complementarity on random states") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = test::random_slater(rng, 1 + trial % 8, 10 + trial % 50);
    double th = ang(rng);
    CMatrix oa = rotated_overlap(s, th).entries;
    CMatrix ob = rotated_overlap_complement(s, th).entries;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(oa, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-9);
    CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-9);
    CHECK((oa - oa.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((oa + ob - CMatrix::Identity(oa.rows(), oa.cols())).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("translated overlap limits and the t = 0 cut") {
  std::mt19937_64 rng(4);
  auto s = test::random_slater(rng, 3, 16);
  const double cut = position_cutoff(16);
  CMatrix full = translated_overlap(s, -cut).entries;
  CHECK((full - CMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);
  CMatrix empty = translated_overlap(s, cut + 1).entries;
  CHECK(empty.cwiseAbs().maxCoeff() <= 1e-8);
  CMatrix far = translated_overlap(s, 30.0).entries;
  CHECK(far.cwiseAbs().maxCoeff() <= 1e-8);
  CMatrix t0 = translated_overlap(s, 0.0).entries;
  CMatrix r0 = rotated_overlap(s, 0.0).entries;
  CHECK((t0 - r0).cwiseAbs().maxCoeff() <= 1e-8);
  auto even_odd = SlaterState::from_occupations({0, 1, 4}, 6);
  CHECK((translated_overlap(even_odd, 0.0).entries - rotated_overlap(even_odd, 0.0).entries).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("translated overlap is monotone in the offset") {
  auto s = SlaterState::from_occupations({0}, 1);
  double prev = 1.0;
  for (double t = -4.0; t <= 4.0; t += 0.5) {
    double v = translated_overlap(s, t).entries(0, 0).real();
    CHECK(v <= prev + 1e-15);
    // int_t^inf pi^{-1/2} e^{-x^2} dx = erfc(t)/2
    CHECK(v == doctest::Approx(0.5 * std::erfc(t)).epsilon(1e-12).scale(1e-12));
    prev = v;
  }
}
