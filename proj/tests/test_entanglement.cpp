#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "psesk/chiral.hpp"
#include "psesk/entanglement.hpp"
#include "psesk/errors.hpp"
#include "test_util.hpp"

using namespace psesk;

namespace {

const double kPi = std::numbers::pi;
const double kO01 = 0.3989422804014327;

CMatrix two_by_two(double theta) {
  CMatrix o(2, 2);
  o << 0.5, std::polar(kO01, theta), std::polar(kO01, -theta), 0.5;
  return o;
}

double binary_entropy(double m) { return -m * std::log(m) - (1 - m) * std::log(1 - m); }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("Schmidt values examples") {
  CMatrix half(1, 1);
  half(0, 0) = 0.5;
  CHECK(schmidt_values(half).mu == std::vector<double>{0.5});
  auto one = schmidt_values(CMatrix::Identity(3, 3)).mu;
  for (double m : one) CHECK(m == doctest::Approx(1.0));
  auto mu = schmidt_values(two_by_two(1.3)).mu;
  CHECK(mu[0] == doctest::Approx(0.5 + kO01).epsilon(1e-14));
  CHECK(mu[1] == doctest::Approx(0.5 - kO01).epsilon(1e-14));
}

TEST_CASE("Schmidt values validate input") {
  CMatrix bad(2, 2);
  bad << 0.5, 0.1, 0.2, 0.5;
  try {
    schmidt_values(bad);
    FAIL("expected NonHermitian");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonHermitian);
  }
  CMatrix out(1, 1);
  out(0, 0) = 1.0 + 1e-6;
  try {
    schmidt_values(out);
    FAIL("expected SpectrumOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpectrumOutOfRange);
  }
  out(0, 0) = 1.0 + 1e-10;
  CHECK(schmidt_values(out).mu[0] == 1.0);
  out(0, 0) = -1e-10;
  CHECK(schmidt_values(out).mu[0] == 0.0);
}

TEST_CASE("entanglement energies") {
  CHECK(entanglement_energies({{0.5}})[0] == 0.0);
  CHECK(std::isinf(entanglement_energies({{1.0}})[0]));
  CHECK(entanglement_energies({{1.0}})[0] < 0);
  CHECK(entanglement_energies({{0.0}})[0] > 0);
  CHECK(std::isinf(entanglement_energies({{0.0}})[0]));
  double m = 0.5 + kO01;
  CHECK(entanglement_energies({{m}})[0] == doctest::Approx(-std::log(m / (1 - m))));
  CHECK(entanglement_energies({{0.89894}})[0] == doctest::Approx(-2.1855).epsilon(1e-4));
}

TEST_CASE("entanglement Hamiltonian") {
  CHECK(entanglement_hamiltonian(CMatrix(0.5 * CMatrix::Identity(3, 3))).cwiseAbs().maxCoeff() <= 1e-15);
  CMatrix h = entanglement_hamiltonian(two_by_two(0.3));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  double e = std::log((0.5 + kO01) / (0.5 - kO01));
  CHECK(es.eigenvalues()[0] == doctest::Approx(-e));
  CHECK(es.eigenvalues()[1] == doctest::Approx(e));
  CHECK(e == doctest::Approx(2.1855).epsilon(1e-4));
  try {
    entanglement_hamiltonian(CMatrix(CMatrix::Identity(2, 2)));
    FAIL("expected SingularOverlap");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::SingularOverlap);
  }
}

TEST_CASE("Hamiltonian spectrum equals the energy multiset") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = test::random_slater(rng, 1 + trial % 7, 30);
    CMatrix o = rotated_overlap(s, 0.37 * trial).entries;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(entanglement_hamiltonian(o), Eigen::EigenvaluesOnly);
    auto e = entanglement_energies(schmidt_values(o));
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::fabs(es.eigenvalues()[i] - e[i]) <= 1e-9);
  }
}

TEST_CASE("subsystem swap negates the energies") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = test::random_slater(rng, 1 + trial % 7, 25);
    CMatrix o = rotated_overlap(s, 0.11 * trial).entries;
    auto e = entanglement_energies(schmidt_values(o));
    auto f = entanglement_energies(schmidt_values(CMatrix(CMatrix::Identity(o.rows(), o.cols()) - o)));
    for (double& v : f) v = -v;
    f = sorted(f);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(std::fabs(e[i] - f[i]) <= 1e-9);
  }
}

TEST_CASE("entropy") {
  CHECK(entanglement_entropy({{0.5, 0.5}}) == doctest::Approx(2 * std::log(2.0)));
  CHECK(entanglement_entropy({{1.0, 0.0}}) == 0.0);
  CHECK(entanglement_entropy({{0.89894, 0.10106}}) == doctest::Approx(0.65483).epsilon(1e-4));
  CHECK(entanglement_entropy({{0.89894, 0.10106}}) == doctest::Approx(2 * binary_entropy(0.89894)));
}

TEST_CASE("entropy is U(N) invariant") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    int N = 1 + trial % 6;
    auto s = test::random_slater(rng, N, 18);
    SlaterState r(test::random_unitary(rng, N) * s.coeffs);
    double th = 0.21 * trial;
    double a = entanglement_entropy(schmidt_values(rotated_overlap(s, th)));
    double b = entanglement_entropy(schmidt_values(rotated_overlap(r, th)));
    CHECK(std::fabs(a - b) <= 1e-9);
  }
}

TEST_CASE("sweep examples") {
  auto th = uniform_grid(64, 2 * kPi);
  auto d0 = pses_sweep(SlaterState::from_occupations({0}, 1), th);
  for (const auto& lv : d0.energies) CHECK(std::fabs(lv[0]) <= 1e-14);
  auto d01 = pses_sweep(SlaterState::from_occupations({0, 1}, 2), th);
  double e = std::log((0.5 + kO01) / (0.5 - kO01));
  for (std::size_t k = 0; k < th.size(); ++k) {
    CHECK(d01.energies[k][0] == doctest::Approx(-e).epsilon(1e-12));
    CHECK(d01.energies[k][1] == doctest::Approx(e).epsilon(1e-12));
    CHECK(d01.gap[k] == doctest::Approx(e).epsilon(1e-12));
    CHECK(d01.entropy[k] >= 0.0);
    CHECK(d01.entropy[k] <= 2 * std::log(2.0) * (1 + 1e-9));
  }
}

TEST_CASE("sweep through the critical interpolation closes the gap") {
  const double phi = 2 * kPi / 3;
  const double tc = 2 / kPi * std::atan(std::sqrt(2.0));
  const double th_star = (kPi + phi) / 2;
  auto s = interpolated_state(tc, phi);
  auto d = pses_sweep(s, {th_star, th_star + 0.3});
  CHECK(d.gap[0] <= 1e-8);
  CHECK(d.gap[1] > 1e-2);
  CHECK(d.entropy[0] == doctest::Approx(2 * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("entropy bound from gap closings") {
  const double phi = 2 * kPi / 3;
  auto th = uniform_grid(512, kPi);
  for (double t : {0.3, 0.6081734479693927, 0.9}) {
    auto s = interpolated_state(t, phi);
    auto ps = parity_sort(s);
    auto closings = detect_gap_closings(ps, th);
    double smax = 0.0;
    for (double v : pses_sweep(s, th).entropy) smax = std::max(smax, v);
    for (double c : closings) smax = std::max(smax, entanglement_entropy(schmidt_values(rotated_overlap(s, c))));
    CHECK(smax >= 2 * std::log(2.0) * closings.size() - 1e-6);
  }
}

TEST_CASE("negation asymmetry") {
  CHECK(negation_asymmetry({-1.0, 0.0, 1.0}) == 0.0);
  CHECK(negation_asymmetry({-2.0, 1.0}) == doctest::Approx(1.0));
  CHECK(negation_asymmetry({-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()}) == 0.0);
}
