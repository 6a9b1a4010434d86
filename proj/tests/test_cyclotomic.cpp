#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lemknot/cyclotomic.hpp"

using namespace lemknot;

namespace {

// numeric oracle: evaluate at zeta_N = e^{2 pi i / N} in double precision
std::complex<double> numeric(const Cyclotomic& c) { return c.to_complex(); }

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

Cyclotomic random_element(std::mt19937& rng, unsigned order) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> pw(0, order - 1);
  Cyclotomic acc = Cyclotomic::zero(order);
  for (int t = 0; t < 4; ++t)
    acc = acc + Cyclotomic::root_of_unity(order, pw(rng)) * make_rational(num(rng), den(rng));
  return acc;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1) == std::vector<Integer>{-1, 1});
  CHECK(cyclotomic_polynomial(4) == std::vector<Integer>{1, 0, 1});
  CHECK(cyclotomic_polynomial(12) == std::vector<Integer>{1, 0, -1, 0, 1});
  CHECK(euler_phi(52) == 24);
  // Phi_n(zeta_n) = 0 numerically
  for (unsigned n : {8u, 12u, 20u, 36u}) {
    auto phi = cyclotomic_polynomial(n);
    std::complex<double> z = std::polar(1.0, 2.0 * std::numbers::pi / n);
    std::complex<double> acc{0, 0};
    for (size_t k = phi.size(); k-- > 0;) acc = acc * z + std::complex<double>(phi[k].get_d());
    CHECK(std::abs(acc) < 1e-9);
  }
}

TEST_CASE("root of unity identities") {
  // zeta_4^2 = -1 (i^2 = -1)
  auto i4 = Cyclotomic::root_of_unity(4, 1);
  CHECK(i4 * i4 == Cyclotomic(4, Rational(-1)));
  // zeta_12^6 = -1
  auto z12 = Cyclotomic::root_of_unity(12, 1);
  CHECK(Cyclotomic::root_of_unity(12, 6) == Cyclotomic(12, Rational(-1)));
  CHECK(Cyclotomic::root_of_unity(12, 6) * Cyclotomic::one(12) == Cyclotomic(12, Rational(-1)));

  // (1+zeta_12)(1-zeta_12) = 1 - zeta_12^2, checked against the numeric oracle
  auto one = Cyclotomic::one(12);
  auto prod = (one + z12) * (one - z12);
  CHECK(prod == one - Cyclotomic::root_of_unity(12, 2));
  CHECK(close(numeric(prod), 1.0 - std::polar(1.0, std::numbers::pi / 3.0)));
}

TEST_CASE("gaussian extraction") {
  auto i4 = Cyclotomic::root_of_unity(4, 1);
  auto g = i4.to_gaussian();
  CHECK(g.re == 0);
  CHECK(g.im == 1);

  // zeta_12^2 + zeta_12^{-2} = 2cos(pi/3) = 1
  auto sum = Cyclotomic::root_of_unity(12, 2) + Cyclotomic::root_of_unity(12, -2);
  CHECK(close(numeric(sum), {1.0, 0.0}));
  auto gs = sum.to_gaussian();
  CHECK(gs.re == 1);
  CHECK(gs.im == 0);

  CHECK_THROWS_AS(Cyclotomic::root_of_unity(12, 1).to_gaussian(), NotGaussianError);
}

TEST_CASE("gaussian round trip") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  for (unsigned order : {4u, 12u, 20u, 24u, 52u}) {
    for (int t = 0; t < 20; ++t) {
      GaussianRational g(make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)));
      auto c = Cyclotomic::from_gaussian(order, g);
      CHECK(c.to_gaussian() == g);
    }
  }
}

TEST_CASE("field laws on random triples") {
  std::mt19937 rng(11);
  for (unsigned order : {4u, 12u, 20u, 36u}) {
    for (int t = 0; t < 12; ++t) {
      auto x = random_element(rng, order);
      auto y = random_element(rng, order);
      auto z = random_element(rng, order);
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(close(numeric(x * y), numeric(x) * numeric(y), 1e-8));
    }
  }
}

TEST_CASE("conjugation and promotion") {
  std::mt19937 rng(13);
  auto x = random_element(rng, 12);
  CHECK(close(numeric(x.conj()), std::conj(numeric(x))));
  auto promoted = x.promoted(36);
  CHECK(close(numeric(promoted), numeric(x)));
  CHECK_THROWS_AS(x.promoted(9), OrderMismatchError);
  auto y = random_element(rng, 36);
  CHECK_THROWS_AS(x * y, OrderMismatchError);
}
