#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "lemknot/braid.hpp"
#include "lemknot/field.hpp"
#include "lemknot/semiholo.hpp"

using namespace lemknot;

namespace {
bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

GaussianRational gr(long num, long den = 1) { return GaussianRational(make_rational(num, den)); }
}  // namespace

TEST_CASE("torus product collapses to u^s - (lambda a)^s v^r") {
  LemniscateSpec spec{2, 3, 1, Rational(1), Rational(1), Rational(1)};
  auto f = build_field(spec);
  CHECK(f.terms().size() == 2);
  CHECK(f.coefficient(2, 0, 0) == gr(1));
  CHECK(f.coefficient(0, 3, 0) == gr(-1));

  // the constant multiplies out as a^s, not a (product of s roots of radius a)
  LemniscateSpec stretched{2, 3, 1, make_rational(3, 2), make_rational(3, 2), Rational(1)};
  auto g = build_field(stretched);
  CHECK(g.coefficient(0, 3, 0) == gr(-9, 4));
}

TEST_CASE("to_semiholo rejects corrupted strand data") {
  // lone strand at half frequency: exponent 1 over denominator 2
  ExpLaurentPoly z(4, 2);
  z.add_term(1, Cyclotomic::one(4));
  auto p = braid_polynomial({TrigStrand{z}}, Rational(1));
  CHECK_THROWS_AS(to_semiholo(p), NonIntegerExponentError);

  // lone strand with a zeta_12 phase: coefficient outside Q(i)
  ExpLaurentPoly w(12, 1);
  w.add_term(1, Cyclotomic::root_of_unity(12, 1));
  auto q = braid_polynomial({TrigStrand{w}}, Rational(1));
  CHECK_THROWS_AS(to_semiholo(q), NotGaussianError);

  // constant passes through untouched
  auto c = BraidHeightPolynomial::one(4);
  auto fc = to_semiholo(c);
  CHECK(fc.coefficient(0, 0, 0) == gr(1));
}

TEST_CASE("figure-8 field matches the published coefficients") {
  LemniscateSpec spec{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  auto f = build_field(spec);
  auto [fi, clearing] = integerize(f);
  CHECK(clearing == 64);
  // 64u^3 - 36u - 24uv^2 + 24u vb^2 - 14v^2 - 14vb^2 - v^4 + vb^4
  CHECK(fi.coefficient(3, 0, 0) == gr(64));
  CHECK(fi.coefficient(1, 0, 0) == gr(-36));
  CHECK(fi.coefficient(1, 2, 0) == gr(-24));
  CHECK(fi.coefficient(1, 0, 2) == gr(24));
  CHECK(fi.coefficient(0, 2, 0) == gr(-14));
  CHECK(fi.coefficient(0, 0, 2) == gr(-14));
  CHECK(fi.coefficient(0, 4, 0) == gr(-1));
  CHECK(fi.coefficient(0, 0, 4) == gr(1));
  CHECK(fi.terms().size() == 8);
}

TEST_CASE("no term mixes v and conj(v) across the grid") {
  for (int s = 2; s <= 9; ++s)
    for (int l : {1, 2, 3}) {
      if (std::gcd(s, l) != 1 || s <= l) continue;
      LemniscateSpec spec{s, 2, l, Rational(1), Rational(1), Rational(1)};
      auto f = build_field(spec);  // throws on violation as well
      for (const auto& [m, c] : f.terms()) CHECK((m.ev == 0 || m.evb == 0));
    }
}

TEST_CASE("degree laws across the grid") {
  for (int s = 2; s <= 7; ++s)
    for (int r = 1; r <= 4; ++r)
      for (int l : {1, 2, 3}) {
        if (std::gcd(s, l) != 1 || s <= l) continue;
        LemniscateSpec spec{s, r, l, Rational(1), Rational(1), Rational(1)};
        auto f = build_field(spec);
        CHECK(f.degree_u() == s);
        CHECK(f.degree_v_vbar() == r * l);
      }
}

TEST_CASE("reality on the unit circle: field equals the strand product") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> real(-1.2, 1.2);
  for (auto [s, r, l] : {std::array<int, 3>{3, 2, 2}, {5, 2, 2}, {4, 3, 3}}) {
    LemniscateSpec spec{s, r, l, Rational(1), Rational(1), Rational(1)};
    auto strands = lemniscate_strands(spec);
    auto f = build_field(spec);
    for (int t = 0; t < 100; ++t) {
      double h = real(rng) * 3.0;
      std::complex<double> u{real(rng), real(rng)};
      std::complex<double> expect{1.0, 0.0};
      for (const auto& z : strands) expect *= (u - z.eval(h));
      CHECK(close(f.value(u, std::polar(1.0, h)), expect));
    }
  }
}

TEST_CASE("scaling identity f_lambda(u,v) = lambda^s f_1(u/lambda, v)") {
  for (auto [s, r, l] : {std::array<int, 3>{3, 2, 2}, {4, 2, 3}}) {
    LemniscateSpec unit{s, r, l, Rational(1), Rational(1), Rational(1)};
    LemniscateSpec scaled = unit;
    scaled.lambda = make_rational(1, 2);
    CHECK(build_field(scaled) == rescale_u(build_field(unit), make_rational(1, 2)));
  }
}

TEST_CASE("evaluate partials against central differences") {
  LemniscateSpec spec{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  auto f = build_field(spec);

  SemiholoPolynomial g;
  g.add_term({2, 0, 0}, gr(1));
  g.add_term({0, 3, 0}, gr(-1));
  auto at = g.evaluate({1.0, 0.0}, {1.0, 0.0});
  CHECK(close(at.f, 0.0));
  CHECK(close(at.fu, 2.0));

  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-0.9, 0.9);
  const double eps = 1e-6;
  for (int t = 0; t < 30; ++t) {
    std::complex<double> u{dist(rng), dist(rng)};
    std::complex<double> v{dist(rng), dist(rng)};
    auto ev = f.evaluate(u, v);
    std::complex<double> du = (f.value(u + eps, v) - f.value(u - eps, v)) / (2 * eps);
    CHECK(std::abs(du - ev.fu) <= 1e-6 * (1.0 + std::abs(ev.fu)));
    // d/dRe(v) = fv + fvb, d/dIm(v) = i(fv - fvb)
    std::complex<double> dre = (f.value(u, v + eps) - f.value(u, v - eps)) / (2 * eps);
    std::complex<double> dim = (f.value(u, v + std::complex<double>{0, eps}) -
                                f.value(u, v - std::complex<double>{0, eps})) /
                               (2 * eps);
    CHECK(std::abs(dre - (ev.fv + ev.fvb)) <= 1e-6 * (1.0 + std::abs(dre)));
    std::complex<double> expected_dim = std::complex<double>{0, 1} * (ev.fv - ev.fvb);
    CHECK(std::abs(dim - expected_dim) <= 1e-6 * (1.0 + std::abs(dim)));
  }

  // root of the defining product at h = 0 lies on the zero set
  auto strands = lemniscate_strands(spec);
  auto z0 = strands[0].eval(0.0);
  CHECK(std::abs(f.value(z0, {1.0, 0.0})) < 1e-10);
}

TEST_CASE("integerize") {
  SemiholoPolynomial f;
  f.add_term({3, 0, 0}, gr(1));
  f.add_term({0, 0, 0}, gr(-3, 4));
  auto [g, c] = integerize(f);
  CHECK(c == 4);
  CHECK(g.coefficient(3, 0, 0) == gr(4));
  CHECK(g.coefficient(0, 0, 0) == gr(-3));

  auto [g2, c2] = integerize(g);
  CHECK(c2 == 1);
  CHECK(g2 == g);
}
