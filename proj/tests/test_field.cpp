#include <doctest.h>

#include <numeric>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "lemknot/field.hpp"
#include "lemknot/hopfion.hpp"

using namespace lemknot;

namespace {
GaussianRational gr(long num, long den = 1) { return GaussianRational(make_rational(num, den)); }

bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

// published coefficient tables, up to the positive clearing scalar
SemiholoPolynomial f5r2_published(int r) {
  SemiholoPolynomial f;
  f.add_term({5, 0, 0}, gr(1024));
  f.add_term({3, 0, 0}, gr(-960));
  f.add_term({2, r, 0}, gr(-160));
  f.add_term({2, 0, r}, gr(-160));
  f.add_term({1, 0, 0}, gr(420));
  f.add_term({1, r, 0}, gr(-200));
  f.add_term({1, 0, r}, gr(200));
  f.add_term({0, r, 0}, gr(-82));
  f.add_term({0, 0, r}, gr(-82));
  f.add_term({0, 2 * r, 0}, gr(-1));
  f.add_term({0, 0, 2 * r}, gr(1));
  return f;
}

SemiholoPolynomial f4r3_published(int r) {
  SemiholoPolynomial f;
  f.add_term({4, 0, 0}, gr(20736));
  f.add_term({2, 0, 0}, gr(-4608));
  f.add_term({2, r, 0}, gr(-1728));
  f.add_term({2, 0, r}, gr(1728));
  f.add_term({0, 0, 0}, gr(92));
  f.add_term({0, r, 0}, gr(-39));
  f.add_term({0, 0, r}, gr(-231));
  f.add_term({0, 2 * r, 0}, gr(6));
  f.add_term({0, 0, 2 * r}, gr(30));
  f.add_term({0, 3 * r, 0}, gr(-1));
  f.add_term({0, 0, 3 * r}, gr(-1));
  return f;
}
}  // namespace

TEST_CASE("five-strand two-lobe fields match the published table") {
  for (int r = 1; r <= 3; ++r) {
    LemniscateSpec spec{5, r, 2, Rational(1), Rational(1), Rational(1)};
    auto [fi, clearing] = integerize(build_field(spec));
    CHECK(fi == f5r2_published(r));
  }
}

TEST_CASE("four-strand three-lobe fields match the published table") {
  for (int r = 1; r <= 3; ++r) {
    // published normalisation uses a = b = 1/2, i.e. lambda = 1/2 on unit a, b
    LemniscateSpec spec{4, r, 3, Rational(1), Rational(1), make_rational(1, 2)};
    auto [fi, clearing] = integerize(build_field(spec));
    CHECK(fi == f4r3_published(r));
  }
}

TEST_CASE("cable field matches the published polynomial") {
  auto f = build_field(cable_13n4587_strands(), Rational(1));
  auto [fi, clearing] = integerize(f);
  CHECK(clearing == 256);
  SemiholoPolynomial expect;
  expect.add_term({4, 0, 0}, gr(256));
  expect.add_term({2, 3, 0}, gr(-512));
  expect.add_term({1, 2, 0}, gr(64));
  expect.add_term({0, 1, 0}, gr(-1));
  expect.add_term({0, 6, 0}, gr(256));
  CHECK(fi == expect);
}

TEST_CASE("borromean field is the figure-8 field with v^2 -> v^3") {
  LemniscateSpec fig8{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  LemniscateSpec borr{3, 3, 2, Rational(1), Rational(1), Rational(1)};
  auto f2 = build_field(fig8);
  auto f3 = build_field(borr);
  for (const auto& [m, c] : f2.terms()) {
    SemiholoMonomial swapped{m.eu, m.ev * 3 / 2, m.evb * 3 / 2};
    CHECK(f3.coefficient(swapped.eu, swapped.ev, swapped.evb) == c);
  }
  CHECK(f2.terms().size() == f3.terms().size());
}

TEST_CASE("stereographic substitution") {
  // f = u: numerator (r^2 - 1) + 2iz
  SemiholoPolynomial fu;
  fu.add_term({1, 0, 0}, gr(1));
  auto s = stereographic_substitute(fu);
  CHECK(s.exact.at({2, 0, 0}) == gr(1));
  CHECK(s.exact.at({0, 2, 0}) == gr(1));
  CHECK(s.exact.at({0, 0, 2}) == gr(1));
  CHECK(s.exact.at({0, 0, 0}) == gr(-1));
  CHECK(s.exact.at({0, 0, 1}) == GaussianRational(Rational(0), Rational(2)));
  CHECK(s.exact.size() == 5);

  // f = v: numerator 2(x + iy)
  SemiholoPolynomial fv;
  fv.add_term({0, 1, 0}, gr(1));
  auto sv = stereographic_substitute(fv);
  CHECK(sv.exact.at({1, 0, 0}) == gr(2));
  CHECK(sv.exact.at({0, 1, 0}) == GaussianRational(Rational(0), Rational(2)));
  CHECK(sv.exact.size() == 2);

  // numerator equals f evaluated through the projection, times (r^2+1)^d
  SemiholoPolynomial trefoil;
  trefoil.add_term({2, 0, 0}, gr(1));
  trefoil.add_term({0, 3, 0}, gr(-1));
  auto st = stereographic_substitute(trefoil);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.5, 1.5);
  for (int t = 0; t < 40; ++t) {
    double x = dist(rng), y = dist(rng), z = dist(rng);
    double r2 = x * x + y * y + z * z;
    std::complex<double> u{(r2 - 1) / (r2 + 1), 2 * z / (r2 + 1)};
    std::complex<double> v{2 * x / (r2 + 1), 2 * y / (r2 + 1)};
    std::complex<double> expect =
        trefoil.value(u, v) * std::pow(r2 + 1.0, st.cleared_power);
    CHECK(close(st.eval(x, y, z), expect, 1e-9));
  }
}

TEST_CASE("milnor polynomial of the figure-8 field") {
  LemniscateSpec spec{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  auto f1 = build_field(spec);
  auto F = milnor_polynomial(f1, spec);

  // F(0) = 0 with a rank-deficient Jacobian at the origin
  auto zero = F.eval({0, 0, 0, 0});
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);
  auto jac = F.jacobian({0, 0, 0, 0});
  for (int row = 0; row < 2; ++row)
    for (int d = 0; d < 4; ++d) CHECK(jac[row][d] == 0.0);

  // on a sphere of radius rho, F equals rho^K f_rho(u/rho, v/rho)
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (double rho : {0.3, 0.08}) {
    LemniscateSpec scaled = spec;
    scaled.lambda = make_rational(static_cast<long>(rho * 100), 100);
    double rho_exact = scaled.lambda.get_d();
    auto f_rho = build_field(scaled);
    for (int t = 0; t < 25; ++t) {
      std::array<double, 4> p{dist(rng), dist(rng), dist(rng), dist(rng)};
      double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]);
      for (auto& c : p) c *= rho_exact / n;
      auto val = F.eval(p);
      std::complex<double> expect =
          std::pow(rho_exact, F.rho_power) *
          f_rho.value({p[0] / rho_exact, p[1] / rho_exact},
                      {p[2] / rho_exact, p[3] / rho_exact});
      CHECK(close({val[0], val[1]}, expect, 1e-9));
    }
  }

  // odd repeat count is rejected
  LemniscateSpec odd{3, 3, 2, Rational(1), Rational(1), Rational(1)};
  CHECK_THROWS_AS(milnor_polynomial(build_field(odd), odd), OddRepeatsError);
}

TEST_CASE("jacobian of the real pair against finite differences") {
  LemniscateSpec spec{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  auto F = milnor_polynomial(build_field(spec), spec);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-0.7, 0.7);
  const double eps = 1e-6;
  for (int t = 0; t < 20; ++t) {
    std::array<double, 4> x{dist(rng), dist(rng), dist(rng), dist(rng)};
    auto jac = F.jacobian(x);
    for (int d = 0; d < 4; ++d) {
      auto xp = x, xm = x;
      xp[d] += eps;
      xm[d] -= eps;
      auto vp = F.eval(xp), vm = F.eval(xm);
      CHECK(std::abs((vp[0] - vm[0]) / (2 * eps) - jac[0][d]) < 1e-5 * (1 + std::abs(jac[0][d])));
      CHECK(std::abs((vp[1] - vm[1]) / (2 * eps) - jac[1][d]) < 1e-5 * (1 + std::abs(jac[1][d])));
    }
  }
}

TEST_CASE("hopfion boundary behaviour and charge prediction") {
  LemniscateSpec spec{3, 2, 2, Rational(1), Rational(1), Rational(1)};
  HopfionSpec h;
  h.f = build_field(spec);
  h.numerator_power = 1;
  HopfionField field(h);

  CHECK(h.predicted_charge() == 3);

  // far away: vacuum (0, 0, 1)
  auto far = field.phi({40.0, 3.0, -11.0});
  CHECK(std::abs(far[0]) < 1e-6);
  CHECK(std::abs(far[1]) < 1e-6);
  CHECK(far[2] > 1.0 - 1e-6);

  // profile boundary conditions
  auto d = default_profile();
  CHECK(std::abs(d(0.0) - std::numbers::pi) < 1e-12);
  CHECK(d(40.0) < 1e-12);
  for (double r = 0.0; r < 5.0; r += 0.25) CHECK(d(r) > d(r + 0.25));

  // the (u, v) map lands on the unit three-sphere
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int t = 0; t < 50; ++t) {
    auto uv = field.uv({dist(rng), dist(rng), dist(rng)});
    CHECK(std::abs(std::norm(uv[0]) + std::norm(uv[1]) - 1.0) < 1e-9);
  }

  // unit phi everywhere
  for (int t = 0; t < 50; ++t) {
    auto p = field.phi({dist(rng), dist(rng), dist(rng)});
    CHECK(std::abs(p[0] * p[0] + p[1] * p[1] + p[2] * p[2] - 1.0) < 1e-9);
  }

  HopfionSpec multi = h;
  multi.numerator_power = 2;
  multi.multiplicity = 2;
  CHECK(multi.predicted_charge() == 12);
}
