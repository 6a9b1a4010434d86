#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "lemknot/burau.hpp"
#include "lemknot/verify.hpp"

using namespace lemknot;

namespace {
LemniscateSpec spec_of(int s, int r, int l, Rational lambda = Rational(1)) {
  return LemniscateSpec{s, r, l, Rational(1), Rational(1), std::move(lambda)};
}

SemiholoPolynomial monomial_field(std::initializer_list<std::tuple<int, int, int, long>> terms) {
  SemiholoPolynomial f;
  for (auto [eu, ev, evb, c] : terms)
    f.add_term({eu, ev, evb}, GaussianRational(Rational(c)));
  return f;
}
}  // namespace

TEST_CASE("find_roots") {
  using C = std::complex<double>;
  auto r1 = find_roots({C{-1, 0}, C{0, 0}, C{1, 0}});  // u^2 - 1
  REQUIRE(r1.size() == 2);
  CHECK(std::abs(r1[0] - C{-1, 0}) < 1e-12);
  CHECK(std::abs(r1[1] - C{1, 0}) < 1e-12);

  auto r2 = find_roots({C{1, 0}, C{0, 0}, C{1, 0}});  // u^2 + 1
  REQUIRE(r2.size() == 2);
  CHECK(std::abs(r2[0].imag() + 1.0) < 1e-12);
  CHECK(std::abs(r2[1].imag() - 1.0) < 1e-12);

  CHECK_THROWS_AS(find_roots({C{1, 0}, C{1, 0}, C{1e-15, 0}}), DegenerateLeadingError);

  // cubic with the figure-8 h=0 coefficients reproduces the strand points
  auto strands = lemniscate_strands(spec_of(3, 2, 2));
  auto f = build_field(spec_of(3, 2, 2));
  auto roots = find_roots(f.u_coefficients({1.0, 0.0}));
  for (const auto& s : strands) {
    double best = 1e9;
    for (const auto& r : roots) best = std::min(best, std::abs(r - s.eval(0.0)));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("track_braid follows the analytic strands") {
  auto spec = spec_of(2, 3, 1);
  auto strands = lemniscate_strands(spec);
  auto f = build_field(spec);
  TrackOptions opts;
  opts.steps = 1024;
  opts.analytic = &strands;
  auto track = track_braid(f, opts);
  CHECK(track.match_residual < 1e-9);
  CHECK(track.monodromy_cycles == 1);

  TrackOptions plain;
  plain.steps = 1024;
  auto fig8 = track_braid(build_field(spec_of(3, 2, 2)), plain);
  CHECK(fig8.monodromy_cycles == 1);
  CHECK(fig8.min_separation > 0.05);
}

TEST_CASE("braid words recovered from root tracking") {
  auto word_of = [](const LemniscateSpec& spec) {
    TrackOptions opts;
    opts.steps = 1024;
    return recover_braid_word_refined(build_field(spec), opts);
  };
  CHECK(word_of(spec_of(3, 2, 2)).to_signed_indices() == std::vector<int>{-1, 2, -1, 2});
  CHECK(word_of(spec_of(2, 3, 1)).to_signed_indices() == std::vector<int>{1, 1, 1});
  CHECK(word_of(spec_of(4, 2, 3, make_rational(1, 2))).to_signed_indices() ==
        std::vector<int>{1, 3, -2, 1, 3, -2});

  // mirror braid: flipping b flips every crossing
  LemniscateSpec mirror = spec_of(3, 2, 2);
  mirror.b = Rational(-1);
  TrackOptions opts;
  opts.steps = 1024;
  CHECK(recover_braid_word_refined(build_field(mirror), opts).to_signed_indices() ==
        std::vector<int>{1, -2, 1, -2});
}

TEST_CASE("recovered words match constructed words on a small grid") {
  for (int s = 2; s <= 5; ++s)
    for (int r = 1; r <= 3; ++r)
      for (int l : {1, 2, 3}) {
        if (std::gcd(s, l) != 1 || s <= l) continue;
        auto spec = spec_of(s, r, l, *default_lambda(l));
        auto f = build_field(spec);
        TrackOptions opts;
        opts.steps = 1024;
        auto recovered = recover_braid_word_refined(f, opts);
        CHECK(recovered == braid_word(spec));
        auto track = track_braid(f, opts);
        CHECK(track.monodromy_cycles == std::gcd(s, r));
      }
}

TEST_CASE("cable braid tracks cleanly") {
  auto f = build_field(cable_13n4587_strands(), Rational(1));
  TrackOptions opts;
  opts.steps = 2048;
  auto track = track_braid(f, opts);
  CHECK(track.monodromy_cycles == 1);  // 13n4587 is a knot
  auto word = recover_braid_word(track);
  CHECK(word.strand_count == 4);
  CHECK(braid_permutation(word).cycle_count == 1);
}

TEST_CASE("nodal certification on the unit sphere") {
  NodalOptions opts;
  opts.h_steps = 384;

  auto fig8 = verify_nodal_on_sphere(build_field(spec_of(3, 2, 2)), opts);
  REQUIRE(fig8.passed);
  CHECK(fig8.components == 1);
  CHECK(fig8.word == braid_word(spec_of(3, 2, 2)));
  CHECK(fig8.curves.front().closed);
  CHECK(fig8.max_residual < 1e-8 * 64.0);

  auto link = verify_nodal_on_sphere(build_field(spec_of(4, 2, 3, make_rational(1, 2))), opts);
  REQUIRE(link.passed);
  CHECK(link.components == 2);
  CHECK(link.word == braid_word(spec_of(4, 2, 3)));

  // negative control: lambda = 100 must not certify the same braid
  auto big = verify_nodal_on_sphere(build_field(spec_of(3, 2, 2, Rational(100))), opts);
  bool failed_somewhere = !big.passed || big.word != braid_word(spec_of(3, 2, 2)) ||
                          big.components != 1;
  CHECK(failed_somewhere);
}

TEST_CASE("fibration scans") {
  FibrationOptions opts;
  opts.samples = 20000;

  // torus u^2 - v^3 fibres
  auto torus = monomial_field({{2, 0, 0, 1}, {0, 3, 0, -1}});
  NodalOptions nodal_opts;
  nodal_opts.h_steps = 256;
  auto cert = verify_nodal_on_sphere(torus, nodal_opts);
  REQUIRE(cert.passed);
  auto rep = fibration_scan(torus, cert.curves, opts);
  CHECK(rep.margin_positive);
  CHECK(rep.min_grad_norm > 1e-3);

  auto fig8 = build_field(spec_of(3, 2, 2));
  auto cert8 = verify_nodal_on_sphere(fig8, nodal_opts);
  REQUIRE(cert8.passed);
  auto rep8 = fibration_scan(fig8, cert8.curves, opts);
  CHECK(rep8.margin_positive);

  // degenerate control: constant field has identically zero phase gradient
  auto constant = monomial_field({{0, 0, 0, 1}});
  auto repc = fibration_scan(constant, {}, opts);
  CHECK_FALSE(repc.margin_positive);
  CHECK(repc.min_grad_norm == 0.0);
}

TEST_CASE("lambda threshold search reaches the certified default scales") {
  LambdaSearchOptions opts;
  opts.nodal.h_steps = 192;
  opts.lambda_max = Rational(2);

  auto torus = lambda_threshold_search(spec_of(2, 3, 1), opts);
  CHECK(torus.best_lambda >= make_rational(1, 2));
  for (const auto& [lambda, ok] : torus.tested)
    if (lambda <= make_rational(1, 2)) CHECK(ok);

  auto fig8 = lambda_threshold_search(spec_of(3, 2, 2), opts);
  CHECK(fig8.best_lambda >= Rational(1));
}

TEST_CASE("gauss linking of canonical curves") {
  auto circle = [](double radius, int n, std::array<double, 3> centre, bool xz) {
    SpaceCurve c;
    c.closed = true;
    for (int k = 0; k < n; ++k) {
      double t = 2.0 * std::numbers::pi * k / n;
      if (xz)
        c.points.push_back({centre[0] + radius * std::cos(t), centre[1],
                            centre[2] + radius * std::sin(t)});
      else
        c.points.push_back({centre[0] + radius * std::cos(t),
                            centre[1] + radius * std::sin(t), centre[2]});
    }
    return c;
  };

  // far-apart rings do not link
  auto a = circle(1.0, 200, {0, 0, 0}, false);
  auto b = circle(1.0, 200, {5, 0, 0}, true);
  auto unlinked = gauss_linking(a, b);
  CHECK(unlinked.linking_number == 0);
  CHECK(std::abs(unlinked.raw_integral) < 0.01);

  // canonical Hopf pair: unit circles in orthogonal planes through centres
  auto h1 = circle(1.0, 256, {0, 0, 0}, false);
  auto h2 = circle(1.0, 256, {1, 0, 0}, true);
  auto hopf = gauss_linking(h1, h2);
  CHECK(std::abs(hopf.linking_number) == 1);
  CHECK(std::abs(std::abs(hopf.raw_integral) - 1.0) < 0.01);

  // too-close curves are rejected
  auto c1 = circle(1.0, 64, {0, 0, 0}, false);
  auto c2 = circle(1.001, 64, {0, 0, 0}, false);
  CHECK_THROWS_AS(gauss_linking(c1, c2), CurvesTooCloseError);
}

TEST_CASE("planar ring preimages and their linking") {
  // W = v / u: the axially symmetric ring with charge 1
  HopfionSpec h;
  h.f = monomial_field({{1, 0, 0, 1}});
  h.numerator_power = 1;
  HopfionField field(h);
  CHECK(h.predicted_charge() == 1);

  TraceOptions opts;
  opts.box_half_width = 3.0;
  opts.seed_grid = 24;
  opts.step = 0.02;

  // preimage of the hopfion locus (0,0,-1) is the u = 0 circle
  auto south = trace_preimage(field, {0, 0, -1}, opts);
  REQUIRE(south.size() == 1);
  CHECK(south[0].closed);
  double d0 = 0.0;
  for (const auto& p : south[0].points) {
    CHECK(std::abs(p[2]) < 1e-6);
    d0 = std::max(d0, std::abs(std::hypot(p[0], p[1]) -
                               std::hypot(south[0].points[0][0], south[0].points[0][1])));
  }
  CHECK(d0 < 1e-5);

  auto equator = trace_preimage(field, {1, 0, 0}, opts);
  REQUIRE(!equator.empty());

  auto lk = gauss_linking_total(south, equator);
  CHECK(lk.linking_number == h.predicted_charge());
}

TEST_CASE("milnor sphere certification") {
  auto spec = spec_of(3, 2, 2);
  auto F = milnor_polynomial(build_field(spec), spec);
  NodalOptions opts;
  opts.h_steps = 256;
  auto cert = verify_milnor_sphere(spec, F, make_rational(1, 10), opts);
  REQUIRE(cert.passed);
  CHECK(cert.word == braid_word(spec));
  CHECK(cert.field_residual < 1e-6);
  CHECK(cert.min_jacobian_sv > 0.0);

  // Brauner trefoil on the half-unit sphere
  auto Fb = real_pair_of_holomorphic(monomial_field({{2, 0, 0, 1}, {0, 3, 0, -1}}));
  auto brauner = verify_milnor_sphere_brauner(2, 3, Fb, 0.5, opts);
  REQUIRE(brauner.passed);
  CHECK(brauner.word.to_signed_indices() == std::vector<int>{1, 1, 1});
}

TEST_CASE("phase gradient against branch-safe central differences") {
  auto fig8 = build_field(spec_of(3, 2, 2));
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.1, 1.1);
  const double eps = 1e-6;
  int checked = 0;
  for (int t = 0; t < 2000 && checked < 1000; ++t) {
    std::array<double, 4> p{dist(rng), dist(rng), dist(rng), dist(rng)};
    auto value = fig8.value({p[0], p[1]}, {p[2], p[3]});
    if (std::abs(value) < 0.3) continue;  // stay away from the zero set
    ++checked;
    auto grad = arg_gradient(fig8, p);
    for (int d = 0; d < 4; ++d) {
      auto pp = p, pm = p;
      pp[d] += eps;
      pm[d] -= eps;
      auto fp = fig8.value({pp[0], pp[1]}, {pp[2], pp[3]});
      auto fm = fig8.value({pm[0], pm[1]}, {pm[2], pm[3]});
      double fd = std::arg(fp / fm) / (2 * eps);
      CHECK(std::abs(fd - grad[d]) <= 1e-5 * (1.0 + std::abs(grad[d])));
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("rotating closure matches the Garside-twisted word invariants") {
  LemniscateSpec spec = spec_of(3, 2, 2);
  auto strands = rotating_strands(spec, 1);
  auto f = build_field(strands, spec.lambda);
  TrackOptions opts;
  opts.steps = 2048;
  auto recovered = recover_braid_word_refined(f, opts);

  BraidWord expect = braid_word(spec);
  BraidWord delta = garside_element(3);
  expect = expect * delta.inverse() * delta.inverse();

  // literal letters differ by braid relations; compare the invariants
  auto perm_a = braid_permutation(recovered);
  auto perm_b = braid_permutation(expect);
  CHECK(perm_a.target == perm_b.target);
  int writhe_a = 0, writhe_b = 0;
  for (const auto& l : recovered.letters) writhe_a += l.sign;
  for (const auto& l : expect.letters) writhe_b += l.sign;
  CHECK(writhe_a == writhe_b);
  // the closure is the granny of two left trefoils: Delta = (t - 1 + 1/t)^2
  auto granny = alexander_from_braid(recovered);
  IntLaurentPoly trefoil;
  trefoil.add_term(-1, Integer(1));
  trefoil.add_term(0, Integer(-1));
  trefoil.add_term(1, Integer(1));
  CHECK(granny == trefoil * trefoil);
  CHECK(alexander_from_braid(expect) == trefoil * trefoil);
}

TEST_CASE("hopfion charges from exact lemniscate denominators") {
  // Q = N s for the exact figure-8 field with N = 1
  HopfionSpec h;
  h.f = build_field(spec_of(3, 2, 2));
  h.numerator_power = 1;
  HopfionField field(h);
  CHECK(h.predicted_charge() == 3);
  TraceOptions opts;
  opts.box_half_width = 6.0;
  opts.seed_grid = 64;
  opts.step = 0.01;
  auto south = trace_preimage(field, {0, 0, -1}, opts);
  auto other = trace_preimage(field, {1, 0, 0}, opts);
  REQUIRE(!south.empty());
  REQUIRE(!other.empty());
  auto lk = gauss_linking_total(south, other);
  CHECK(lk.linking_number == 3);
  CHECK(std::abs(lk.raw_integral - 3.0) < 0.1);
}

TEST_CASE("preimage tracing reports an open curve when the box is too small") {
  HopfionSpec h;
  h.f = SemiholoPolynomial::monomial(1, 0, 0, GaussianRational(Rational(1)));
  h.numerator_power = 1;
  HopfionField field(h);
  TraceOptions opts;
  opts.box_half_width = 0.8;  // the u = 0 ring has radius ~0.88
  opts.seed_grid = 16;
  opts.step = 0.02;
  bool open_or_empty = false;
  try {
    auto curves = trace_preimage(field, {0, 0, -1}, opts);
    open_or_empty = curves.empty();
  } catch (const OpenCurveError&) {
    open_or_empty = true;
  }
  CHECK(open_or_empty);
}

TEST_CASE("track monodromy equals the word permutation for odd strand counts") {
  // track indices are x-ordered at the window start, which for odd s is the
  // same labelling the word's permutation acts on
  for (auto [s, r, l] : {std::array<int, 3>{3, 2, 2}, {5, 3, 2}, {7, 2, 3}, {5, 4, 1}}) {
    auto spec = spec_of(s, r, l, *default_lambda(l));
    TrackOptions opts;
    opts.steps = 1024;
    auto track = track_braid(build_field(spec), opts);
    auto perm = braid_permutation(braid_word(spec));
    CHECK(track.monodromy == perm.target);
  }
}
