#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lemknot/braid.hpp"
#include "lemknot/field.hpp"
#include "lemknot/hopfion.hpp"
#include "lemknot/semiholo.hpp"

namespace lemknot {

struct DegenerateLeadingError : Error {
  using Error::Error;
};
struct CollisionDetectedError : Error {
  using Error::Error;
};
struct AmbiguousCrossingError : Error {
  using Error::Error;
};
struct NotTransverseError : Error {
  using Error::Error;
};
struct WrongRootCountError : Error {
  using Error::Error;
};
struct CurvesTooCloseError : Error {
  using Error::Error;
};
struct OpenCurveError : Error {
  using Error::Error;
};
struct NoValidLambdaError : Error {
  using Error::Error;
};

// All roots of a complex polynomial (ascending coefficients) by companion
// matrix eigenvalues plus one Newton polish.
std::vector<std::complex<double>> find_roots(
    const std::vector<std::complex<double>>& coeffs);

struct RootTrack {
  std::vector<double> h_grid;  // size steps+1; last = first + 2*pi
  std::vector<std::vector<std::complex<double>>> roots;  // [step][strand]
  std::vector<int> monodromy;  // strand j closes onto strand monodromy[j]
  int monodromy_cycles = 0;
  double min_separation = 0.0;
  double match_residual = 0.0;  // vs analytic strands, when supplied
};

struct TrackOptions {
  int steps = 4096;
  int max_refinements = 4;
  // analytic strands (already at the field's scale) for the residual report
  const std::vector<TrigStrand>* analytic = nullptr;
  double analytic_scale = 1.0;
};

// Roots of f(., exp(i h)) over one period, continuity-assigned. The grid is
// offset slightly below zero so the crossings at h = 2*pi (the convention
// puts them first in the word) land in the first interval.
RootTrack track_braid(const SemiholoPolynomial& f, const TrackOptions& opts = {});

BraidWord recover_braid_word(const RootTrack& track);

// track + recover with automatic step doubling on ambiguous crossings.
BraidWord recover_braid_word_refined(const SemiholoPolynomial& f, TrackOptions opts = {});

struct NodalCurve {
  std::vector<std::array<double, 4>> points;  // (Re u, Im u, Re v, Im v) on S^3_R
  bool closed = false;
  double residual = 0.0;  // max |f| along the curve
};

struct NodalOptions {
  int h_steps = 768;
  double sphere_radius = 1.0;
  double rho_step = 0.01;
  double rho_floor = 0.05;
  double transversality_tol = 1e-6;
  double residual_tol = 1e-8;  // relative to the largest coefficient
  int max_refinements = 3;
};

struct NodalCertificate {
  bool passed = false;
  std::string failure;  // empty when passed
  int components = 0;
  BraidWord word;
  std::vector<NodalCurve> curves;  // one per link component
  double max_residual = 0.0;
  double min_transversality = 0.0;
};

// Certifies that f^{-1}(0) on the radius-R three-sphere is the closed braid:
// for each h the s root branches in decreasing v-modulus cross the sphere in
// exactly s transverse points, which assemble into closed curves whose braid
// word is recovered. Failures are reported, not thrown.
NodalCertificate verify_nodal_on_sphere(const SemiholoPolynomial& f,
                                        const NodalOptions& opts = {});

struct FibrationReport {
  long sample_count = 0;
  long used_samples = 0;
  double min_grad_norm = 0.0;
  std::array<double, 4> argmin{};
  bool margin_positive = false;
  double tolerance = 1e-4;
};

struct FibrationOptions {
  long samples = 200000;
  double tube_radius = 0.05;
  double tolerance = 1e-4;
};

// Ambient R^4 gradient of arg f = Im log f at p = (Re u, Im u, Re v, Im v),
// from the exact partial derivatives. Zero at zeros of f.
std::array<double, 4> arg_gradient(const SemiholoPolynomial& f,
                                   const std::array<double, 4>& p);

// Minimum of |grad_{S^3} arg f| over a deterministic low-discrepancy sample,
// outside a tube around the given nodal curves.
FibrationReport fibration_scan(const SemiholoPolynomial& f,
                               const std::vector<NodalCurve>& nodal,
                               const FibrationOptions& opts = {});

struct LambdaSearchResult {
  Rational best_lambda{0};
  std::vector<std::pair<Rational, bool>> tested;  // (lambda, passed)
};

struct LambdaSearchOptions {
  Rational lambda_max = Rational(2);
  Rational resolution = make_rational(1, 1000);
  NodalOptions nodal;
};

// Bisection for the largest passing lambda. No monotonicity is assumed: the
// certificate covers exactly the lambdas in `tested`.
LambdaSearchResult lambda_threshold_search(const LemniscateSpec& spec,
                                           const LambdaSearchOptions& opts = {});

struct SpaceCurve {
  std::vector<std::array<double, 3>> points;
  bool closed = false;
  double min_jacobian_sv = 0.0;  // regularity evidence along the curve
};

struct TraceOptions {
  double box_half_width = 6.0;
  int seed_grid = 48;
  double step = 0.01;
  int max_steps = 200000;
};

// All closed preimage loops of a target point on S^2, traced by
// predictor-corrector from coarse grid seeds. Curves carry the orientation
// induced by the map.
std::vector<SpaceCurve> trace_preimage(const HopfionField& field,
                                       const std::array<double, 3>& target,
                                       const TraceOptions& opts = {});

struct LinkingResult {
  double raw_integral = 0.0;
  long linking_number = 0;
};

// Discrete Gauss linking integral, exact per segment pair via spherical
// quadrilateral solid angles. Requires |raw - round(raw)| < 0.1.
LinkingResult gauss_linking(const SpaceCurve& a, const SpaceCurve& b);

// Total pairwise linking between two families of loops.
LinkingResult gauss_linking_total(const std::vector<SpaceCurve>& a,
                                  const std::vector<SpaceCurve>& b);

struct MilnorCertificate {
  bool passed = false;
  std::string failure;
  BraidWord word;
  int components = 0;
  double field_residual = 0.0;        // |F| / baseline along the curve
  double min_jacobian_sv = 0.0;       // full-rank evidence of DF on the curve
  NodalCertificate nodal;
};

// Zero set of the rho-power-cleared real polynomial F on the sphere of
// radius rho: runs the nodal certification for f at lambda = rho, scales the
// curve and checks F and its Jacobian on it independently.
MilnorCertificate verify_milnor_sphere(const LemniscateSpec& spec,
                                       const RealPolynomial4& F, const Rational& rho,
                                       const NodalOptions& base_opts = {});

// Same for a holomorphic Brauner field u^p - v^q on the sphere of radius rho.
MilnorCertificate verify_milnor_sphere_brauner(int p, int q, const RealPolynomial4& F,
                                               double rho,
                                               const NodalOptions& base_opts = {});

}  // namespace lemknot
