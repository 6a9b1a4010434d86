#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lemknot/exp_laurent.hpp"

namespace lemknot {

struct StrandCollisionError : Error {
  using Error::Error;
};
struct WrongPeriodError : Error {
  using Error::Error;
};

// Parameters of the lemniscate braid: s strands on a (1,l) Lissajous figure,
// basic pattern repeated r times, stretched by a, b and the overall scale
// lambda. Mirror image for b < 0.
struct LemniscateSpec {
  int s = 3;
  int r = 2;
  int lobes = 2;
  Rational a{1};
  Rational b{1};
  Rational lambda{1};

  void validate() const;
  // lcm(4, 2s, 2*lobes*s): contains i, the strand phases and every constant
  // produced while expanding the strand product.
  unsigned cyclotomic_order() const;
};

// Certified defaults: lambda = 1 for up to two lobes, 1/2 for three. Empty
// for four lobes and more, where only a per-instance threshold search helps.
std::optional<Rational> default_lambda(int lobes);

// One braid strand as an exact finite Fourier sum Z(h).
struct TrigStrand {
  ExpLaurentPoly z;

  std::complex<double> eval(double h) const { return z.eval(h); }
};

std::vector<TrigStrand> lemniscate_strands(const LemniscateSpec& spec);

// Strands multiplied by exp(i h n): the transverse figure makes n full turns
// per braid period.
std::vector<TrigStrand> rotating_strands(const LemniscateSpec& spec, int n_rot);

// Replace one root by a cluster: outer(h) + epicycle_k(h). Throws
// StrandCollisionError if the resulting strands come too close on a dense
// sample of h.
std::vector<TrigStrand> cable_strands(const TrigStrand& outer,
                                      const std::vector<TrigStrand>& epicycles,
                                      double min_distance = 1e-6);

// The four strands of the 13n4587 satellite braid: trefoil roots +-e^{3ih/2}
// cabled with a radius-1/4 epicycle through a quarter turn.
std::vector<TrigStrand> cable_13n4587_strands();

double min_pairwise_distance(const std::vector<TrigStrand>& strands, int samples = 2048);

// Parametrised closure of the braid inside a solid torus: strand 1 swept over
// s periods with the height coordinate wrapped to the azimuth. The offset
// R = 1 + 2 max|X| keeps the radius positive with margin.
std::vector<std::array<double, 3>> closure_curve(const LemniscateSpec& spec,
                                                 int samples = 2000);

struct BraidLetter {
  int index = 1;  // generator k, 1-based
  int sign = 1;   // +1 or -1
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int strand_count = 2;
  std::vector<BraidLetter> letters;

  void validate() const;
  BraidWord mirrored() const;  // all signs flipped
  BraidWord inverse() const;
  friend BraidWord operator*(const BraidWord& a, const BraidWord& b);  // concatenation
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
  std::string to_string() const;
  std::vector<int> to_signed_indices() const;
  static BraidWord from_signed_indices(int strand_count, const std::vector<int>& letters);
};

// Crossing signs eps_1..eps_{s-1} with the grouped block form (n_1..n_l).
struct EpsilonVector {
  std::vector<int> signs;
  std::vector<int> block_sizes;
  std::vector<int> block_signs;
};

EpsilonVector crossing_signs(const LemniscateSpec& spec);

// Basic word: odd generators ascending, then even generators ascending,
// repeated r times.
BraidWord braid_word(const LemniscateSpec& spec);

struct BraidPermutation {
  std::vector<int> target;  // strand starting at position i ends at target[i] (0-based)
  int cycle_count = 0;
};

BraidPermutation braid_permutation(const BraidWord& word);

// sigma_1^{-1} sigma_2^n sigma_1^{-n} sigma_2 on three strands.
BraidWord fig8_family_minimal_word(int n);

// Delta_s = (s_1)(s_2 s_1)...(s_{s-1}...s_1), the positive half twist.
BraidWord garside_element(int strands);

// Conway tangle entries for the r = 2 closure, straight from the grouped
// epsilon blocks. One lobe degenerates to the single torus entry [eps * s].
std::vector<int> tangle_notation(const EpsilonVector& eps, int r);

// Canonical all-positive 2-bridge form of a rational tangle: mirror-normalise,
// take the continued fraction p/q, replace q by min(q, q^{-1} mod p) and
// re-expand. Matches standard table notation.
std::vector<int> reduced_tangle_notation(const std::vector<int>& tangle);

struct SpiralPrediction {
  int component_count = 1;
  bool is_knot = false;
  bool is_fibred = true;
  int period = 1;
  bool r_prime_power = false;
  std::optional<int> genus_exact;          // (s-1)(r-1)/2 when r is a prime power
  std::optional<int> genus_upper;          // always (s-1)(r-1)/2 for knots
  std::optional<int> crossing_exact;       // s + lobes - 1 when r = 2
  std::optional<int> crossing_lower;       // strict: c > (s-1)(r-1), prime-power r
  std::optional<int> crossing_upper;       // c <= (s-1) r, prime-power r
  std::optional<int> braid_index;          // r = 2 knots only
  std::optional<std::vector<int>> tangle;  // r = 2 only
  std::optional<std::vector<int>> tangle_reduced;
  // Modulus and target for Delta = (1+t+...+t^{s-1})^{r-1} mod p.
  std::optional<int> alexander_mod_prime;
  bool unknot = false;  // r = 1 single component
  int conjectured_crossing = 0;  // (r-1)(s+lobes-1); advisory only
  bool conjectural = true;       // marks the field above as unproven
};

SpiralPrediction spiral_predictions(const LemniscateSpec& spec);

}  // namespace lemknot
