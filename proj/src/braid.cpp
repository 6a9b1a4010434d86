#include "lemknot/braid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace lemknot {

void LemniscateSpec::validate() const {
  if (s < 2) throw ValidationError("need at least two strands");
  if (r < 1) throw ValidationError("repeat count must be positive");
  if (lobes < 1) throw ValidationError("lobe count must be positive");
  if (s <= lobes)
    throw ValidationError("require s > lobes (an equivalent spec with fewer lobes exists)");
  if (std::gcd(s, lobes) != 1) throw ValidationError("s and lobes must be coprime");
  if (a <= 0) throw ValidationError("a must be positive");
  if (b == 0) throw ValidationError("b must be nonzero");
  if (lambda <= 0) throw ValidationError("lambda must be positive");
}

unsigned LemniscateSpec::cyclotomic_order() const {
  unsigned n = lcm_order(4, 2u * static_cast<unsigned>(s));
  return lcm_order(n, 2u * static_cast<unsigned>(lobes) * static_cast<unsigned>(s));
}

std::optional<Rational> default_lambda(int lobes) {
  if (lobes <= 2) return Rational(1);
  if (lobes == 3) return make_rational(1, 2);
  return std::nullopt;
}

std::vector<TrigStrand> lemniscate_strands(const LemniscateSpec& spec) {
  spec.validate();
  unsigned order = spec.cyclotomic_order();
  Cyclotomic i_unit = Cyclotomic::root_of_unity(order, order / 4);
  std::vector<TrigStrand> strands;
  strands.reserve(spec.s);
  for (int j = 0; j < spec.s; ++j) {
    ExpLaurentPoly x =
        trig_term(TrigKind::Cos, spec.a, spec.r, spec.s, make_rational(j, spec.s));
    ExpLaurentPoly y = trig_term(TrigKind::Sin, spec.b / Rational(spec.lobes),
                                 static_cast<long>(spec.lobes) * spec.r, spec.s,
                                 make_rational(static_cast<long>(spec.lobes) * j, spec.s));
    ExpLaurentPoly z = x.rescaled(order, spec.s) + y.rescaled(order, spec.s) * i_unit;
    strands.push_back(TrigStrand{std::move(z)});
  }
  return strands;
}

std::vector<TrigStrand> rotating_strands(const LemniscateSpec& spec, int n_rot) {
  auto strands = lemniscate_strands(spec);
  if (n_rot == 0) return strands;
  // positive n = clockwise turns of the transverse figure, the convention
  // that closes to the basic word times Delta_s^(-2n)
  for (auto& strand : strands) {
    ExpLaurentPoly shifted(strand.z.order(), strand.z.denominator());
    long shift = -static_cast<long>(n_rot) * strand.z.denominator();
    for (const auto& [m, c] : strand.z.terms()) shifted.add_term(m + shift, c);
    strand.z = std::move(shifted);
  }
  return strands;
}

double min_pairwise_distance(const std::vector<TrigStrand>& strands, int samples) {
  double best = std::numeric_limits<double>::infinity();
  const double tau = 2.0 * std::numbers::pi;
  for (int k = 0; k < samples; ++k) {
    double h = tau * (k + 0.5) / samples;
    for (size_t i = 0; i < strands.size(); ++i) {
      std::complex<double> zi = strands[i].eval(h);
      for (size_t j = i + 1; j < strands.size(); ++j)
        best = std::min(best, std::abs(zi - strands[j].eval(h)));
    }
  }
  return best;
}

std::vector<TrigStrand> cable_strands(const TrigStrand& outer,
                                      const std::vector<TrigStrand>& epicycles,
                                      double min_distance) {
  std::vector<TrigStrand> result;
  result.reserve(epicycles.size());
  for (const auto& epi : epicycles) result.push_back(TrigStrand{outer.z + epi.z});
  if (result.size() > 1 && min_pairwise_distance(result) < min_distance)
    throw StrandCollisionError("cabled strands collide");
  return result;
}

std::vector<TrigStrand> cable_13n4587_strands() {
  const unsigned order = 4;
  auto strand = [&](int outer_sign, const GaussianRational& epi_coeff) {
    ExpLaurentPoly z(order, 4);
    z.add_term(6, Cyclotomic(order, Rational(outer_sign)));  // +-exp(3ih/2)
    z.add_term(1, Cyclotomic::from_gaussian(order, epi_coeff));
    return TrigStrand{std::move(z)};
  };
  Rational q(1, 4);
  std::vector<TrigStrand> strands{
      strand(+1, GaussianRational(Rational(0), q)),
      strand(+1, GaussianRational(Rational(0), -q)),
      strand(-1, GaussianRational(-q, Rational(0))),
      strand(-1, GaussianRational(q, Rational(0))),
  };
  if (min_pairwise_distance(strands) < 1e-6)
    throw StrandCollisionError("cable preset strands collide");
  return strands;
}

std::vector<std::array<double, 3>> closure_curve(const LemniscateSpec& spec, int samples) {
  auto strands = lemniscate_strands(spec);
  double lambda = spec.lambda.get_d();
  const double span = 2.0 * std::numbers::pi * spec.s;
  double max_x = 0.0;
  for (int k = 0; k < samples; ++k)
    max_x = std::max(max_x, std::abs(strands[0].eval(span * k / samples).real()) * lambda);
  double offset = 1.0 + 2.0 * max_x;
  std::vector<std::array<double, 3>> points;
  points.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double h = span * k / samples;
    auto z = strands[0].eval(h);
    double radius = offset + lambda * z.real();
    points.push_back({std::cos(h) * radius, std::sin(h) * radius, lambda * z.imag()});
  }
  return points;
}

void BraidWord::validate() const {
  if (strand_count < 2) throw ValidationError("braid word needs at least 2 strands");
  for (const auto& l : letters)
    if (l.index < 1 || l.index >= strand_count || (l.sign != 1 && l.sign != -1))
      throw ValidationError("braid letter out of range");
}

BraidWord BraidWord::mirrored() const {
  BraidWord w = *this;
  for (auto& l : w.letters) l.sign = -l.sign;
  return w;
}

BraidWord BraidWord::inverse() const {
  BraidWord w{strand_count, {}};
  w.letters.reserve(letters.size());
  for (auto it = letters.rbegin(); it != letters.rend(); ++it)
    w.letters.push_back({it->index, -it->sign});
  return w;
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
  if (a.strand_count != b.strand_count)
    throw ValidationError("cannot concatenate braid words on different strand counts");
  BraidWord w = a;
  w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
  return w;
}

std::string BraidWord::to_string() const {
  std::ostringstream out;
  for (const auto& l : letters) {
    out << "s" << l.index;
    if (l.sign < 0) out << "^-1";
    out << " ";
  }
  std::string s = out.str();
  if (!s.empty()) s.pop_back();
  return s.empty() ? "(empty)" : s;
}

std::vector<int> BraidWord::to_signed_indices() const {
  std::vector<int> out;
  out.reserve(letters.size());
  for (const auto& l : letters) out.push_back(l.sign * l.index);
  return out;
}

BraidWord BraidWord::from_signed_indices(int strand_count, const std::vector<int>& letters) {
  BraidWord w{strand_count, {}};
  for (int v : letters) {
    if (v == 0) throw ValidationError("braid letter cannot be zero");
    w.letters.push_back({v < 0 ? -v : v, v < 0 ? -1 : 1});
  }
  w.validate();
  return w;
}

EpsilonVector crossing_signs(const LemniscateSpec& spec) {
  spec.validate();
  const int s = spec.s;
  const long l = spec.lobes;
  EpsilonVector eps;
  eps.signs.assign(s - 1, 0);
  eps.signs[s - 2] = sgn(spec.b) > 0 ? 1 : -1;
  for (int j = s - 2; j >= 1; --j) {
    // flip iff some integer m satisfies j/s < m/l < (j+1)/s
    long m = (static_cast<long>(j) * l) / s + 1;
    bool flip = m * s < (static_cast<long>(j) + 1) * l;
    eps.signs[j - 1] = flip ? -eps.signs[j] : eps.signs[j];
  }
  for (int v : eps.signs) {
    if (!eps.block_sizes.empty() && eps.block_signs.back() == v) {
      ++eps.block_sizes.back();
    } else {
      eps.block_sizes.push_back(1);
      eps.block_signs.push_back(v);
    }
  }
  return eps;
}

BraidWord braid_word(const LemniscateSpec& spec) {
  EpsilonVector eps = crossing_signs(spec);
  BraidWord w{spec.s, {}};
  for (int rep = 0; rep < spec.r; ++rep) {
    for (int k = 1; k < spec.s; k += 2) w.letters.push_back({k, eps.signs[k - 1]});
    for (int k = 2; k < spec.s; k += 2) w.letters.push_back({k, eps.signs[k - 1]});
  }
  return w;
}

BraidPermutation braid_permutation(const BraidWord& word) {
  word.validate();
  std::vector<int> content(word.strand_count);
  std::iota(content.begin(), content.end(), 0);
  for (const auto& l : word.letters) std::swap(content[l.index - 1], content[l.index]);
  BraidPermutation perm;
  perm.target.assign(word.strand_count, 0);
  for (int pos = 0; pos < word.strand_count; ++pos) perm.target[content[pos]] = pos;
  std::vector<bool> seen(word.strand_count, false);
  for (int i = 0; i < word.strand_count; ++i) {
    if (seen[i]) continue;
    ++perm.cycle_count;
    for (int j = i; !seen[j]; j = perm.target[j]) seen[j] = true;
  }
  return perm;
}

BraidWord fig8_family_minimal_word(int n) {
  if (n < 1) throw ValidationError("family index must be positive");
  BraidWord w{3, {}};
  w.letters.push_back({1, -1});
  for (int i = 0; i < n; ++i) w.letters.push_back({2, 1});
  for (int i = 0; i < n; ++i) w.letters.push_back({1, -1});
  w.letters.push_back({2, 1});
  return w;
}

BraidWord garside_element(int strands) {
  if (strands < 2) throw ValidationError("Garside element needs at least 2 strands");
  BraidWord w{strands, {}};
  for (int i = 1; i < strands; ++i)
    for (int k = i; k >= 1; --k) w.letters.push_back({k, 1});
  return w;
}

std::vector<int> tangle_notation(const EpsilonVector& eps, int r) {
  if (r != 2) throw WrongPeriodError("tangle notation requires a period-2 closure");
  const auto& n = eps.block_sizes;
  if (n.empty()) throw ValidationError("empty epsilon vector");
  int e = eps.block_signs.front();
  size_t lobes = n.size();
  if (lobes == 1) {
    // torus case: single block of s-1 equal crossings closes to the (2,s) tangle
    return {e * (n[0] + 1)};
  }
  std::vector<int> out;
  out.push_back(e * n[0]);
  for (size_t i = 1; i + 1 < lobes; ++i) {
    out.push_back(e);
    out.push_back(e);
    out.push_back(e * (n[i] - 1));
  }
  out.push_back(e);
  out.push_back(e);
  out.push_back(e * n[lobes - 1]);
  return out;
}

std::vector<int> reduced_tangle_notation(const std::vector<int>& tangle) {
  if (tangle.empty()) throw ValidationError("empty tangle");
  std::vector<int> t = tangle;
  if (t.front() < 0)
    for (auto& v : t) v = -v;  // mirror; fine for the achiral families compared to tables
  // continued fraction via continuants, zero entries handled without division
  long p = t[0], q = 1;
  for (size_t i = 1; i < t.size(); ++i) {
    long np = t[i] * p + q;
    q = p;
    p = np;
  }
  if (p <= 0) throw Error("tangle fraction must be positive");
  q = ((q % p) + p) % p;
  if (std::gcd(p, q) != 1) throw Error("tangle fraction is not reduced");
  // q and q^{-1} mod p give the same link; use the smaller representative
  long qinv = 0;
  for (long c = 1; c < p; ++c)
    if ((c * q) % p == 1) {
      qinv = c;
      break;
    }
  long qq = std::min(q, qinv);
  std::vector<int> quotients;
  long a = p, b = qq;
  while (b > 0) {
    quotients.push_back(static_cast<int>(a / b));
    long rem = a % b;
    a = b;
    b = rem;
  }
  std::reverse(quotients.begin(), quotients.end());
  return quotients;
}

namespace {
int smallest_prime_factor(int n) {
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}
}  // namespace

SpiralPrediction spiral_predictions(const LemniscateSpec& spec) {
  spec.validate();
  SpiralPrediction out;
  out.component_count = std::gcd(spec.s, spec.r);
  out.is_knot = out.component_count == 1;
  out.is_fibred = true;
  out.period = spec.r;
  out.unknot = spec.r == 1 && out.component_count == 1;
  out.conjectured_crossing = (spec.r - 1) * (spec.s + spec.lobes - 1);

  int p = spec.r > 1 ? smallest_prime_factor(spec.r) : 0;
  if (spec.r > 1) {
    int m = spec.r;
    while (m % p == 0) m /= p;
    out.r_prime_power = m == 1;
  }
  if (out.is_knot) out.genus_upper = (spec.s - 1) * (spec.r - 1) / 2;
  if (out.r_prime_power && out.is_knot) {
    out.genus_exact = (spec.s - 1) * (spec.r - 1) / 2;
    out.alexander_mod_prime = p;
  }
  if (out.r_prime_power) {
    out.crossing_lower = (spec.s - 1) * (spec.r - 1);  // strict bound
    out.crossing_upper = (spec.s - 1) * spec.r;
  }
  if (spec.r == 2) {
    out.crossing_exact = spec.s + spec.lobes - 1;
    EpsilonVector eps = crossing_signs(spec);
    out.tangle = tangle_notation(eps, 2);
    out.tangle_reduced = reduced_tangle_notation(*out.tangle);
    if (out.is_knot)
      out.braid_index = spec.lobes == 2 ? 2 : spec.lobes + 1;
  }
  if (out.unknot) {
    out.genus_exact = 0;
    out.crossing_exact = 0;
  }
  return out;
}

}  // namespace lemknot
