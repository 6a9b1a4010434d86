#include "lemknot/burau.hpp"

#include <algorithm>
#include <numeric>

namespace lemknot {

BurauMatrix::BurauMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {}

BurauMatrix BurauMatrix::identity(int n) {
  BurauMatrix m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = RatLaurentPoly(Rational(1));
  return m;
}

BurauMatrix operator*(const BurauMatrix& a, const BurauMatrix& b) {
  if (a.n_ != b.n_) throw Error("Burau size mismatch");
  BurauMatrix r(a.n_);
  for (int i = 0; i < a.n_; ++i)
    for (int k = 0; k < a.n_; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (int j = 0; j < a.n_; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a.at(i, k) * b.at(k, j);
      }
    }
  return r;
}

BurauMatrix burau_of_letter(int k, int sign, int strands) {
  if (k < 1 || k >= strands) throw ValidationError("generator index out of range");
  BurauMatrix m = BurauMatrix::identity(strands);
  int i = k - 1;
  if (sign > 0) {
    m.at(i, i) = RatLaurentPoly(Rational(1)) - RatLaurentPoly::monomial(1, Rational(1));
    m.at(i, i + 1) = RatLaurentPoly::monomial(1, Rational(1));
    m.at(i + 1, i) = RatLaurentPoly(Rational(1));
    m.at(i + 1, i + 1) = RatLaurentPoly{};
  } else {
    // inverse block: [[0, 1], [t^-1, 1 - t^-1]]
    m.at(i, i) = RatLaurentPoly{};
    m.at(i, i + 1) = RatLaurentPoly(Rational(1));
    m.at(i + 1, i) = RatLaurentPoly::monomial(-1, Rational(1));
    m.at(i + 1, i + 1) =
        RatLaurentPoly(Rational(1)) - RatLaurentPoly::monomial(-1, Rational(1));
  }
  return m;
}

BurauMatrix burau_of_word(const BraidWord& word) {
  word.validate();
  BurauMatrix m = BurauMatrix::identity(word.strand_count);
  for (const auto& l : word.letters) m = m * burau_of_letter(l.index, l.sign, word.strand_count);
  return m;
}

RatLaurentPoly laurent_determinant(std::vector<RatLaurentPoly> m, int n) {
  if (n == 0) return RatLaurentPoly(Rational(1));
  auto at = [&](int i, int j) -> RatLaurentPoly& { return m[i * n + j]; };
  RatLaurentPoly prev_pivot(Rational(1));
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (at(k, k).is_zero()) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (!at(i, k).is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return {};
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(swap_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        at(i, j) = divide_exact(at(k, k) * at(i, j) - at(i, k) * at(k, j), prev_pivot);
    prev_pivot = at(k, k);
  }
  RatLaurentPoly det = at(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

namespace {

// Clear denominators, strip integer content, centre the exponents and give
// the top coefficient a positive sign.
IntLaurentPoly normalize_alexander(const RatLaurentPoly& raw) {
  if (raw.is_zero()) throw Error("vanishing Alexander determinant");
  Integer den_lcm(1);
  for (const auto& [e, c] : raw.terms()) den_lcm = lcm(den_lcm, c.get_den());
  IntLaurentPoly p;
  for (const auto& [e, c] : raw.terms()) {
    Rational scaled = c * Rational(den_lcm);
    p.add_term(e, scaled.get_num());
  }
  Integer content(0);
  for (const auto& [e, c] : p.terms()) content = gcd(content, c);
  if (content < 0) content = -content;
  IntLaurentPoly q;
  for (const auto& [e, c] : p.terms()) q.add_term(e, c / content);

  int lo = q.min_exp(), hi = q.max_exp();
  if ((lo + hi) % 2 != 0)
    throw Error("Alexander polynomial with odd exponent span");
  q = q.shifted(-(lo + hi) / 2);
  if (q.terms().rbegin()->second < 0) q = -q;
  return q;
}

}  // namespace

IntLaurentPoly alexander_from_braid(const BraidWord& word) {
  BraidPermutation perm = braid_permutation(word);
  if (perm.cycle_count != 1)
    throw MultiComponentError("closure is a link with " +
                              std::to_string(perm.cycle_count) + " components");
  BurauMatrix b = burau_of_word(word);
  const int n = word.strand_count;
  // principal minor of (B - I), last row and column removed
  std::vector<RatLaurentPoly> minor(static_cast<size_t>(n - 1) * (n - 1));
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      RatLaurentPoly e = b.at(i, j);
      if (i == j) e = e - RatLaurentPoly(Rational(1));
      minor[i * (n - 1) + j] = std::move(e);
    }
  RatLaurentPoly det = laurent_determinant(std::move(minor), n - 1);
  IntLaurentPoly delta = normalize_alexander(det);
  Integer at_one = delta.evaluate_at_one();
  if (at_one != 1 && at_one != -1)
    throw Error("Alexander normalisation failed: |Delta(1)| != 1");
  return delta;
}

IntLaurentPoly fig8_family_alexander(int n) {
  if (n < 1) throw ValidationError("family index must be positive");
  IntLaurentPoly p;
  for (int k = -n; k <= n; ++k) {
    int abs_k = k < 0 ? -k : k;
    Integer c(2 * (n - abs_k) + 1);
    if ((n + k) % 2 != 0) c = -c;
    p.add_term(k, c);
  }
  return p;
}

IntLaurentPoly torus_knot_alexander(int p, int q) {
  if (p < 2 || q < 2 || std::gcd(p, q) != 1)
    throw ValidationError("torus knot needs coprime p, q >= 2");
  auto cyclo_like = [](int n) {  // t^n - 1
    IntLaurentPoly r;
    r.add_term(n, Integer(1));
    r.add_term(0, Integer(-1));
    return r;
  };
  IntLaurentPoly num = cyclo_like(p * q) * cyclo_like(1);
  IntLaurentPoly den = cyclo_like(p) * cyclo_like(q);
  IntLaurentPoly quot = divide_exact(num, den);
  int lo = quot.min_exp(), hi = quot.max_exp();
  if ((lo + hi) % 2 != 0) throw Error("torus Alexander has odd span");
  quot = quot.shifted(-(lo + hi) / 2);
  if (quot.terms().rbegin()->second < 0) quot = -quot;
  return quot;
}

namespace {

std::vector<Integer> mod_p_profile(const IntLaurentPoly& poly, const Integer& p) {
  // coefficients mod p with zero ends trimmed, as a shift-invariant profile
  if (poly.is_zero()) return {};
  int lo = poly.min_exp(), hi = poly.max_exp();
  std::vector<Integer> v;
  for (int e = lo; e <= hi; ++e) {
    Integer c = poly.coefficient(e) % p;
    if (c < 0) c += p;
    v.push_back(c);
  }
  while (!v.empty() && v.front() == 0) v.erase(v.begin());
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

}  // namespace

bool murasugi_mod_check(const IntLaurentPoly& delta, int s, int r) {
  if (r < 2) throw ValidationError("murasugi check needs r >= 2");
  int p = 2;
  while (r % p != 0) ++p;
  int m = r;
  while (m % p == 0) m /= p;
  if (m != 1) throw ValidationError("murasugi check needs a prime-power r");

  IntLaurentPoly base;
  for (int e = 0; e < s; ++e) base.add_term(e, Integer(1));
  IntLaurentPoly target(Integer(1));
  for (int i = 0; i < r - 1; ++i) target = target * base;

  auto d = mod_p_profile(delta, Integer(p));
  auto t = mod_p_profile(target, Integer(p));
  if (d.size() != t.size()) return false;
  // unit scalars of F_p
  for (int unit = 1; unit < p; ++unit) {
    bool ok = true;
    for (size_t i = 0; i < d.size(); ++i)
      if ((t[i] * unit) % p != d[i]) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

GenusReport genus_degree_check(const IntLaurentPoly& delta, int s, int r) {
  GenusReport rep;
  rep.span = delta.span();
  rep.genus_from_degree = rep.span / 2;
  rep.genus_upper_bound = (s - 1) * (r - 1) / 2;
  if (r >= 2) {
    int p = 2;
    while (r % p != 0) ++p;
    int m = r;
    while (m % p == 0) m /= p;
    rep.r_prime_power = m == 1;
  }
  rep.within_bounds = rep.genus_from_degree <= rep.genus_upper_bound;
  rep.degree_matches_bound = rep.span == (s - 1) * (r - 1);
  return rep;
}

}  // namespace lemknot
