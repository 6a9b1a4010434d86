#pragma once

#include "lemknot/braid.hpp"
#include "lemknot/laurent.hpp"

namespace lemknot {

struct MultiComponentError : Error {
  using Error::Error;
};

// Unreduced Burau matrix: s x s over Laurent polynomials in t.
class BurauMatrix {
 public:
  explicit BurauMatrix(int n);
  static BurauMatrix identity(int n);

  int size() const { return n_; }
  const RatLaurentPoly& at(int i, int j) const { return a_[i * n_ + j]; }
  RatLaurentPoly& at(int i, int j) { return a_[i * n_ + j]; }

  friend BurauMatrix operator*(const BurauMatrix& a, const BurauMatrix& b);
  friend bool operator==(const BurauMatrix& a, const BurauMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }

 private:
  int n_;
  std::vector<RatLaurentPoly> a_;
};

// Identity except the 2x2 block at (k, k+1): [[1-t, t], [1, 0]] for a
// positive letter, its inverse for a negative one.
BurauMatrix burau_of_letter(int k, int sign, int strands);
BurauMatrix burau_of_word(const BraidWord& word);

// Determinant by fraction-free Bareiss elimination.
RatLaurentPoly laurent_determinant(std::vector<RatLaurentPoly> m, int n);

// Alexander polynomial of the knot closure: principal minor of
// (Burau(word) - I), normalised to the symmetric representative with a
// positive leading coefficient (the convention of the closed-form family
// polynomials; |Delta(1)| = 1). Links raise MultiComponentError.
IntLaurentPoly alexander_from_braid(const BraidWord& word);

// Closed-form Alexander polynomial of the figure-8 family member with
// 2n+1 strands: sum_{k=-n}^{n} (-1)^{n+k} (2(n-|k|)+1) t^k.
IntLaurentPoly fig8_family_alexander(int n);

// Alexander polynomial of the (p,q) torus knot from the closed form
// (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1)), same normalisation as above.
IntLaurentPoly torus_knot_alexander(int p, int q);

// Delta congruent to (1+t+...+t^{s-1})^{r-1} mod p, up to a unit monomial.
bool murasugi_mod_check(const IntLaurentPoly& delta, int s, int r);

struct GenusReport {
  int span = 0;
  int genus_from_degree = 0;       // span/2
  int genus_upper_bound = 0;       // (s-1)(r-1)/2
  bool r_prime_power = false;
  bool degree_matches_bound = false;  // asserted truth when r is a prime power
  bool within_bounds = false;
};

GenusReport genus_degree_check(const IntLaurentPoly& delta, int s, int r);

}  // namespace lemknot
