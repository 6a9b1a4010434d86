#include "lemknot/semiholo.hpp"

#include <algorithm>

namespace lemknot {

void SemiholoPolynomial::add_term(const SemiholoMonomial& m, const GaussianRational& c) {
  if (m.ev > 0 && m.evb > 0)
    throw Error("semiholomorphic invariant violated: mixed v * conj(v) term");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

int SemiholoPolynomial::degree_u() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.eu);
  return d;
}

int SemiholoPolynomial::degree_v_vbar() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.ev + m.evb);
  return d;
}

GaussianRational SemiholoPolynomial::coefficient(int eu, int ev, int evb) const {
  auto it = terms_.find(SemiholoMonomial{eu, ev, evb});
  return it == terms_.end() ? GaussianRational() : it->second;
}

SemiholoPolynomial SemiholoPolynomial::derivative_u() const {
  SemiholoPolynomial r;
  for (const auto& [m, c] : terms_)
    if (m.eu > 0) r.add_term({m.eu - 1, m.ev, m.evb}, c * Rational(m.eu));
  return r;
}

SemiholoPolynomial SemiholoPolynomial::derivative_v() const {
  SemiholoPolynomial r;
  for (const auto& [m, c] : terms_)
    if (m.ev > 0) r.add_term({m.eu, m.ev - 1, m.evb}, c * Rational(m.ev));
  return r;
}

SemiholoPolynomial SemiholoPolynomial::derivative_vbar() const {
  SemiholoPolynomial r;
  for (const auto& [m, c] : terms_)
    if (m.evb > 0) r.add_term({m.eu, m.ev, m.evb - 1}, c * Rational(m.evb));
  return r;
}

std::vector<std::complex<double>> SemiholoPolynomial::u_coefficients(
    std::complex<double> v) const {
  int du = degree_u();
  int dv = 0;
  for (const auto& [m, c] : terms_) dv = std::max({dv, m.ev, m.evb});
  std::vector<std::complex<double>> vp(dv + 1), vbp(dv + 1);
  vp[0] = vbp[0] = 1.0;
  std::complex<double> vb = std::conj(v);
  for (int k = 1; k <= dv; ++k) {
    vp[k] = vp[k - 1] * v;
    vbp[k] = vbp[k - 1] * vb;
  }
  std::vector<std::complex<double>> coeffs(du + 1, std::complex<double>{0.0, 0.0});
  for (const auto& [m, c] : terms_)
    coeffs[m.eu] += c.to_complex() * vp[m.ev] * vbp[m.evb];
  return coeffs;
}

SemiholoEvaluation SemiholoPolynomial::evaluate(std::complex<double> u,
                                                std::complex<double> v) const {
  int dv = 0;
  int du = 0;
  for (const auto& [m, c] : terms_) {
    dv = std::max({dv, m.ev, m.evb});
    du = std::max(du, m.eu);
  }
  std::vector<std::complex<double>> up(du + 1), vp(dv + 1), vbp(dv + 1);
  up[0] = vp[0] = vbp[0] = 1.0;
  std::complex<double> vb = std::conj(v);
  for (int k = 1; k <= du; ++k) up[k] = up[k - 1] * u;
  for (int k = 1; k <= dv; ++k) {
    vp[k] = vp[k - 1] * v;
    vbp[k] = vbp[k - 1] * vb;
  }
  SemiholoEvaluation out{{0, 0}, {0, 0}, {0, 0}, {0, 0}};
  for (const auto& [m, c] : terms_) {
    std::complex<double> cc = c.to_complex();
    std::complex<double> base = cc * vp[m.ev] * vbp[m.evb];
    out.f += base * up[m.eu];
    if (m.eu > 0) out.fu += base * up[m.eu - 1] * static_cast<double>(m.eu);
    if (m.ev > 0)
      out.fv += cc * vp[m.ev - 1] * vbp[m.evb] * up[m.eu] * static_cast<double>(m.ev);
    if (m.evb > 0)
      out.fvb += cc * vp[m.ev] * vbp[m.evb - 1] * up[m.eu] * static_cast<double>(m.evb);
  }
  return out;
}

SemiholoPolynomial operator+(const SemiholoPolynomial& a, const SemiholoPolynomial& b) {
  SemiholoPolynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, c);
  return r;
}

SemiholoPolynomial operator-(const SemiholoPolynomial& a, const SemiholoPolynomial& b) {
  SemiholoPolynomial r = a;
  for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
  return r;
}

SemiholoPolynomial operator*(const SemiholoPolynomial& a, const SemiholoPolynomial& b) {
  SemiholoPolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      r.add_term({ma.eu + mb.eu, ma.ev + mb.ev, ma.evb + mb.evb}, ca * cb);
  return r;
}

SemiholoPolynomial operator*(const SemiholoPolynomial& a, const GaussianRational& s) {
  SemiholoPolynomial r;
  for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
  return r;
}

SemiholoPolynomial SemiholoPolynomial::monomial(int eu, int ev, int evb,
                                                const GaussianRational& c) {
  SemiholoPolynomial p;
  p.add_term({eu, ev, evb}, c);
  return p;
}

BraidHeightPolynomial BraidHeightPolynomial::one(unsigned order) {
  BraidHeightPolynomial p;
  p.coeffs_.push_back(ExpLaurentPoly::constant(order, Rational(1)));
  return p;
}

void BraidHeightPolynomial::append_root(const ExpLaurentPoly& z) {
  if (coeffs_.empty()) throw Error("append_root on empty polynomial");
  std::vector<ExpLaurentPoly> next(coeffs_.size() + 1,
                                   ExpLaurentPoly(coeffs_.front().order(), 1));
  // (sum c_k u^k)(u - z)
  for (size_t k = 0; k < coeffs_.size(); ++k) {
    next[k + 1] = next[k + 1] + coeffs_[k];
    next[k] = next[k] - coeffs_[k] * z;
  }
  coeffs_ = std::move(next);
}

std::complex<double> BraidHeightPolynomial::eval(std::complex<double> u, double h) const {
  std::complex<double> acc{0.0, 0.0};
  for (size_t k = coeffs_.size(); k-- > 0;) acc = acc * u + coeffs_[k].eval(h);
  return acc;
}

SemiholoPolynomial to_semiholo(const BraidHeightPolynomial& p) {
  SemiholoPolynomial f;
  for (size_t k = 0; k < p.coefficients().size(); ++k) {
    const ExpLaurentPoly& c = p.coefficients()[k];
    long denom = c.denominator();
    for (const auto& [m, coeff] : c.terms()) {
      if (m % denom != 0)
        throw NonIntegerExponentError(
            "surviving exponent is not an integer multiple of exp(i h)");
      long e = m / denom;
      GaussianRational g = coeff.to_gaussian();
      if (e >= 0)
        f.add_term({static_cast<int>(k), static_cast<int>(e), 0}, g);
      else
        f.add_term({static_cast<int>(k), 0, static_cast<int>(-e)}, g);
    }
  }
  return f;
}

std::pair<SemiholoPolynomial, Integer> integerize(const SemiholoPolynomial& f) {
  Integer clearing(1);
  for (const auto& [m, c] : f.terms()) {
    clearing = lcm(clearing, c.re.get_den());
    clearing = lcm(clearing, c.im.get_den());
  }
  if (clearing < 0) clearing = -clearing;
  SemiholoPolynomial g = f * GaussianRational(Rational(clearing));
  return {g, clearing};
}

}  // namespace lemknot
