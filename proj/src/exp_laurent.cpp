#include "lemknot/exp_laurent.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace lemknot {

unsigned lcm_order(unsigned a, unsigned b) { return std::lcm(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

ExpLaurentPoly ExpLaurentPoly::constant(unsigned order, const Rational& value) {
  ExpLaurentPoly p(order, 1);
  p.add_term(0, Cyclotomic(order, value));
  return p;
}

void ExpLaurentPoly::add_term(long exponent, const Cyclotomic& coeff) {
  Cyclotomic c = coeff.order() == order_ ? coeff : coeff.promoted(order_);
  auto it = terms_.find(exponent);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(exponent, std::move(c));
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

ExpLaurentPoly ExpLaurentPoly::rescaled(unsigned new_order, long new_denom) const {
  if (new_denom % denom_ != 0)
    throw Error("incompatible denominator frequencies");
  long scale = new_denom / denom_;
  ExpLaurentPoly r(new_order, new_denom);
  for (const auto& [m, c] : terms_) r.add_term(m * scale, c.promoted(new_order));
  return r;
}

ExpLaurentPoly ExpLaurentPoly::normalized() const {
  long g = denom_;
  for (const auto& [m, c] : terms_) {
    (void)c;
    g = std::gcd(g, m < 0 ? -m : m);
    if (g == 1) break;
  }
  if (g == 0 || g == 1) return *this;
  ExpLaurentPoly r(order_, denom_ / g);
  for (const auto& [m, c] : terms_) r.add_term(m / g, c);
  return r;
}

ExpLaurentPoly ExpLaurentPoly::conj() const {
  ExpLaurentPoly r(order_, denom_);
  for (const auto& [m, c] : terms_) r.add_term(-m, c.conj());
  return r;
}

std::complex<double> ExpLaurentPoly::eval(double h) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [m, c] : terms_) {
    double angle = static_cast<double>(m) * h / static_cast<double>(denom_);
    acc += c.to_complex() * std::complex<double>{std::cos(angle), std::sin(angle)};
  }
  return acc;
}

namespace {
std::pair<ExpLaurentPoly, ExpLaurentPoly> to_common(const ExpLaurentPoly& a,
                                                    const ExpLaurentPoly& b) {
  unsigned order = lcm_order(a.order(), b.order());
  long denom = lcm_long(a.denominator(), b.denominator());
  return {a.rescaled(order, denom), b.rescaled(order, denom)};
}
}  // namespace

ExpLaurentPoly operator+(const ExpLaurentPoly& a, const ExpLaurentPoly& b) {
  auto [x, y] = to_common(a, b);
  for (const auto& [m, c] : y.terms()) x.add_term(m, c);
  return x;
}

ExpLaurentPoly operator-(const ExpLaurentPoly& a, const ExpLaurentPoly& b) {
  auto [x, y] = to_common(a, b);
  for (const auto& [m, c] : y.terms()) x.add_term(m, -c);
  return x;
}

ExpLaurentPoly operator-(const ExpLaurentPoly& a) {
  ExpLaurentPoly r(a.order(), a.denominator());
  for (const auto& [m, c] : a.terms()) r.add_term(m, -c);
  return r;
}

ExpLaurentPoly operator*(const ExpLaurentPoly& a, const ExpLaurentPoly& b) {
  auto [x, y] = to_common(a, b);
  ExpLaurentPoly r(x.order(), x.denominator());
  for (const auto& [ma, ca] : x.terms())
    for (const auto& [mb, cb] : y.terms()) r.add_term(ma + mb, ca * cb);
  return r;
}

ExpLaurentPoly operator*(const ExpLaurentPoly& a, const Cyclotomic& s) {
  unsigned order = lcm_order(a.order(), s.order());
  ExpLaurentPoly r(order, a.denominator());
  Cyclotomic sp = s.promoted(order);
  for (const auto& [m, c] : a.terms()) r.add_term(m, c.promoted(order) * sp);
  return r;
}

ExpLaurentPoly operator*(const ExpLaurentPoly& a, const Rational& s) {
  ExpLaurentPoly r(a.order(), a.denominator());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c * s);
  return r;
}

bool operator==(const ExpLaurentPoly& a, const ExpLaurentPoly& b) {
  auto [x, y] = to_common(a, b);
  return x.terms() == y.terms();
}

ExpLaurentPoly trig_term(TrigKind kind, const Rational& amplitude, long freq_num,
                         long freq_den, const Rational& phase) {
  if (freq_den < 1) throw Error("trig_term: freq_den must be positive");
  // phase = p/q turns; e^{i 2 pi p / q} = zeta_q^p
  Rational ph = phase;
  ph.canonicalize();
  long q = ph.get_den().get_si();
  long p = ph.get_num().get_si();
  unsigned order = lcm_order(4, static_cast<unsigned>(q));
  Cyclotomic fwd = Cyclotomic::root_of_unity(order, p * static_cast<long>(order) / q);
  Cyclotomic bwd = fwd.conj();
  Rational half = make_rational(1, 2);

  ExpLaurentPoly r(order, freq_den);
  if (kind == TrigKind::Cos) {
    r.add_term(freq_num, fwd * (amplitude * half));
    r.add_term(-freq_num, bwd * (amplitude * half));
  } else {
    // sin t = (e^{it} - e^{-it}) / (2i); 1/(2i) = -i/2
    Cyclotomic minus_i_half =
        Cyclotomic::from_gaussian(order, GaussianRational(Rational(0), make_rational(-1, 2)));
    r.add_term(freq_num, fwd * minus_i_half * amplitude);
    r.add_term(-freq_num, bwd * (-minus_i_half) * amplitude);
  }
  return r;
}

}  // namespace lemknot
