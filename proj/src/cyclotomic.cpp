#include "lemknot/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace lemknot {

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials, ascending coefficients, monic divisor.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer>& den) {
  if (den.empty() || den.back() != 1) throw Error("divide_monic: divisor not monic");
  if (num.size() < den.size()) throw Error("divide_monic: degree underflow");
  std::vector<Integer> quot(num.size() - den.size() + 1, Integer(0));
  for (size_t k = quot.size(); k-- > 0;) {
    Integer c = num[k + den.size() - 1];
    quot[k] = c;
    if (c == 0) continue;
    for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  for (size_t j = 0; j + 1 < den.size(); ++j)
    if (num[j] != 0) throw Error("divide_monic: nonzero remainder");
  return quot;
}

std::vector<Integer> poly_mul_int(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  std::vector<Integer> r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::map<unsigned, std::vector<Integer>> g_phi_cache;
std::mutex g_phi_mutex;

}  // namespace

std::vector<Integer> cyclotomic_polynomial(unsigned n) {
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  auto it = g_phi_cache.find(n);
  if (it != g_phi_cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d, computed bottom-up.
  for (unsigned m = 1; m <= n; ++m) {
    if (n % m != 0 || g_phi_cache.count(m)) continue;
    std::vector<Integer> num(m + 1, Integer(0));
    num[0] = -1;
    num[m] = 1;
    std::vector<Integer> den{Integer(1)};
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) den = poly_mul_int(den, g_phi_cache.at(d));
    g_phi_cache.emplace(m, divide_monic(std::move(num), den));
  }
  return g_phi_cache.at(n);
}

CyclotomicContext::CyclotomicContext(unsigned order) : order_(order) {
  if (order == 0) throw Error("cyclotomic order must be positive");
  phi_ = cyclotomic_polynomial(order);
  degree_ = static_cast<unsigned>(phi_.size() - 1);

  // x^degree = -(phi_0 + phi_1 x + ...); higher powers by repeated shift.
  std::vector<Rational> row(degree_, Rational(0));
  for (unsigned j = 0; j < degree_; ++j) row[j] = Rational(-phi_[j]);
  overflow_.push_back(row);
  for (unsigned k = 1; k + 1 < degree_; ++k) {
    std::vector<Rational> next(degree_, Rational(0));
    const auto& prev = overflow_.back();
    // multiply prev by x, reduce the single overflow term
    Rational top = prev[degree_ - 1];
    for (unsigned j = degree_ - 1; j > 0; --j) next[j] = prev[j - 1];
    next[0] = 0;
    if (top != 0)
      for (unsigned j = 0; j < degree_; ++j) next[j] += top * overflow_[0][j];
    overflow_.push_back(std::move(next));
  }

  powers_.resize(order_);
  std::vector<Rational> cur(degree_, Rational(0));
  cur[0] = 1;
  for (unsigned k = 0; k < order_; ++k) {
    powers_[k] = cur;
    // multiply by x and reduce the overflow term
    Rational top = cur[degree_ - 1];
    for (unsigned j = degree_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (unsigned j = 0; j < degree_; ++j) cur[j] += top * overflow_[0][j];
  }
}

const std::vector<Rational>& CyclotomicContext::power(unsigned k) const {
  return powers_[k % order_];
}

const CyclotomicContext& CyclotomicContext::get(unsigned order) {
  static std::map<unsigned, CyclotomicContext*> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end())
    it = cache.emplace(order, new CyclotomicContext(order)).first;
  return *it->second;
}

Cyclotomic::Cyclotomic(unsigned order, const Rational& constant) : order_(order) {
  coeffs_.assign(CyclotomicContext::get(order).degree(), Rational(0));
  coeffs_[0] = constant;
}

Cyclotomic Cyclotomic::root_of_unity(unsigned order, long k) {
  const auto& ctx = CyclotomicContext::get(order);
  long m = k % static_cast<long>(order);
  if (m < 0) m += order;
  Cyclotomic r;
  r.order_ = order;
  r.coeffs_ = ctx.power(static_cast<unsigned>(m));
  return r;
}

Cyclotomic Cyclotomic::from_gaussian(unsigned order, const GaussianRational& g) {
  if (order % 4 != 0) throw Error("from_gaussian: order must be divisible by 4");
  Cyclotomic r(order, g.re);
  if (g.im != 0) r = r + root_of_unity(order, order / 4) * g.im;
  return r;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

Cyclotomic Cyclotomic::promoted(unsigned new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) throw OrderMismatchError("cannot promote cyclotomic order");
  unsigned step = new_order / order_;
  const auto& ctx = CyclotomicContext::get(new_order);
  Cyclotomic r = Cyclotomic::zero(new_order);
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& pw = ctx.power(static_cast<unsigned>(j) * step);
    for (unsigned t = 0; t < ctx.degree(); ++t) r.coeffs_[t] += coeffs_[j] * pw[t];
  }
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  const auto& ctx = CyclotomicContext::get(order_);
  Cyclotomic r = Cyclotomic::zero(order_);
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& pw = ctx.power((order_ - static_cast<unsigned>(j) % order_) % order_);
    for (unsigned t = 0; t < ctx.degree(); ++t) r.coeffs_[t] += coeffs_[j] * pw[t];
  }
  return r;
}

GaussianRational Cyclotomic::to_gaussian() const {
  if (order_ % 4 != 0)
    throw NotGaussianError("to_gaussian requires 4 | order");
  const auto& ctx = CyclotomicContext::get(order_);
  const auto& imag = ctx.power(order_ / 4);  // representation of i

  // Solve coeffs = p*e0 + q*imag, then verify.
  Rational p, q;
  size_t pivot = 0;
  bool found = false;
  for (size_t j = ctx.degree(); j-- > 1;) {
    if (imag[j] != 0) {
      pivot = j;
      found = true;
      break;
    }
  }
  if (!found) throw Error("degenerate imaginary-unit representation");
  q = coeffs_[pivot] / imag[pivot];
  p = coeffs_[0] - q * imag[0];
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    Rational expect = q * imag[j];
    if (j == 0) expect += p;
    if (coeffs_[j] != expect)
      throw NotGaussianError("cyclotomic element is not in Q(i)");
  }
  return {p, q};
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  const double tau = 2.0 * std::numbers::pi;
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    double angle = tau * static_cast<double>(j) / static_cast<double>(order_);
    acc += coeffs_[j].get_d() * std::complex<double>{std::cos(angle), std::sin(angle)};
  }
  return acc;
}

namespace {
void require_same_order(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order())
    throw OrderMismatchError("cyclotomic order mismatch");
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  Cyclotomic r = a;
  for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] += b.coeffs_[j];
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  Cyclotomic r = a;
  for (size_t j = 0; j < r.coeffs_.size(); ++j) r.coeffs_[j] -= b.coeffs_[j];
  return r;
}

Cyclotomic operator-(const Cyclotomic& a) {
  Cyclotomic r = a;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  require_same_order(a, b);
  const auto& ctx = CyclotomicContext::get(a.order_);
  unsigned d = ctx.degree();
  std::vector<Rational> full(2 * d - 1, Rational(0));
  for (unsigned i = 0; i < d; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < d; ++j) {
      if (b.coeffs_[j] == 0) continue;
      full[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  Cyclotomic r = Cyclotomic::zero(a.order_);
  for (unsigned j = 0; j < d; ++j) r.coeffs_[j] = full[j];
  for (unsigned k = d; k < 2 * d - 1; ++k) {
    if (full[k] == 0) continue;
    const auto& row = ctx.overflow_row(k - d);
    for (unsigned j = 0; j < d; ++j) r.coeffs_[j] += full[k] * row[j];
  }
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Rational& s) {
  Cyclotomic r = a;
  for (auto& c : r.coeffs_) c *= s;
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

}  // namespace lemknot
