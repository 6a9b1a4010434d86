#include "lemknot/field.hpp"

#include <algorithm>
#include <cmath>

namespace lemknot {

BraidHeightPolynomial braid_polynomial(const std::vector<TrigStrand>& strands,
                                       const Rational& lambda) {
  if (strands.empty()) throw ValidationError("no strands");
  unsigned order = 4;
  for (const auto& s : strands) order = lcm_order(order, s.z.order());
  BraidHeightPolynomial p = BraidHeightPolynomial::one(order);
  for (const auto& s : strands) p.append_root(s.z * lambda);
  return p;
}

SemiholoPolynomial build_field(const std::vector<TrigStrand>& strands,
                               const Rational& lambda) {
  return to_semiholo(braid_polynomial(strands, lambda));
}

SemiholoPolynomial build_field(const LemniscateSpec& spec) {
  return build_field(lemniscate_strands(spec), spec.lambda);
}

SemiholoPolynomial rescale_u(const SemiholoPolynomial& f, const Rational& lambda) {
  if (lambda == 0) throw ValidationError("lambda must be nonzero");
  int d = f.degree_u();
  SemiholoPolynomial g;
  for (const auto& [m, c] : f.terms())
    g.add_term(m, c * pow_rat(lambda, d - m.eu));
  return g;
}

namespace {

using Poly3 = std::map<SpatialMonomial, GaussianRational>;

Poly3 poly3_mul(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      SpatialMonomial m{ma.ex + mb.ex, ma.ey + mb.ey, ma.ez + mb.ez};
      GaussianRational c = ca * cb;
      auto it = r.find(m);
      if (it == r.end()) {
        if (!c.is_zero()) r.emplace(m, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

void poly3_add_scaled(Poly3& acc, const Poly3& p, const GaussianRational& scale) {
  for (const auto& [m, c] : p) {
    GaussianRational v = c * scale;
    auto it = acc.find(m);
    if (it == acc.end()) {
      if (!v.is_zero()) acc.emplace(m, v);
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

std::vector<Poly3> poly3_powers(const Poly3& base, int max_power) {
  std::vector<Poly3> p(max_power + 1);
  p[0] = Poly3{{SpatialMonomial{0, 0, 0}, GaussianRational(Rational(1))}};
  for (int k = 1; k <= max_power; ++k) p[k] = poly3_mul(p[k - 1], base);
  return p;
}

}  // namespace

SpatialPolynomial stereographic_substitute(const SemiholoPolynomial& f) {
  int total_degree = 0;
  int max_u = 0, max_v = 0, max_vb = 0;
  for (const auto& [m, c] : f.terms()) {
    total_degree = std::max(total_degree, m.eu + m.ev + m.evb);
    max_u = std::max(max_u, m.eu);
    max_v = std::max(max_v, m.ev);
    max_vb = std::max(max_vb, m.evb);
  }

  GaussianRational one(Rational(1));
  GaussianRational two(Rational(2));
  GaussianRational two_i(Rational(0), Rational(2));
  Poly3 r2{{SpatialMonomial{2, 0, 0}, one},
           {SpatialMonomial{0, 2, 0}, one},
           {SpatialMonomial{0, 0, 2}, one}};
  Poly3 u_num = r2, w = r2;
  poly3_add_scaled(u_num, {{SpatialMonomial{0, 0, 0}, one}}, -one);          // r^2 - 1
  poly3_add_scaled(u_num, {{SpatialMonomial{0, 0, 1}, one}}, two_i);         // + 2iz
  poly3_add_scaled(w, {{SpatialMonomial{0, 0, 0}, one}}, one);               // r^2 + 1
  Poly3 v_num{{SpatialMonomial{1, 0, 0}, two}, {SpatialMonomial{0, 1, 0}, two_i}};
  Poly3 vb_num{{SpatialMonomial{1, 0, 0}, two},
               {SpatialMonomial{0, 1, 0}, GaussianRational(Rational(0), Rational(-2))}};

  auto u_pows = poly3_powers(u_num, max_u);
  auto v_pows = poly3_powers(v_num, max_v);
  auto vb_pows = poly3_powers(vb_num, max_vb);
  auto w_pows = poly3_powers(w, total_degree);

  Poly3 acc;
  for (const auto& [m, c] : f.terms()) {
    Poly3 term = poly3_mul(u_pows[m.eu], v_pows[m.ev]);
    term = poly3_mul(term, vb_pows[m.evb]);
    term = poly3_mul(term, w_pows[total_degree - m.eu - m.ev - m.evb]);
    poly3_add_scaled(acc, term, c);
  }

  SpatialPolynomial out;
  out.exact = std::move(acc);
  out.cleared_power = total_degree;
  for (const auto& [m, c] : out.exact) {
    out.clearing = lcm(out.clearing, c.re.get_den());
    out.clearing = lcm(out.clearing, c.im.get_den());
  }
  if (out.clearing < 0) out.clearing = -out.clearing;
  for (const auto& [m, c] : out.exact) {
    Rational re = c.re * Rational(out.clearing);
    Rational im = c.im * Rational(out.clearing);
    out.integerized.emplace(m, std::make_pair(re.get_num(), im.get_num()));
  }
  return out;
}

std::complex<double> SpatialPolynomial::eval(double x, double y, double z) const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& [m, c] : exact)
    acc += c.to_complex() * std::pow(x, m.ex) * std::pow(y, m.ey) * std::pow(z, m.ez);
  return acc;
}

namespace {

using Poly4 = std::map<std::array<int, 4>, GaussianRational>;

Poly4 poly4_mul(const Poly4& a, const Poly4& b) {
  Poly4 r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      std::array<int, 4> m{ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]};
      GaussianRational c = ca * cb;
      auto it = r.find(m);
      if (it == r.end()) {
        if (!c.is_zero()) r.emplace(m, c);
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.erase(it);
      }
    }
  return r;
}

void poly4_add_scaled(Poly4& acc, const Poly4& p, const GaussianRational& scale) {
  for (const auto& [m, c] : p) {
    GaussianRational v = c * scale;
    auto it = acc.find(m);
    if (it == acc.end()) {
      if (!v.is_zero()) acc.emplace(m, v);
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

std::vector<Poly4> poly4_powers(const Poly4& base, int max_power) {
  std::vector<Poly4> p(max_power + 1);
  p[0] = Poly4{{std::array<int, 4>{0, 0, 0, 0}, GaussianRational(Rational(1))}};
  for (int k = 1; k <= max_power; ++k) p[k] = poly4_mul(p[k - 1], base);
  return p;
}

RealPolynomial4 split_real_imag(const Poly4& p, int rho_power) {
  RealPolynomial4 out;
  out.rho_power = rho_power;
  for (const auto& [m, c] : p) {
    if (c.re != 0) out.re[m] = c.re;
    if (c.im != 0) out.im[m] = c.im;
  }
  return out;
}

}  // namespace

RealPolynomial4 milnor_polynomial(const SemiholoPolynomial& f1, const LemniscateSpec& spec) {
  spec.validate();
  if (spec.r % 2 != 0)
    throw OddRepeatsError("rho-power clearing needs even r (even v powers)");
  const int s = f1.degree_u();
  int k_min = s;
  for (const auto& [m, c] : f1.terms()) {
    if ((m.ev + m.evb) % 2 != 0)
      throw Error("odd v power in an even-r field; construction bug");
    k_min = std::max(k_min, 2 * m.eu + m.ev + m.evb - s);
  }
  int K = k_min;
  if ((K - s) % 2 != 0) ++K;

  GaussianRational one(Rational(1));
  GaussianRational i_unit(Rational(0), Rational(1));
  Poly4 u{{std::array<int, 4>{1, 0, 0, 0}, one}, {std::array<int, 4>{0, 1, 0, 0}, i_unit}};
  Poly4 v{{std::array<int, 4>{0, 0, 1, 0}, one}, {std::array<int, 4>{0, 0, 0, 1}, i_unit}};
  Poly4 vb{{std::array<int, 4>{0, 0, 1, 0}, one},
           {std::array<int, 4>{0, 0, 0, 1}, -i_unit}};
  Poly4 rho2;
  for (int axis = 0; axis < 4; ++axis) {
    std::array<int, 4> m{0, 0, 0, 0};
    m[axis] = 2;
    rho2.emplace(m, one);
  }

  int max_u = 0, max_v = 0, max_vb = 0, max_rho = 0;
  for (const auto& [m, c] : f1.terms()) {
    max_u = std::max(max_u, m.eu);
    max_v = std::max(max_v, m.ev);
    max_vb = std::max(max_vb, m.evb);
    max_rho = std::max(max_rho, (K + s - 2 * m.eu - m.ev - m.evb) / 2);
  }
  auto u_pows = poly4_powers(u, max_u);
  auto v_pows = poly4_powers(v, max_v);
  auto vb_pows = poly4_powers(vb, max_vb);
  auto rho_pows = poly4_powers(rho2, max_rho);

  Poly4 acc;
  for (const auto& [m, c] : f1.terms()) {
    int e = K + s - 2 * m.eu - m.ev - m.evb;
    if (e < 0 || e % 2 != 0) throw Error("rho exponent bookkeeping failed");
    Poly4 term = poly4_mul(u_pows[m.eu], v_pows[m.ev]);
    term = poly4_mul(term, vb_pows[m.evb]);
    term = poly4_mul(term, rho_pows[e / 2]);
    poly4_add_scaled(acc, term, c);
  }
  return split_real_imag(acc, K);
}

RealPolynomial4 real_pair_of_holomorphic(const SemiholoPolynomial& f) {
  GaussianRational one(Rational(1));
  GaussianRational i_unit(Rational(0), Rational(1));
  Poly4 u{{std::array<int, 4>{1, 0, 0, 0}, one}, {std::array<int, 4>{0, 1, 0, 0}, i_unit}};
  Poly4 v{{std::array<int, 4>{0, 0, 1, 0}, one}, {std::array<int, 4>{0, 0, 0, 1}, i_unit}};
  int max_u = 0, max_v = 0;
  for (const auto& [m, c] : f.terms()) {
    if (m.evb != 0) throw Error("field is not holomorphic in v");
    max_u = std::max(max_u, m.eu);
    max_v = std::max(max_v, m.ev);
  }
  auto u_pows = poly4_powers(u, max_u);
  auto v_pows = poly4_powers(v, max_v);
  Poly4 acc;
  for (const auto& [m, c] : f.terms())
    poly4_add_scaled(acc, poly4_mul(u_pows[m.eu], v_pows[m.ev]), c);
  return split_real_imag(acc, 0);
}

std::array<double, 2> RealPolynomial4::eval(const std::array<double, 4>& x) const {
  auto eval_part = [&](const std::map<std::array<int, 4>, Rational>& part) {
    double acc = 0.0;
    for (const auto& [m, c] : part) {
      double t = c.get_d();
      for (int axis = 0; axis < 4; ++axis)
        for (int k = 0; k < m[axis]; ++k) t *= x[axis];
      acc += t;
    }
    return acc;
  };
  return {eval_part(re), eval_part(im)};
}

std::array<std::array<double, 4>, 2> RealPolynomial4::jacobian(
    const std::array<double, 4>& x) const {
  std::array<std::array<double, 4>, 2> jac{};
  auto add_part = [&](const std::map<std::array<int, 4>, Rational>& part, int row) {
    for (const auto& [m, c] : part) {
      for (int axis = 0; axis < 4; ++axis) {
        if (m[axis] == 0) continue;
        double t = c.get_d() * m[axis];
        for (int other = 0; other < 4; ++other) {
          int e = m[other] - (other == axis ? 1 : 0);
          for (int k = 0; k < e; ++k) t *= x[other];
        }
        jac[row][axis] += t;
      }
    }
  };
  add_part(re, 0);
  add_part(im, 1);
  return jac;
}

}  // namespace lemknot
