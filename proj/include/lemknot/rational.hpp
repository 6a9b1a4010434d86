#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lemknot {

using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad user-facing input (spec parameters, CLI flags). Maps to exit code 2.
struct ValidationError : Error {
  using Error::Error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rational pow_rat(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational r(pow_int(base.get_num(), static_cast<unsigned long>(e < 0 ? -e : e)),
             pow_int(base.get_den(), static_cast<unsigned long>(e < 0 ? -e : e)));
  r.canonicalize();
  if (e < 0) {
    if (r == 0) throw Error("pow_rat: negative power of zero");
    r = 1 / r;
  }
  return r;
}

// Accepts "p/q", plain integers and simple decimals ("0.5" -> 1/2).
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ValidationError("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(text.substr(0, slash), 10) != 0 ||
        den.set_str(text.substr(slash + 1), 10) != 0)
      throw ValidationError("cannot parse rational '" + text + "'");
    return make_rational(num, den);
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    size_t frac_len = text.size() - dot - 1;
    Integer num;
    if (digits.empty() || num.set_str(digits, 10) != 0)
      throw ValidationError("cannot parse rational '" + text + "'");
    return make_rational(num, pow_int(Integer(10), frac_len));
  }
  Integer num;
  if (num.set_str(text, 10) != 0)
    throw ValidationError("cannot parse rational '" + text + "'");
  return Rational(num);
}

inline std::string rational_to_string(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str()
                          : q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace lemknot
