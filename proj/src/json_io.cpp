#include "lemknot/json_io.hpp"

#include <sstream>

namespace lemknot {

Json integer_to_json(const Integer& v) {
  if (v.fits_slong_p()) {
    long w = v.get_si();
    if (w > -(1L << 53) && w < (1L << 53)) return Json(w);
  }
  return Json(v.get_str());
}

Json rational_to_json(const Rational& q) {
  return Json::array({integer_to_json(q.get_num()), integer_to_json(q.get_den())});
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (!j.is_array() || j.size() != 2) throw ValidationError("bad rational in JSON");
  auto part = [&](const Json& e) {
    return e.is_string() ? Integer(e.get<std::string>()) : Integer(e.get<long>());
  };
  return make_rational(part(j[0]), part(j[1]));
}

Json semiholo_to_json(const SemiholoPolynomial& f) {
  Json arr = Json::array();
  // map iterates ascending; emit descending per the interface contract
  std::vector<std::pair<SemiholoMonomial, GaussianRational>> terms(f.terms().begin(),
                                                                   f.terms().end());
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Json rec;
    rec["eu"] = it->first.eu;
    rec["ev"] = it->first.ev;
    rec["evb"] = it->first.evb;
    rec["re"] = rational_to_json(it->second.re);
    rec["im"] = rational_to_json(it->second.im);
    arr.push_back(std::move(rec));
  }
  return arr;
}

SemiholoPolynomial semiholo_from_json(const Json& j) {
  SemiholoPolynomial f;
  for (const auto& rec : j) {
    f.add_term({rec.at("eu").get<int>(), rec.at("ev").get<int>(), rec.at("evb").get<int>()},
               {rational_from_json(rec.at("re")), rational_from_json(rec.at("im"))});
  }
  return f;
}

Json spec_to_json(const LemniscateSpec& spec, int n_rot) {
  Json j;
  j["s"] = spec.s;
  j["r"] = spec.r;
  j["l"] = spec.lobes;
  j["a"] = rational_to_json(spec.a);
  j["b"] = rational_to_json(spec.b);
  j["lambda"] = rational_to_json(spec.lambda);
  j["n_rot"] = n_rot;
  return j;
}

LemniscateSpec spec_from_json(const Json& j) {
  LemniscateSpec spec;
  spec.s = j.at("s").get<int>();
  spec.r = j.at("r").get<int>();
  spec.lobes = j.at("l").get<int>();
  if (j.contains("a")) spec.a = rational_from_json(j.at("a"));
  if (j.contains("b")) spec.b = rational_from_json(j.at("b"));
  if (j.contains("lambda")) spec.lambda = rational_from_json(j.at("lambda"));
  spec.validate();
  return spec;
}

Json braid_word_to_json(const BraidWord& w) {
  Json j = Json::array();
  for (int v : w.to_signed_indices()) j.push_back(v);
  return j;
}

Json laurent_to_json(const IntLaurentPoly& p) {
  Json j;
  j["minExp"] = p.is_zero() ? 0 : p.min_exp();
  Json coeffs = Json::array();
  if (!p.is_zero())
    for (int e = p.min_exp(); e <= p.max_exp(); ++e)
      coeffs.push_back(integer_to_json(p.coefficient(e)));
  j["coeffs"] = std::move(coeffs);
  return j;
}

IntLaurentPoly laurent_from_json(const Json& j) {
  IntLaurentPoly p;
  int e = j.at("minExp").get<int>();
  for (const auto& c : j.at("coeffs")) {
    Integer v = c.is_string() ? Integer(c.get<std::string>()) : Integer(c.get<long>());
    p.add_term(e++, v);
  }
  return p;
}

Json spatial_to_json(const SpatialPolynomial& p) {
  Json j;
  j["clearing"] = integer_to_json(p.clearing);
  j["clearedPower"] = p.cleared_power;
  Json arr = Json::array();
  std::vector<std::pair<SpatialMonomial, std::pair<Integer, Integer>>> terms(
      p.integerized.begin(), p.integerized.end());
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    Json rec;
    rec["ex"] = it->first.ex;
    rec["ey"] = it->first.ey;
    rec["ez"] = it->first.ez;
    rec["re"] = integer_to_json(it->second.first);
    rec["im"] = integer_to_json(it->second.second);
    arr.push_back(std::move(rec));
  }
  j["terms"] = std::move(arr);
  return j;
}

Json real4_to_json(const RealPolynomial4& p) {
  auto dump = [](const std::map<std::array<int, 4>, Rational>& part) {
    Json arr = Json::array();
    for (const auto& [m, c] : part) {
      Json rec;
      rec["e"] = Json::array({m[0], m[1], m[2], m[3]});
      rec["c"] = rational_to_json(c);
      arr.push_back(std::move(rec));
    }
    return arr;
  };
  Json j;
  j["rhoPower"] = p.rho_power;
  j["re"] = dump(p.re);
  j["im"] = dump(p.im);
  return j;
}

Json prediction_to_json(const SpiralPrediction& p) {
  Json j;
  j["components"] = p.component_count;
  j["isKnot"] = p.is_knot;
  j["isFibred"] = p.is_fibred;
  j["period"] = p.period;
  j["unknot"] = p.unknot;
  j["rPrimePower"] = p.r_prime_power;
  if (p.genus_exact) j["genus"] = *p.genus_exact;
  if (p.genus_upper) j["genusUpper"] = *p.genus_upper;
  if (p.crossing_exact) j["crossingNumber"] = *p.crossing_exact;
  if (p.crossing_lower) j["crossingLowerStrict"] = *p.crossing_lower;
  if (p.crossing_upper) j["crossingUpper"] = *p.crossing_upper;
  if (p.braid_index) j["braidIndex"] = *p.braid_index;
  if (p.tangle) j["tangle"] = *p.tangle;
  if (p.tangle_reduced) j["tangleReduced"] = *p.tangle_reduced;
  if (p.alexander_mod_prime) j["alexanderModPrime"] = *p.alexander_mod_prime;
  j["conjecturedCrossing"] = p.conjectured_crossing;
  j["conjectural"] = true;
  return j;
}

Json fibration_to_json(const FibrationReport& r) {
  Json j;
  j["samples"] = r.sample_count;
  j["usedSamples"] = r.used_samples;
  j["minGradNorm"] = r.min_grad_norm;
  j["argmin"] = Json::array({r.argmin[0], r.argmin[1], r.argmin[2], r.argmin[3]});
  j["marginPositive"] = r.margin_positive;
  j["tolerance"] = r.tolerance;
  return j;
}

std::string curve_to_csv(const NodalCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "index,x,y,z,w\n";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out << i << "," << p[0] << "," << p[1] << "," << p[2] << "," << p[3] << "\n";
  }
  return out.str();
}

std::string curve_to_csv(const SpaceCurve& curve) {
  std::ostringstream out;
  out.precision(17);
  out << "index,x,y,z\n";
  for (size_t i = 0; i < curve.points.size(); ++i) {
    const auto& p = curve.points[i];
    out << i << "," << p[0] << "," << p[1] << "," << p[2] << "\n";
  }
  return out.str();
}

}  // namespace lemknot
