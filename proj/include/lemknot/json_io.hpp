#pragma once

#include <json.hpp>

#include "lemknot/braid.hpp"
#include "lemknot/burau.hpp"
#include "lemknot/field.hpp"
#include "lemknot/verify.hpp"

namespace lemknot {

using Json = nlohmann::ordered_json;

// Small integers as JSON numbers, arbitrary-precision ones as decimal strings.
Json integer_to_json(const Integer& v);
Json rational_to_json(const Rational& q);  // [num, den]
Rational rational_from_json(const Json& j);

// [{"eu":..,"ev":..,"evb":..,"re":[n,d],"im":[n,d]}, ...] sorted by
// (eu, ev, evb) descending.
Json semiholo_to_json(const SemiholoPolynomial& f);
SemiholoPolynomial semiholo_from_json(const Json& j);

Json spec_to_json(const LemniscateSpec& spec, int n_rot = 0);
LemniscateSpec spec_from_json(const Json& j);

Json braid_word_to_json(const BraidWord& w);  // signed letter list

Json laurent_to_json(const IntLaurentPoly& p);  // {"minExp":.., "coeffs":[..]}
IntLaurentPoly laurent_from_json(const Json& j);

Json spatial_to_json(const SpatialPolynomial& p);
Json real4_to_json(const RealPolynomial4& p);
Json prediction_to_json(const SpiralPrediction& p);
Json fibration_to_json(const FibrationReport& r);

std::string curve_to_csv(const NodalCurve& curve);
std::string curve_to_csv(const SpaceCurve& curve);

}  // namespace lemknot
