#include <doctest.h>

#include "lemknot/json_io.hpp"
#include "lemknot/knot_tables.hpp"

using namespace lemknot;

TEST_CASE("knot table fixtures") {
  auto fig8 = knot_table_lookup(3, 2, 2);
  REQUIRE(fig8.has_value());
  CHECK(fig8->name == "4_1");
  CHECK(fig8->jones_abs_coeffs == std::vector<int>{1, 1, 1});

  auto k63 = knot_table_lookup(5, 2, 2);
  REQUIRE(k63.has_value());
  CHECK(k63->name == "6_3");

  auto l6a1 = knot_table_lookup(4, 2, 3);
  REQUIRE(l6a1.has_value());
  CHECK(l6a1->name == "L6a1");

  CHECK(!knot_table_lookup(15, 2, 2).has_value());
}

TEST_CASE("conjectured three-lobe minimal words match the known small cases") {
  // s = 4: s1 s2^-1 s1 s3 s2^-1 s3
  auto w4 = conjectured_minimal_word_l3(4);
  REQUIRE(w4.has_value());
  CHECK(w4->to_signed_indices() == std::vector<int>{1, -2, 1, 3, -2, 3});
  // s = 5: s1 s2^-1 s1 s2^-1 s3 s2^-1 s3
  auto w5 = conjectured_minimal_word_l3(5);
  REQUIRE(w5.has_value());
  CHECK(w5->to_signed_indices() == std::vector<int>{1, -2, 1, -2, 3, -2, 3});
  // s = 7: s1^2 s2^-1 s1 s2^-1 s3 s2^-1 s3^2
  auto w7 = conjectured_minimal_word_l3(7);
  REQUIRE(w7.has_value());
  CHECK(w7->to_signed_indices() == std::vector<int>{1, 1, -2, 1, -2, 3, -2, 3, 3});
  CHECK(!conjectured_minimal_word_l3(6).has_value());
}

TEST_CASE("JSON round trips") {
  LemniscateSpec spec{5, 2, 2, make_rational(3, 4), Rational(-1), make_rational(1, 2)};
  auto f = build_field(spec);
  auto back = semiholo_from_json(semiholo_to_json(f));
  CHECK(back == f);

  auto spec_back = spec_from_json(spec_to_json(spec));
  CHECK(spec_back.s == spec.s);
  CHECK(spec_back.a == spec.a);
  CHECK(spec_back.b == spec.b);
  CHECK(spec_back.lambda == spec.lambda);

  auto delta = fig8_family_alexander(4);
  CHECK(laurent_from_json(laurent_to_json(delta)) == delta);

  // big coefficients survive as strings
  IntLaurentPoly big;
  big.add_term(0, pow_int(Integer(10), 30));
  big.add_term(3, Integer(-7));
  CHECK(laurent_from_json(laurent_to_json(big)) == big);
}
