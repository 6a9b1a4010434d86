#include "lemknot/knot_tables.hpp"

namespace lemknot {

std::optional<KnotTableEntry> knot_table_lookup(int s, int r, int lobes) {
  if (lobes == 1) {
    if (s == 2 && r == 3) return KnotTableEntry{"3_1 (trefoil)", {}};
    if (s == 2 && r == 5) return KnotTableEntry{"5_1", {}};
    if (s == 3 && r == 4) return KnotTableEntry{"8_19", {}};
    if (s == 3 && r == 2) return KnotTableEntry{"3_1 (trefoil)", {}};
    return std::nullopt;
  }
  if (lobes == 2) {
    if (r == 2) {
      switch (s) {
        case 3: return KnotTableEntry{"4_1", {1, 1, 1}};
        case 5: return KnotTableEntry{"6_3", {1, 2, 2, 3}};
        case 7: return KnotTableEntry{"8_9", {1, 2, 3, 4, 5}};
        case 9: return KnotTableEntry{"10_17", {1, 2, 3, 5, 6, 7}};
        case 11: return KnotTableEntry{"K12a1273", {1, 2, 3, 5, 7, 8, 9}};
        case 13: return KnotTableEntry{"K14a19298", {1, 2, 3, 5, 7, 9, 10, 11}};
        default: return std::nullopt;
      }
    }
    if (s == 3) {
      switch (r) {
        case 3: return KnotTableEntry{"L6a4 (borromean rings)", {}};
        case 4: return KnotTableEntry{"8_18", {}};
        case 5: return KnotTableEntry{"10_123", {}};
        default: return std::nullopt;
      }
    }
    if (s == 5 && r == 3) return KnotTableEntry{"K12n706", {}};
    return std::nullopt;
  }
  if (lobes == 3) {
    if (r == 2) {
      switch (s) {
        case 4: return KnotTableEntry{"L6a1", {1, 2, 2, 2, 3, 1, 1}};
        case 5: return KnotTableEntry{"7_7", {1, 2, 3, 4, 4, 3, 3, 1}};
        case 7: return KnotTableEntry{"9_31", {1, 4, 6, 8, 10, 9, 8, 5, 3, 1}};
        case 8: return KnotTableEntry{"L10a91", {1, 4, 7, 10, 13, 13, 9, 3, 1}};
        case 11:
          return KnotTableEntry{"13a_4296",
                                {1, 4, 9, 17, 26, 36, 43, 45, 44, 37, 29, 20, 12, 6, 3, 1}};
        default: return std::nullopt;
      }
    }
    if (s == 4 && r == 3) return KnotTableEntry{"9_40", {}};
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<BraidWord> conjectured_minimal_word_l3(int s) {
  if (s < 4 || s % 3 == 0) return std::nullopt;
  int n = s / 3;
  int tail = s % 3;  // 1 or 2
  BraidWord w{4, {}};
  for (int i = 0; i < n; ++i) w.letters.push_back({1, 1});
  w.letters.push_back({2, -1});
  w.letters.push_back({1, 1});
  int mid = tail == 1 ? n - 1 : n;
  for (int i = 0; i < mid; ++i) w.letters.push_back({2, -1});
  w.letters.push_back({3, 1});
  w.letters.push_back({2, -1});
  for (int i = 0; i < n; ++i) w.letters.push_back({3, 1});
  return w;
}

}  // namespace lemknot
