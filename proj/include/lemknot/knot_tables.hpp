#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lemknot/braid.hpp"

namespace lemknot {

// Tabulated identifications of small lemniscate closures. Names and Jones
// coefficient patterns are fixture data from standard knot tables; nothing
// here is computed or asserted as a theorem.
struct KnotTableEntry {
  std::string name;
  std::vector<int> jones_abs_coeffs;  // absolute values, highest power first
};

std::optional<KnotTableEntry> knot_table_lookup(int s, int r, int lobes);

// Conjectured minimal braid word for the three-lobe, period-2 family
// (matches the known minimal words up to s = 7; unproven beyond).
std::optional<BraidWord> conjectured_minimal_word_l3(int s);

}  // namespace lemknot
