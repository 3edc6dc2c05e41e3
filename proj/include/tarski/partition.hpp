#pragma once

// Constructive partitions G = G_1 u G_2 (u G_3) with G_j disjoint from t.G_j,
// built by coloring positions inside <t>-cosets relative to a canonical
// transversal (the length-lex least element of each coset).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tarski/group.hpp"

namespace tarski {

struct Partition3Cert {
  Word t;
  int radius = 0;
  int num_colors = 3;                       // 2 or 3
  std::vector<std::pair<Word, int>> classes;  // window element -> color in 1..num_colors
  std::string rule;                         // transversal rule identifier
  bool two_sided = false;                   // two_partition: asserts G_2 = t.G_1 on the window
};

inline constexpr const char* kLexminTransversalRule = "lexmin-coset-transversal-v1";

// Position of g within its <t>-coset: g = t^k * h where h is the length-lex
// least element of {t^j g}. For finite order N the position is k mod N.
struct OrbitPosition {
  long position = 0;
  Word representative;
};
OrbitPosition orbit_position(const GroupSpec& spec, const Word& t, const Word& g);

// Color in 1..3 assigned to an orbit position (depends on order(t)).
int position_color(long position, std::optional<long> order_of_t);

int rule_color(const GroupSpec& spec, const Word& t, const Word& g);

Partition3Cert three_partition(const GroupSpec& spec, const Word& t, int radius);
Partition3Cert two_partition(const GroupSpec& spec, const Word& t, int radius);

// Checks the certificate invariants; on failure *why names the clause.
bool verify_partition(const GroupSpec& spec, const Partition3Cert& cert,
                      std::string* why = nullptr);

// Exhaustive check that an n-cycle admits a proper 2-coloring (adjacent
// positions differently colored, cyclically). False exactly for odd n >= 3.
bool cycle_two_colorable(int n);

// Color of the whole cone C(u) under the rule, when provably constant on it.
std::optional<int> cone_color(const GroupSpec& spec, const Word& t, const LetterWord& u);

}  // namespace tarski
