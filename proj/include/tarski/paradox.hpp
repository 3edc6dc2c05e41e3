#pragma once

// (G,E)-paradoxicality certificates: two covers of U whose translated pieces
// are pairwise disjoint inside U; exact verification, bounded search, and the
// flow-based doubling obstruction for the self-action setting.

#include <optional>
#include <string>
#include <vector>

#include "tarski/clopen.hpp"
#include "tarski/search.hpp"

namespace tarski {

struct ParadoxPiece {
  ClopenSet set;
  Word translator;
};

struct ParadoxCert {
  ClopenSet region;                  // U
  std::vector<ParadoxPiece> pieces;  // 1..split cover U, split+1..end cover U again
  int split = 0;                     // n
};

// True iff every certificate invariant holds; the first violated clause is
// named in *why. Covers may overlap (faithful to the definition); the
// translated pieces may not.
bool verify_paradox(const ParadoxCert& cert, std::string* why = nullptr);

// Bounded search over pieces from the depth-r cells of U with translators of
// length <= r; deterministic, minimal piece count first. nullopt means
// not-found-within-bounds, never non-paradoxicality.
std::optional<ParadoxCert> find_paradox(const ClopenSet& U, int radius, int max_pieces);

// Restricted variant used by the Tarski-alternative cross checks: pieces are
// unions of the given partition of U and translators come exactly from
// `translators`, so a found certificate contradicts any invariant measure
// that normalizes U and is invariant under the listed words.
std::optional<ParadoxCert> find_paradox_with_atoms(const ClopenSet& U,
                                                   const std::vector<ClopenSet>& atoms_of_U,
                                                   const std::vector<Word>& translators,
                                                   int max_pieces);

// Largest 2-to-1 partial matching of A = E n B_r into E by translations from
// K, computed by max flow together with a matching min cut. slack > 0 proves
// there is no paradoxical decomposition of E with translators in K.
struct DoublingReport {
  long window_size = 0;  // |A|
  long flow = 0;
  long slack = 0;  // 2|A| - flow
  bool empty_window = false;
  std::vector<Word> deficient_set;  // Hall violator on the window when slack > 0
  long deficient_neighbours = 0;    // |K.S n E| for the violator
};
DoublingReport doubling_check(const ClopenSet& E, const std::vector<Word>& K, int radius);

}  // namespace tarski
