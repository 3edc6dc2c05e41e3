#pragma once

// Exact-cover style backtracking kernel: embed a formal disjoint union of
// clopen levels into another by piecewise translation. Pieces are drawn from
// the depth-r cells of each source level, translators from a bounded ball,
// and images must be pairwise disjoint inside the targets (and exhaust them
// in exact mode). One kernel serves paradox search, ~_S search, and <= search.

#include <optional>
#include <vector>

#include "tarski/clopen.hpp"

namespace tarski {

struct EmbedMove {
  ClopenSet piece;
  int src_level = 0;
  Word translator;
  int dst_level = 0;
};

struct Embedding {
  std::vector<EmbedMove> moves;
};

struct EmbedOptions {
  int radius = 1;      // translator word-length bound; also the piece depth
  int max_moves = 4;   // distinct (source level, translator, target level) triples
  bool exact = false;  // images must tile the targets exactly
  std::optional<std::vector<Word>> translators;  // overrides ball(radius)
  // Pieces drawn from these partitions of the source levels instead of the
  // depth-r cells; each entry must partition its level.
  std::optional<std::vector<std::vector<ClopenSet>>> atoms_override;
  // Iterate the move budget upward so the first hit uses the fewest moves;
  // costs an exhaustive pass per failed budget.
  bool minimal_moves = false;
  long node_budget = 0;  // 0 = unlimited; otherwise abort via SearchBudgetExceeded
};

struct SearchBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deterministic: levels are searched atom-by-atom in canonical order, with
// candidate (translator, target) pairs in ball order, under an outer loop on
// the move count, so the first result is minimal and reproducible.
std::optional<Embedding> find_embedding(const std::vector<ClopenSet>& sources,
                                        const std::vector<ClopenSet>& targets,
                                        const EmbedOptions& opt);

// The depth-d cells of a clopen set as singleton clopen sets, in the
// deterministic order the kernel uses.
std::vector<ClopenSet> level_cells(const ClopenSet& s, int d);

}  // namespace tarski
