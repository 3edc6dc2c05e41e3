#pragma once

// Exact rational LP feasibility for invariant finitely additive measures on
// a finite window: variables are atom masses, constraints are mu >= 0,
// mu(E) = 1 and mu(k.F) = mu(F) for k in K, F in the family. Either a
// measure table or a Farkas infeasibility certificate is returned, both
// re-verified by substitution before they leave the solver.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tarski/clopen.hpp"

namespace tarski {

struct MeasureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AtomCapExceeded : MeasureError {
  using MeasureError::MeasureError;
};

struct LPInstance {
  std::vector<ClopenSet> family;
  std::vector<Word> invariance;  // K
  ClopenSet normalized;          // E, with target mass 1
  std::vector<ClopenSet> atoms;  // atoms of the generated algebra

  // rows: row 0 is mu(E) = 1; then one row per (k, F) in (K x family) order,
  // meaning mu(k.F) - mu(F) = 0.
  std::vector<std::vector<mpq_class>> constraint_matrix;
  std::vector<mpq_class> rhs;
};

inline constexpr long kDefaultAtomCap = 4096;

LPInstance make_lp_instance(const std::vector<ClopenSet>& family, const std::vector<Word>& K,
                            const ClopenSet& E, long atom_cap = kDefaultAtomCap);

struct MeasureTable {
  std::vector<mpq_class> atom_values;
};

struct FarkasCert {
  // One multiplier per constraint row; combines the equalities into the
  // contradiction 0 >= 1 against mu >= 0.
  std::vector<mpq_class> multipliers;
};

using LPResult = std::variant<MeasureTable, FarkasCert>;

// Exact phase-1 simplex with Bland's rule. Exactly one alternative is
// returned and it has been re-checked by substitution.
LPResult lp_feasibility(const LPInstance& inst);

bool check_measure(const MeasureTable& mt, const LPInstance& inst, std::string* why = nullptr);
bool check_farkas(const FarkasCert& fc, const LPInstance& inst, std::string* why = nullptr);

// Measure of a set expressible as a union of instance atoms.
std::optional<mpq_class> measure_of(const MeasureTable& mt, const LPInstance& inst,
                                    const ClopenSet& s);

// Rescale the normalization target; feasibility status is invariant.
LPInstance with_normalization(const LPInstance& inst, const mpq_class& target);

}  // namespace tarski
