#pragma once

// Bounded-complexity fragment of the type semigroup: formal disjoint unions
// of clopen sets as multisets of levels, equidecomposability and subequivalence
// certificates, proper infiniteness 2x <= x, and the conversions between
// those certificates and paradoxicality certificates.

#include <optional>
#include <string>
#include <vector>

#include "tarski/paradox.hpp"
#include "tarski/search.hpp"

namespace tarski {

class TsgElement {
 public:
  TsgElement() = default;
  // Empty sets are dropped; the remaining levels are kept in canonical order,
  // so equal elements have equal representations.
  static TsgElement make(ModelRef model, std::vector<ClopenSet> levels);
  static TsgElement zero(ModelRef model) { return make(std::move(model), {}); }

  const ModelRef& model() const { return model_; }
  const std::vector<ClopenSet>& levels() const { return levels_; }
  bool is_zero() const { return levels_.empty(); }

  friend bool operator==(const TsgElement& a, const TsgElement& b) {
    return *a.model_ == *b.model_ && a.levels_ == b.levels_;
  }

 private:
  ModelRef model_;
  std::vector<ClopenSet> levels_;
};

TsgElement tsg_add(const TsgElement& x, const TsgElement& y);
TsgElement tsg_scale(const TsgElement& x, int n);

// One move: piece C (clopen) from source level n_k translated by t_k into
// target level m_k. Level indices are 0-based into the canonical level lists.
using TsgMove = EmbedMove;

struct EquidecompCert {
  std::vector<TsgMove> moves;
};

// exact=true: x ~ y (moves partition the source levels and the images
// partition the target levels). exact=false: x embeds into y (x <= y).
bool verify_embedding(const TsgElement& x, const TsgElement& y, const EquidecompCert& cert,
                      bool exact, std::string* why = nullptr);
inline bool verify_equi(const TsgElement& x, const TsgElement& y, const EquidecompCert& c,
                        std::string* why = nullptr) {
  return verify_embedding(x, y, c, true, why);
}
inline bool verify_leq(const TsgElement& x, const TsgElement& y, const EquidecompCert& c,
                       std::string* why = nullptr) {
  return verify_embedding(x, y, c, false, why);
}

std::optional<EquidecompCert> find_equi(const TsgElement& x, const TsgElement& y, int radius,
                                        int max_moves);
std::optional<EquidecompCert> find_leq(const TsgElement& x, const TsgElement& y, int radius,
                                       int max_moves);

// Certificate for 2[E] <= [E].
std::optional<EquidecompCert> properly_infinite(const ClopenSet& E, int radius, int max_moves);

// Reverse an equidecomposability certificate (swap roles, invert translators).
EquidecompCert reverse_cert(const GroupSpec& spec, const EquidecompCert& cert);

// Compose certs x~y and y~z into a cert x~z by common refinement on y.
EquidecompCert compose_certs(const TsgElement& x, const TsgElement& y, const TsgElement& z,
                             const EquidecompCert& xy, const EquidecompCert& yz);

// A verified 2[E] <= [E] certificate reshapes into
// a paradoxicality certificate for E and back.
ParadoxCert tsg_to_paradox(const ClopenSet& E, const EquidecompCert& cert);
EquidecompCert paradox_to_tsg(const ParadoxCert& cert);

struct UnperforationProbe {
  bool premise_found = false;   // some cert for nx <= my
  bool conclusion_found = false;  // cert for x <= y
  bool candidate_violation = false;  // premise found, conclusion not found at bounds
  std::string note;             // always "bounded evidence only" when violating
  std::optional<EquidecompCert> premise;
  std::optional<EquidecompCert> conclusion;
};
UnperforationProbe unperforation_probe(const TsgElement& x, const TsgElement& y, int n, int m,
                                       int radius, int max_moves);

}  // namespace tarski
