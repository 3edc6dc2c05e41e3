#pragma once

// Exact Boolean algebra of clopen sets for two action models.
//
// Boundary: the space of infinite canonical letter sequences of a free
// product (a Cantor set unless the group is finite, Z, or Z2*Z2). A clopen
// set is a finite union of cylinders [w], stored as the unique minimal
// antichain of canonical letter words.
//
// SelfAction: the group itself with the left translation action. A clopen
// set is stored at a uniform depth d as cones C(w) over words of length
// exactly d plus finitely many points of length < d, normalized to the
// minimal depth.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tarski/group.hpp"

namespace tarski {

struct ClopenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ActionKind { Boundary, SelfAction };

struct ActionModel {
  GroupSpec spec;
  ActionKind kind = ActionKind::Boundary;

  friend bool operator==(const ActionModel&, const ActionModel&) = default;
};

using ModelRef = std::shared_ptr<const ActionModel>;

// Throws unless the boundary is a Cantor set: at least two factors and not
// Z2*Z2 (Boundary kind); SelfAction accepts any spec.
ModelRef make_model(GroupSpec spec, ActionKind kind);

class ClopenSet {
 public:
  ClopenSet() = default;

  static ClopenSet empty(ModelRef m);
  static ClopenSet whole(ModelRef m);
  // Boundary cylinder [w] / SelfAction cone C(w), indexed by a group element.
  static ClopenSet cylinder(ModelRef m, const Word& w);
  static ClopenSet cone(ModelRef m, const Word& w);
  static ClopenSet point(ModelRef m, const Word& g);  // SelfAction singleton

  const ModelRef& model() const { return model_; }
  const GroupSpec& spec() const { return model_->spec; }
  ActionKind kind() const { return model_->kind; }

  bool is_empty() const;
  bool is_whole() const;
  int depth() const;

  ClopenSet set_union(const ClopenSet& b) const;
  ClopenSet set_intersect(const ClopenSet& b) const;
  ClopenSet set_minus(const ClopenSet& b) const;
  ClopenSet complement() const;
  bool is_subset_of(const ClopenSet& b) const;
  bool is_disjoint_from(const ClopenSet& b) const;

  // Exact image g.S under the action.
  ClopenSet translated(const Word& g) const;

  // Boundary: does the end through this canonical prefix lie in the set?
  // The prefix must be at least as deep as the representation.
  bool contains_end(const LetterWord& prefix) const;
  // SelfAction: membership of a group element.
  bool contains_point(const Word& g) const;

  // Uniform-depth cells at depth d >= depth(): Boundary gives the canonical
  // words of length d whose cylinders lie inside; SelfAction gives cones of
  // length d plus member points of length < d.
  std::vector<LetterWord> cells_at(int d) const;            // Boundary
  std::vector<LetterWord> cone_cells_at(int d) const;       // SelfAction
  std::vector<LetterWord> point_cells_at(int d) const;      // SelfAction

  const std::vector<LetterWord>& antichain() const { return cyl_; }  // Boundary
  const std::vector<LetterWord>& cones() const { return cones_; }    // SelfAction
  const std::vector<LetterWord>& points() const { return points_; }  // SelfAction

  friend bool operator==(const ClopenSet& a, const ClopenSet& b);
  // Deterministic total order on sets of a common model.
  static bool less(const ClopenSet& a, const ClopenSet& b);

  static ClopenSet from_cylinders(ModelRef m, std::vector<LetterWord> words);
  static ClopenSet from_cones_points(ModelRef m, int depth, std::vector<LetterWord> cones,
                                     std::vector<LetterWord> points);

 private:
  void require_same_model(const ClopenSet& b) const;

  ModelRef model_;
  // Boundary representation
  std::vector<LetterWord> cyl_;  // minimal antichain, sorted
  // SelfAction representation
  int depth_ = 0;
  std::vector<LetterWord> cones_;   // length == depth_, sorted
  std::vector<LetterWord> points_;  // length < depth_, sorted
};

// All canonical letter words of the given exact length (the depth-d cells of
// the whole space in either model).
std::vector<LetterWord> canonical_words(const GroupSpec& spec, int length);

// Atoms of the finite subalgebra generated by a family: pairwise disjoint,
// cover the space, every family member a union of atoms. Deterministic order.
std::vector<ClopenSet> atoms(const std::vector<ClopenSet>& family);

// P_i = V_i minus the union of the earlier V_j; empty parts are kept in
// place and reported in empty_indices.
struct RefinedPartition {
  std::vector<ClopenSet> parts;
  std::vector<int> empty_indices;
};
RefinedPartition refine_cover_to_partition(const std::vector<ClopenSet>& cover,
                                           const ClopenSet& whole);

}  // namespace tarski
