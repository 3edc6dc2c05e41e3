#include "tarski/clopen.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tarski {

namespace {

using WordSet = std::set<LetterWord, decltype(&letterword_less)>;

WordSet make_wordset() { return WordSet(&letterword_less); }

std::vector<LetterWord> sorted_unique(std::vector<LetterWord> v) {
  std::sort(v.begin(), v.end(), letterword_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

bool is_prefix(const LetterWord& p, const LetterWord& w) {
  if (p.size() > w.size()) return false;
  return std::equal(p.begin(), p.end(), w.begin());
}

long max_finite_cap(const GroupSpec& spec) {
  long m = 1;
  for (int f = 0; f < spec.factor_count(); ++f) {
    long n = spec.order_of(f);
    if (n != 0) m = std::max(m, n / 2);
  }
  return m;
}

// Expand one canonical word to all its canonical extensions of exact length d.
void expand_word(const GroupSpec& spec, const LetterWord& w, int d,
                 std::vector<LetterWord>& out) {
  if (static_cast<int>(w.size()) == d) {
    out.push_back(w);
    return;
  }
  for (const Letter& l : next_letters(spec, w)) {
    LetterWord e = w;
    e.push_back(l);
    expand_word(spec, e, d, out);
  }
}

// Same but collecting every extension of length in [|w|, d] (used by cones,
// whose subtree contains the intermediate group elements as points).
void expand_word_upto(const GroupSpec& spec, const LetterWord& w, int d,
                      std::vector<LetterWord>& out) {
  out.push_back(w);
  if (static_cast<int>(w.size()) == d) return;
  for (const Letter& l : next_letters(spec, w)) {
    LetterWord e = w;
    e.push_back(l);
    expand_word_upto(spec, e, d, out);
  }
}

// Minimal antichain: drop words dominated by a prefix, then collapse every
// complete (possibly singleton) sibling family into its parent, layer by
// layer from the deepest words.
std::vector<LetterWord> canonical_antichain(const GroupSpec& spec,
                                            std::vector<LetterWord> words) {
  words = sorted_unique(std::move(words));
  auto present = make_wordset();
  for (const auto& w : words) {
    bool dominated = false;
    LetterWord p;
    p.reserve(w.size());
    for (const Letter& l : w) {  // w itself is checked via unique above
      if (present.count(p)) {
        dominated = true;
        break;
      }
      p.push_back(l);
    }
    if (!dominated) present.insert(w);
  }
  int maxlen = 0;
  for (const auto& w : present) maxlen = std::max(maxlen, static_cast<int>(w.size()));
  for (int len = maxlen; len >= 1; --len) {
    std::map<LetterWord, long, decltype(&letterword_less)> family_count(&letterword_less);
    for (const auto& w : present) {
      if (static_cast<int>(w.size()) != len) continue;
      family_count[LetterWord(w.begin(), w.end() - 1)]++;
    }
    for (const auto& [parent, count] : family_count) {
      if (count != static_cast<long>(next_letters(spec, parent).size())) continue;
      for (const Letter& l : next_letters(spec, parent)) {
        LetterWord child = parent;
        child.push_back(l);
        present.erase(child);
      }
      present.insert(parent);
    }
  }
  return {present.begin(), present.end()};
}

}  // namespace

std::vector<LetterWord> canonical_words(const GroupSpec& spec, int length) {
  std::vector<LetterWord> out;
  expand_word(spec, {}, length, out);
  std::sort(out.begin(), out.end(), letterword_less);
  return out;
}

ModelRef make_model(GroupSpec spec, ActionKind kind) {
  if (kind == ActionKind::Boundary) {
    bool two_z2 = spec.factor_count() == 2 && spec.order_of(0) == 2 && spec.order_of(1) == 2;
    if (spec.factor_count() < 2 || two_z2)
      throw ClopenError(
          "boundary model requires a free product whose boundary is a Cantor set "
          "(at least two factors, not Z2*Z2)");
  }
  return std::make_shared<const ActionModel>(ActionModel{std::move(spec), kind});
}

void ClopenSet::require_same_model(const ClopenSet& b) const {
  if (!model_ || !b.model_ || !(*model_ == *b.model_))
    throw ClopenError("model mismatch between clopen sets");
}

ClopenSet ClopenSet::empty(ModelRef m) {
  ClopenSet s;
  s.model_ = std::move(m);
  return s;
}

ClopenSet ClopenSet::whole(ModelRef m) {
  ClopenSet s;
  s.model_ = std::move(m);
  if (s.model_->kind == ActionKind::Boundary) {
    s.cyl_ = {LetterWord{}};
  } else {
    s.depth_ = 0;
    s.cones_ = {LetterWord{}};
  }
  return s;
}

ClopenSet ClopenSet::from_cylinders(ModelRef m, std::vector<LetterWord> words) {
  if (m->kind != ActionKind::Boundary) throw ClopenError("cylinders need a boundary model");
  ClopenSet s;
  s.model_ = std::move(m);
  s.cyl_ = canonical_antichain(s.model_->spec, std::move(words));
  return s;
}

ClopenSet ClopenSet::from_cones_points(ModelRef m, int depth, std::vector<LetterWord> cones,
                                       std::vector<LetterWord> points) {
  if (m->kind != ActionKind::SelfAction)
    throw ClopenError("cones need a self-action model");
  const GroupSpec& spec = m->spec;
  // Normalize to a uniform depth first.
  int d = depth;
  for (const auto& w : cones) d = std::max(d, static_cast<int>(w.size()));
  for (const auto& p : points) d = std::max(d, static_cast<int>(p.size()) + 1);
  std::vector<LetterWord> cs, ps(points.begin(), points.end());
  for (const auto& w : cones) {
    std::vector<LetterWord> sub;
    expand_word_upto(spec, w, d, sub);
    for (auto& x : sub) {
      if (static_cast<int>(x.size()) == d)
        cs.push_back(std::move(x));
      else
        ps.push_back(std::move(x));
    }
  }
  cs = sorted_unique(std::move(cs));
  ps = sorted_unique(std::move(ps));

  // Collapse to the minimal depth. A node of length d-1 becomes a cone iff
  // its point is present and all its (possibly zero) children are cones; the
  // pass succeeds only if every depth-d cone and every length-(d-1) point is
  // absorbed this way.
  while (d > 0) {
    auto cone_set = make_wordset();
    cone_set.insert(cs.begin(), cs.end());
    auto point_set = make_wordset();
    point_set.insert(ps.begin(), ps.end());

    auto full_parent = [&](const LetterWord& p) {
      if (!point_set.count(p)) return false;
      for (const Letter& l : next_letters(spec, p)) {
        LetterWord child = p;
        child.push_back(l);
        if (!cone_set.count(child)) return false;
      }
      return true;
    };

    bool ok = true;
    std::vector<LetterWord> parents;
    auto seen_parent = make_wordset();
    for (const auto& w : cs) {
      LetterWord parent(w.begin(), w.end() - 1);
      if (!seen_parent.insert(parent).second) continue;
      if (!full_parent(parent)) {
        ok = false;
        break;
      }
      parents.push_back(parent);
    }
    if (ok) {
      for (const auto& p : ps) {
        if (static_cast<int>(p.size()) != d - 1 || seen_parent.count(p)) continue;
        if (!full_parent(p)) {  // childless points still collapse to cones
          ok = false;
          break;
        }
        parents.push_back(p);
      }
    }
    if (!ok) break;
    std::vector<LetterWord> nps;
    for (const auto& p : ps)
      if (static_cast<int>(p.size()) < d - 1) nps.push_back(p);
    cs = sorted_unique(std::move(parents));
    ps = std::move(nps);
    --d;
  }
  if (cs.empty() && ps.empty()) d = 0;

  ClopenSet s;
  s.model_ = std::move(m);
  s.depth_ = d;
  s.cones_ = std::move(cs);
  s.points_ = std::move(ps);
  return s;
}

ClopenSet ClopenSet::cylinder(ModelRef m, const Word& w) {
  const GroupSpec& spec = m->spec;
  return from_cylinders(std::move(m), {spell(spec, w)});
}

ClopenSet ClopenSet::cone(ModelRef m, const Word& w) {
  const GroupSpec& spec = m->spec;
  LetterWord lw = spell(spec, w);
  int d = static_cast<int>(lw.size());
  return from_cones_points(std::move(m), d, {std::move(lw)}, {});
}

ClopenSet ClopenSet::point(ModelRef m, const Word& g) {
  const GroupSpec& spec = m->spec;
  LetterWord lw = spell(spec, g);
  int d = static_cast<int>(lw.size()) + 1;
  return from_cones_points(std::move(m), d, {}, {std::move(lw)});
}

bool ClopenSet::is_empty() const {
  if (!model_) return true;
  return model_->kind == ActionKind::Boundary ? cyl_.empty() : cones_.empty() && points_.empty();
}

bool ClopenSet::is_whole() const {
  if (!model_) return false;
  if (model_->kind == ActionKind::Boundary) return cyl_.size() == 1 && cyl_[0].empty();
  return depth_ == 0 && cones_.size() == 1 && cones_[0].empty();
}

int ClopenSet::depth() const {
  if (model_ && model_->kind == ActionKind::SelfAction) return depth_;
  int d = 0;
  for (const auto& w : cyl_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

std::vector<LetterWord> ClopenSet::cells_at(int d) const {
  if (model_->kind != ActionKind::Boundary) throw ClopenError("cells_at is for boundary sets");
  if (d < depth()) throw ClopenError("cells_at needs d >= depth");
  std::vector<LetterWord> out;
  for (const auto& w : cyl_) expand_word(model_->spec, w, d, out);
  std::sort(out.begin(), out.end(), letterword_less);
  return out;
}

std::vector<LetterWord> ClopenSet::cone_cells_at(int d) const {
  if (model_->kind != ActionKind::SelfAction) throw ClopenError("cone_cells_at is for self-action");
  if (d < depth_) throw ClopenError("cone_cells_at needs d >= depth");
  std::vector<LetterWord> out;
  for (const auto& w : cones_) expand_word(model_->spec, w, d, out);
  std::sort(out.begin(), out.end(), letterword_less);
  return out;
}

std::vector<LetterWord> ClopenSet::point_cells_at(int d) const {
  if (model_->kind != ActionKind::SelfAction)
    throw ClopenError("point_cells_at is for self-action");
  if (d < depth_) throw ClopenError("point_cells_at needs d >= depth");
  std::vector<LetterWord> out(points_.begin(), points_.end());
  for (const auto& w : cones_) {
    std::vector<LetterWord> sub;
    expand_word_upto(model_->spec, w, d, sub);
    for (auto& x : sub)
      if (static_cast<int>(x.size()) < d) out.push_back(std::move(x));
  }
  return sorted_unique(std::move(out));
}

ClopenSet ClopenSet::set_union(const ClopenSet& b) const {
  require_same_model(b);
  if (model_->kind == ActionKind::Boundary) {
    std::vector<LetterWord> words = cyl_;
    words.insert(words.end(), b.cyl_.begin(), b.cyl_.end());
    return from_cylinders(model_, std::move(words));
  }
  int d = std::max(depth_, b.depth_);
  auto cs = cone_cells_at(d);
  auto bc = b.cone_cells_at(d);
  cs.insert(cs.end(), bc.begin(), bc.end());
  auto ps = point_cells_at(d);
  auto bp = b.point_cells_at(d);
  ps.insert(ps.end(), bp.begin(), bp.end());
  return from_cones_points(model_, d, std::move(cs), std::move(ps));
}

ClopenSet ClopenSet::set_intersect(const ClopenSet& b) const {
  require_same_model(b);
  if (model_->kind == ActionKind::Boundary) {
    std::vector<LetterWord> words;
    for (const auto& u : cyl_) {
      for (const auto& v : b.cyl_) {
        if (is_prefix(u, v))
          words.push_back(v);
        else if (is_prefix(v, u))
          words.push_back(u);
      }
    }
    return from_cylinders(model_, std::move(words));
  }
  int d = std::max(depth_, b.depth_);
  auto ca = cone_cells_at(d), cb = b.cone_cells_at(d);
  auto pa = point_cells_at(d), pb = b.point_cells_at(d);
  std::vector<LetterWord> cs, ps;
  std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(), std::back_inserter(cs),
                        letterword_less);
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(ps),
                        letterword_less);
  return from_cones_points(model_, d, std::move(cs), std::move(ps));
}

ClopenSet ClopenSet::complement() const {
  if (model_->kind == ActionKind::Boundary) {
    // Peel the antichain off the trie one word at a time: the complement of
    // [w] below its parent is the sibling set, recursively up the spine.
    std::vector<LetterWord> out;
    auto inside = make_wordset();
    inside.insert(cyl_.begin(), cyl_.end());
    // nodes on the spine of some antichain word get expanded, others emitted
    auto spine = make_wordset();
    for (const auto& w : cyl_) {
      LetterWord p;
      for (const Letter& l : w) {
        spine.insert(p);
        p.push_back(l);
      }
    }
    std::vector<LetterWord> stack{LetterWord{}};
    while (!stack.empty()) {
      LetterWord node = std::move(stack.back());
      stack.pop_back();
      if (inside.count(node)) continue;
      if (!spine.count(node)) {
        out.push_back(node);
        continue;
      }
      for (const Letter& l : next_letters(model_->spec, node)) {
        LetterWord child = node;
        child.push_back(l);
        stack.push_back(std::move(child));
      }
    }
    return from_cylinders(model_, std::move(out));
  }
  int d = depth_;
  auto all_cones = canonical_words(model_->spec, d);
  std::vector<LetterWord> all_points;
  for (int l = 0; l < d; ++l) {
    auto ws = canonical_words(model_->spec, l);
    all_points.insert(all_points.end(), ws.begin(), ws.end());
  }
  all_points = sorted_unique(std::move(all_points));
  std::vector<LetterWord> cs, ps;
  std::set_difference(all_cones.begin(), all_cones.end(), cones_.begin(), cones_.end(),
                      std::back_inserter(cs), letterword_less);
  std::set_difference(all_points.begin(), all_points.end(), points_.begin(), points_.end(),
                      std::back_inserter(ps), letterword_less);
  return from_cones_points(model_, d, std::move(cs), std::move(ps));
}

ClopenSet ClopenSet::set_minus(const ClopenSet& b) const { return set_intersect(b.complement()); }

bool ClopenSet::is_subset_of(const ClopenSet& b) const { return set_minus(b).is_empty(); }

bool ClopenSet::is_disjoint_from(const ClopenSet& b) const { return set_intersect(b).is_empty(); }

bool operator==(const ClopenSet& a, const ClopenSet& b) {
  a.require_same_model(b);
  if (a.model_->kind == ActionKind::Boundary) return a.cyl_ == b.cyl_;
  return a.depth_ == b.depth_ && a.cones_ == b.cones_ && a.points_ == b.points_;
}

bool ClopenSet::less(const ClopenSet& a, const ClopenSet& b) {
  a.require_same_model(b);
  auto cmp_words = [](const std::vector<LetterWord>& x, const std::vector<LetterWord>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), letterword_less);
  };
  if (a.model_->kind == ActionKind::Boundary) {
    if (a.cyl_ != b.cyl_) return cmp_words(a.cyl_, b.cyl_);
    return false;
  }
  if (a.depth_ != b.depth_) return a.depth_ < b.depth_;
  if (a.cones_ != b.cones_) return cmp_words(a.cones_, b.cones_);
  if (a.points_ != b.points_) return cmp_words(a.points_, b.points_);
  return false;
}

bool ClopenSet::contains_end(const LetterWord& prefix) const {
  if (model_->kind != ActionKind::Boundary) throw ClopenError("contains_end is for boundary sets");
  if (static_cast<int>(prefix.size()) < depth())
    throw ClopenError("prefix query shallower than the set representation");
  for (const auto& w : cyl_)
    if (is_prefix(w, prefix)) return true;
  return false;
}

bool ClopenSet::contains_point(const Word& g) const {
  if (model_->kind != ActionKind::SelfAction)
    throw ClopenError("contains_point is for self-action sets");
  LetterWord lw = spell(model_->spec, g);
  if (static_cast<int>(lw.size()) < depth_)
    return std::binary_search(points_.begin(), points_.end(), lw, letterword_less);
  LetterWord head(lw.begin(), lw.begin() + depth_);
  return std::binary_search(cones_.begin(), cones_.end(), head, letterword_less);
}

ClopenSet ClopenSet::translated(const Word& g) const {
  if (g.is_identity() || is_empty()) return *this;
  const GroupSpec& spec = model_->spec;
  long len_g = word_length(spec, g);
  long margin = max_finite_cap(spec) + 2;

  if (model_->kind == ActionKind::Boundary) {
    if (is_whole()) return *this;
    for (int attempt = 0; attempt < 8; ++attempt) {
      int d = depth() + static_cast<int>(len_g + margin * (attempt + 1));
      std::vector<LetterWord> images;
      bool ok = true;
      for (const auto& u : cells_at(d)) {
        LetterWord v = spell(spec, multiply(spec, g, unspell(spec, u)));
        if (!letter_state_match(spec, v, u)) {
          ok = false;
          break;
        }
        images.push_back(std::move(v));
      }
      if (ok) return from_cylinders(model_, std::move(images));
    }
    throw ClopenError("translation failed to stabilize (internal)");
  }

  for (int attempt = 0; attempt < 8; ++attempt) {
    int d = depth_ + static_cast<int>(len_g + margin * (attempt + 1));
    std::vector<LetterWord> cone_images, point_images;
    bool ok = true;
    for (const auto& u : cone_cells_at(d)) {
      LetterWord v = spell(spec, multiply(spec, g, unspell(spec, u)));
      if (!letter_state_match(spec, v, u)) {
        ok = false;
        break;
      }
      cone_images.push_back(std::move(v));
    }
    if (!ok) continue;
    for (const auto& p : point_cells_at(d))
      point_images.push_back(spell(spec, multiply(spec, g, unspell(spec, p))));
    int dout = 0;
    for (const auto& w : cone_images) dout = std::max(dout, static_cast<int>(w.size()));
    for (const auto& p : point_images) dout = std::max(dout, static_cast<int>(p.size()) + 1);
    return from_cones_points(model_, dout, std::move(cone_images), std::move(point_images));
  }
  throw ClopenError("translation failed to stabilize (internal)");
}

std::vector<ClopenSet> atoms(const std::vector<ClopenSet>& family) {
  if (family.empty()) throw ClopenError("atoms: family must be nonempty");
  ModelRef model = family.front().model();
  for (const auto& s : family)
    if (!(*s.model() == *model)) throw ClopenError("model mismatch between clopen sets");
  const GroupSpec& spec = model->spec;

  int d = 0;
  for (const auto& s : family) d = std::max(d, s.depth());

  struct Cell {
    LetterWord w;
    bool is_cone;  // self-action only
  };
  std::vector<Cell> universe;
  if (model->kind == ActionKind::Boundary) {
    for (auto& w : canonical_words(spec, d)) universe.push_back({std::move(w), false});
  } else {
    for (int l = 0; l < d; ++l)
      for (auto& w : canonical_words(spec, l)) universe.push_back({std::move(w), false});
    for (auto& w : canonical_words(spec, d)) universe.push_back({std::move(w), true});
  }

  std::vector<std::vector<bool>> member(family.size());
  for (size_t i = 0; i < family.size(); ++i) {
    auto in = make_wordset();
    if (model->kind == ActionKind::Boundary) {
      auto cells = family[i].cells_at(d);
      in.insert(cells.begin(), cells.end());
      for (const auto& c : universe) member[i].push_back(in.count(c.w) > 0);
    } else {
      auto cones = family[i].cone_cells_at(d);
      auto pts = family[i].point_cells_at(d);
      auto inp = make_wordset();
      in.insert(cones.begin(), cones.end());
      inp.insert(pts.begin(), pts.end());
      for (const auto& c : universe)
        member[i].push_back(c.is_cone ? in.count(c.w) > 0 : inp.count(c.w) > 0);
    }
  }

  std::map<std::vector<bool>, std::vector<size_t>> groups;
  std::vector<std::vector<bool>> order_of_first;
  for (size_t c = 0; c < universe.size(); ++c) {
    std::vector<bool> sig(family.size());
    for (size_t i = 0; i < family.size(); ++i) sig[i] = member[i][c];
    auto [it, fresh] = groups.try_emplace(sig);
    if (fresh) order_of_first.push_back(sig);
    it->second.push_back(c);
  }

  std::vector<ClopenSet> out;
  for (const auto& sig : order_of_first) {
    const auto& cells = groups[sig];
    if (model->kind == ActionKind::Boundary) {
      std::vector<LetterWord> words;
      for (size_t c : cells) words.push_back(universe[c].w);
      out.push_back(ClopenSet::from_cylinders(model, std::move(words)));
    } else {
      std::vector<LetterWord> cs, ps;
      for (size_t c : cells)
        (universe[c].is_cone ? cs : ps).push_back(universe[c].w);
      out.push_back(ClopenSet::from_cones_points(model, d, std::move(cs), std::move(ps)));
    }
  }
  return out;
}

RefinedPartition refine_cover_to_partition(const std::vector<ClopenSet>& cover,
                                           const ClopenSet& whole) {
  if (cover.empty()) throw ClopenError("refine: cover must be nonempty");
  ClopenSet uni = ClopenSet::empty(whole.model());
  for (const auto& v : cover) {
    if (!v.is_subset_of(whole)) throw ClopenError("refine: cover element not inside the set");
    uni = uni.set_union(v);
  }
  if (!(uni == whole)) throw ClopenError("refine: cover does not cover the set");

  RefinedPartition out;
  ClopenSet used = ClopenSet::empty(whole.model());
  for (int i = 0; i < static_cast<int>(cover.size()); ++i) {
    ClopenSet part = cover[i].set_minus(used);
    if (part.is_empty()) out.empty_indices.push_back(i);
    used = used.set_union(part);
    out.parts.push_back(std::move(part));
  }
  return out;
}

}  // namespace tarski
