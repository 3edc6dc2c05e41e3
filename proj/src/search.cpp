#include "tarski/search.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace tarski {

namespace {

struct Bits {
  std::vector<uint64_t> w;
  void resize(size_t n) { w.assign((n + 63) / 64, 0); }
  void set(size_t i) { w[i / 64] |= uint64_t{1} << (i % 64); }
  bool disjoint(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return false;
    return true;
  }
  void add(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  void remove(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  long count() const {
    long c = 0;
    for (uint64_t x : w) c += __builtin_popcountll(x);
    return c;
  }
  bool operator==(const Bits& o) const { return w == o.w; }
};

struct Candidate {
  int translator_idx;
  int dst_level;
  Bits image;
  long image_size;
};

struct Atom {
  int src_level;
  ClopenSet set;
  std::vector<Candidate> cands;
  long min_image = 0;
  long max_image = 0;
};

}  // namespace

std::vector<ClopenSet> level_cells(const ClopenSet& s, int d) {
  std::vector<ClopenSet> out;
  if (s.kind() == ActionKind::Boundary) {
    for (const auto& w : s.cells_at(d))
      out.push_back(ClopenSet::from_cylinders(s.model(), {w}));
  } else {
    for (const auto& p : s.point_cells_at(d))
      out.push_back(ClopenSet::from_cones_points(s.model(), d, {}, {p}));
    for (const auto& c : s.cone_cells_at(d))
      out.push_back(ClopenSet::from_cones_points(s.model(), d, {c}, {}));
  }
  return out;
}

std::optional<Embedding> find_embedding(const std::vector<ClopenSet>& sources,
                                        const std::vector<ClopenSet>& targets,
                                        const EmbedOptions& opt) {
  if (sources.empty() || targets.empty()) throw ClopenError("embedding needs levels");
  ModelRef model = sources.front().model();
  for (const auto& s : sources)
    if (!(*s.model() == *model)) throw ClopenError("model mismatch between clopen sets");
  for (const auto& t : targets)
    if (!(*t.model() == *model)) throw ClopenError("model mismatch between clopen sets");
  const GroupSpec& spec = model->spec;

  std::vector<Word> trans = opt.translators ? *opt.translators : ball(spec, opt.radius);

  // Source atoms: depth-r cells of each level, unless overridden.
  std::vector<Atom> atoms_;
  if (opt.atoms_override) {
    if (opt.atoms_override->size() != sources.size())
      throw ClopenError("atoms_override must give one partition per source level");
    for (int lv = 0; lv < static_cast<int>(sources.size()); ++lv) {
      ClopenSet uni = ClopenSet::empty(model);
      const auto& cells = (*opt.atoms_override)[lv];
      for (size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].is_empty()) throw ClopenError("atoms_override cell is empty");
        for (size_t j = i + 1; j < cells.size(); ++j)
          if (!cells[i].is_disjoint_from(cells[j]))
            throw ClopenError("atoms_override cells overlap");
        uni = uni.set_union(cells[i]);
        atoms_.push_back({lv, cells[i], {}, 0, 0});
      }
      if (!(uni == sources[lv]))
        throw ClopenError("atoms_override does not partition its source level");
    }
  } else {
    for (int lv = 0; lv < static_cast<int>(sources.size()); ++lv) {
      int d = std::max(opt.radius, sources[lv].depth());
      for (auto& cell : level_cells(sources[lv], d))
        atoms_.push_back({lv, std::move(cell), {}, 0, 0});
    }
  }

  // Candidate images, kept as exact clopen sets first.
  struct RawCand {
    size_t atom;
    int ti, dst;
    ClopenSet img;
  };
  std::vector<RawCand> raw;
  for (size_t ai = 0; ai < atoms_.size(); ++ai) {
    for (int ti = 0; ti < static_cast<int>(trans.size()); ++ti) {
      ClopenSet img = atoms_[ai].set.translated(trans[ti]);
      for (int dst = 0; dst < static_cast<int>(targets.size()); ++dst) {
        if (img.is_subset_of(targets[dst])) raw.push_back({ai, ti, dst, img});
      }
    }
  }

  // Cell universes per target level, deep enough for every image.
  std::vector<int> tdepth(targets.size(), 0);
  for (int dst = 0; dst < static_cast<int>(targets.size()); ++dst)
    tdepth[dst] = targets[dst].depth();
  for (const auto& rc : raw) tdepth[rc.dst] = std::max(tdepth[rc.dst], rc.img.depth());

  std::vector<std::map<LetterWord, std::pair<size_t, bool>, decltype(&letterword_less)>> index;
  std::vector<size_t> universe_size(targets.size(), 0);
  for (int dst = 0; dst < static_cast<int>(targets.size()); ++dst) {
    index.emplace_back(&letterword_less);
    size_t n = 0;
    if (model->kind == ActionKind::Boundary) {
      for (const auto& w : targets[dst].cells_at(tdepth[dst])) index[dst][w] = {n++, false};
    } else {
      for (const auto& p : targets[dst].point_cells_at(tdepth[dst])) index[dst][p] = {n++, false};
      for (const auto& c : targets[dst].cone_cells_at(tdepth[dst])) index[dst][c] = {n++, true};
    }
    universe_size[dst] = n;
  }

  auto to_bits = [&](const ClopenSet& img, int dst) {
    Bits b;
    b.resize(universe_size[dst]);
    if (model->kind == ActionKind::Boundary) {
      for (const auto& w : img.cells_at(tdepth[dst])) b.set(index[dst].at(w).first);
    } else {
      for (const auto& p : img.point_cells_at(tdepth[dst])) b.set(index[dst].at(p).first);
      for (const auto& c : img.cone_cells_at(tdepth[dst])) b.set(index[dst].at(c).first);
    }
    return b;
  };
  for (auto& rc : raw) {
    Bits b = to_bits(rc.img, rc.dst);
    long sz = b.count();
    atoms_[rc.atom].cands.push_back({rc.ti, rc.dst, std::move(b), sz});
  }
  raw.clear();

  long total_capacity = 0;
  for (size_t n : universe_size) total_capacity += static_cast<long>(n);
  for (auto& a : atoms_) {
    if (a.cands.empty()) return std::nullopt;  // some atom has nowhere to go
    a.min_image = a.cands.front().image_size;
    a.max_image = 0;
    for (const auto& c : a.cands) {
      a.min_image = std::min(a.min_image, c.image_size);
      a.max_image = std::max(a.max_image, c.image_size);
    }
  }

  // suffix sums for the capacity prune
  size_t n_atoms = atoms_.size();
  std::vector<long> min_suffix(n_atoms + 1, 0), max_suffix(n_atoms + 1, 0);
  for (size_t i = n_atoms; i-- > 0;) {
    min_suffix[i] = min_suffix[i + 1] + atoms_[i].min_image;
    max_suffix[i] = max_suffix[i + 1] + atoms_[i].max_image;
  }

  std::vector<Bits> claimed(targets.size());
  for (size_t dst = 0; dst < targets.size(); ++dst) claimed[dst].resize(universe_size[dst]);
  std::vector<int> chosen(n_atoms, -1);
  long used_cells = 0;
  long nodes = 0;

  // moves in use, keyed by (src_level, translator, dst_level)
  std::map<std::tuple<int, int, int>, int> move_count;

  std::optional<Embedding> result;

  auto finish = [&]() {
    Embedding emb;
    std::map<std::tuple<int, int, int>, size_t> move_of;
    for (size_t i = 0; i < n_atoms; ++i) {
      const Candidate& c = atoms_[i].cands[chosen[i]];
      auto key = std::make_tuple(atoms_[i].src_level, c.translator_idx, c.dst_level);
      auto it = move_of.find(key);
      if (it == move_of.end()) {
        move_of[key] = emb.moves.size();
        emb.moves.push_back(
            {atoms_[i].set, atoms_[i].src_level, trans[c.translator_idx], c.dst_level});
      } else {
        EmbedMove& m = emb.moves[it->second];
        m.piece = m.piece.set_union(atoms_[i].set);
      }
    }
    result = std::move(emb);
  };

  auto dfs = [&](auto&& self, size_t assigned, long min_remaining, long max_remaining,
                 int move_budget) -> bool {
    if (opt.node_budget > 0 && ++nodes > opt.node_budget)
      throw SearchBudgetExceeded("search node budget exceeded");
    if (assigned == n_atoms) {
      if (opt.exact) {
        for (size_t dst = 0; dst < targets.size(); ++dst) {
          if (claimed[dst].count() != static_cast<long>(universe_size[dst])) return false;
        }
      }
      finish();
      return true;
    }
    long free_cells = total_capacity - used_cells;
    if (min_remaining > free_cells) return false;
    if (opt.exact && max_remaining < free_cells) return false;

    // most constrained unassigned atom first; ties by index for determinism
    size_t pick = n_atoms;
    long best = -1;
    for (size_t i = 0; i < n_atoms; ++i) {
      if (chosen[i] >= 0) continue;
      long feasible = 0;
      for (const Candidate& c : atoms_[i].cands) {
        auto key = std::make_tuple(atoms_[i].src_level, c.translator_idx, c.dst_level);
        bool fresh = !move_count.count(key) || move_count[key] == 0;
        if (fresh && move_budget == 0) continue;
        if (claimed[c.dst_level].disjoint(c.image)) ++feasible;
      }
      if (feasible == 0) return false;  // dead atom
      if (best < 0 || feasible < best) {
        best = feasible;
        pick = i;
      }
    }

    Atom& a = atoms_[pick];
    for (int ci = 0; ci < static_cast<int>(a.cands.size()); ++ci) {
      const Candidate& c = a.cands[ci];
      auto key = std::make_tuple(a.src_level, c.translator_idx, c.dst_level);
      bool fresh = !move_count.count(key) || move_count[key] == 0;
      if (fresh && move_budget == 0) continue;
      if (!claimed[c.dst_level].disjoint(c.image)) continue;
      claimed[c.dst_level].add(c.image);
      used_cells += c.image_size;
      ++move_count[key];
      chosen[pick] = ci;
      if (self(self, assigned + 1, min_remaining - a.min_image, max_remaining - a.max_image,
               move_budget - (fresh ? 1 : 0)))
        return true;
      chosen[pick] = -1;
      --move_count[key];
      used_cells -= c.image_size;
      claimed[c.dst_level].remove(c.image);
    }
    return false;
  };

  int min_moves = static_cast<int>(sources.size());
  if (min_moves > opt.max_moves) return std::nullopt;
  if (!opt.minimal_moves) {
    if (dfs(dfs, 0, min_suffix[0], max_suffix[0], opt.max_moves)) return result;
    return std::nullopt;
  }
  for (int budget = min_moves; budget <= opt.max_moves; ++budget) {
    if (dfs(dfs, 0, min_suffix[0], max_suffix[0], budget)) return result;
  }
  return std::nullopt;
}

}  // namespace tarski
