#include "tarski/tsg.hpp"

#include <algorithm>
#include <map>

namespace tarski {

TsgElement TsgElement::make(ModelRef model, std::vector<ClopenSet> levels) {
  TsgElement x;
  x.model_ = std::move(model);
  for (auto& l : levels) {
    if (!(*l.model() == *x.model_)) throw ClopenError("model mismatch between clopen sets");
    if (!l.is_empty()) x.levels_.push_back(std::move(l));
  }
  std::sort(x.levels_.begin(), x.levels_.end(), ClopenSet::less);
  return x;
}

TsgElement tsg_add(const TsgElement& x, const TsgElement& y) {
  if (!(*x.model() == *y.model())) throw ClopenError("model mismatch between clopen sets");
  std::vector<ClopenSet> levels = x.levels();
  levels.insert(levels.end(), y.levels().begin(), y.levels().end());
  return TsgElement::make(x.model(), std::move(levels));
}

TsgElement tsg_scale(const TsgElement& x, int n) {
  TsgElement acc = TsgElement::zero(x.model());
  for (int i = 0; i < n; ++i) acc = tsg_add(acc, x);
  return acc;
}

bool verify_embedding(const TsgElement& x, const TsgElement& y, const EquidecompCert& cert,
                      bool exact, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!(*x.model() == *y.model())) return fail("model mismatch");
  ModelRef model = x.model();
  const GroupSpec& spec = model->spec;

  int nx = static_cast<int>(x.levels().size());
  int ny = static_cast<int>(y.levels().size());
  std::vector<ClopenSet> src_used(nx, ClopenSet::empty(model));
  std::vector<ClopenSet> dst_used(ny, ClopenSet::empty(model));

  for (const auto& mv : cert.moves) {
    if (mv.src_level < 0 || mv.src_level >= nx) return fail("move source level out of range");
    if (mv.dst_level < 0 || mv.dst_level >= ny) return fail("move target level out of range");
    if (mv.piece.is_empty()) return fail("move piece is empty");
    if (!(*mv.piece.model() == *model)) return fail("move piece model mismatch");
    if (!mv.piece.is_subset_of(x.levels()[mv.src_level]))
      return fail("move piece not inside its source level");
    if (!mv.piece.is_disjoint_from(src_used[mv.src_level]))
      return fail("source pieces overlap");
    src_used[mv.src_level] = src_used[mv.src_level].set_union(mv.piece);

    ClopenSet img = mv.piece.translated(mv.translator);
    if (!img.is_subset_of(y.levels()[mv.dst_level]))
      return fail("translated piece not inside its target level");
    if (!img.is_disjoint_from(dst_used[mv.dst_level])) return fail("target pieces overlap");
    dst_used[mv.dst_level] = dst_used[mv.dst_level].set_union(img);
  }
  for (int i = 0; i < nx; ++i) {
    if (!(src_used[i] == x.levels()[i])) return fail("source level not exhausted");
  }
  if (exact) {
    for (int j = 0; j < ny; ++j) {
      if (!(dst_used[j] == y.levels()[j])) return fail("target level not exhausted");
    }
  }
  (void)spec;
  return true;
}

namespace {

std::optional<EquidecompCert> run_embedding(const TsgElement& x, const TsgElement& y, int radius,
                                            int max_moves, bool exact) {
  if (radius < 1 || max_moves < 1) throw ClopenError("bounds must be >= 1");
  if (x.is_zero()) return EquidecompCert{};  // empty certificate: 0 <= y, 0 ~ 0
  if (y.is_zero()) return std::nullopt;
  EmbedOptions opt;
  opt.radius = radius;
  opt.max_moves = max_moves;
  opt.exact = exact;
  auto emb = find_embedding(x.levels(), y.levels(), opt);
  if (!emb) return std::nullopt;
  EquidecompCert cert{std::move(emb->moves)};
  std::string why;
  if (!verify_embedding(x, y, cert, exact, &why))
    throw ClopenError("internal: searched certificate fails verification: " + why);
  return cert;
}

}  // namespace

std::optional<EquidecompCert> find_equi(const TsgElement& x, const TsgElement& y, int radius,
                                        int max_moves) {
  if (x.is_zero() || y.is_zero()) {
    if (x.is_zero() && y.is_zero()) return EquidecompCert{};
    return std::nullopt;
  }
  return run_embedding(x, y, radius, max_moves, true);
}

std::optional<EquidecompCert> find_leq(const TsgElement& x, const TsgElement& y, int radius,
                                       int max_moves) {
  return run_embedding(x, y, radius, max_moves, false);
}

std::optional<EquidecompCert> properly_infinite(const ClopenSet& E, int radius, int max_moves) {
  if (E.is_empty()) throw ClopenError("properly_infinite: E is empty");
  TsgElement one = TsgElement::make(E.model(), {E});
  return find_leq(tsg_add(one, one), one, radius, max_moves);
}

EquidecompCert reverse_cert(const GroupSpec& spec, const EquidecompCert& cert) {
  EquidecompCert out;
  for (const auto& mv : cert.moves) {
    out.moves.push_back({mv.piece.translated(mv.translator), mv.dst_level,
                         inverse(spec, mv.translator), mv.src_level});
  }
  return out;
}

EquidecompCert compose_certs(const TsgElement& x, const TsgElement& y, const TsgElement& z,
                             const EquidecompCert& xy, const EquidecompCert& yz) {
  (void)x;
  (void)z;
  const GroupSpec& spec = y.model()->spec;
  EquidecompCert out;
  // Common refinement over the middle element: a piece that lands in level j
  // of y continues with every yz-move leaving level j it intersects.
  for (const auto& m1 : xy.moves) {
    ClopenSet img = m1.piece.translated(m1.translator);
    for (const auto& m2 : yz.moves) {
      if (m2.src_level != m1.dst_level) continue;
      ClopenSet common = img.set_intersect(m2.piece);
      if (common.is_empty()) continue;
      ClopenSet piece = common.translated(inverse(spec, m1.translator));
      out.moves.push_back({std::move(piece), m1.src_level,
                           multiply(spec, m2.translator, m1.translator), m2.dst_level});
    }
  }
  return out;
}

// Accepts a certificate moving 2[E] (plus an optional remainder level) into
// [E]: the two levels whose pieces tile E become the covers, remainder moves
// are dropped, and the images stay disjoint because the input's were.
ParadoxCert tsg_to_paradox(const ClopenSet& E, const EquidecompCert& cert) {
  ModelRef model = E.model();
  std::map<int, std::vector<const TsgMove*>> by_level;
  ClopenSet used_images = ClopenSet::empty(model);
  for (const auto& mv : cert.moves) {
    if (mv.piece.is_empty()) throw ClopenError("tsg_to_paradox: move piece is empty");
    if (mv.dst_level != 0) throw ClopenError("tsg_to_paradox: target must be the single level [E]");
    ClopenSet img = mv.piece.translated(mv.translator);
    if (!img.is_subset_of(E)) throw ClopenError("tsg_to_paradox: image leaves E");
    if (!img.is_disjoint_from(used_images))
      throw ClopenError("tsg_to_paradox: images overlap");
    used_images = used_images.set_union(img);
    by_level[mv.src_level].push_back(&mv);
  }
  std::vector<int> cover_levels;
  for (const auto& [lv, moves] : by_level) {
    ClopenSet uni = ClopenSet::empty(model);
    for (const TsgMove* mv : moves) {
      if (!mv->piece.is_disjoint_from(uni))
        throw ClopenError("tsg_to_paradox: source pieces overlap");
      uni = uni.set_union(mv->piece);
    }
    if (uni == E && cover_levels.size() < 2) cover_levels.push_back(lv);
  }
  if (cover_levels.size() < 2)
    throw ClopenError("tsg_to_paradox: input does not contain two copies of E");

  ParadoxCert pc;
  pc.region = E;
  for (const TsgMove* mv : by_level[cover_levels[0]])
    pc.pieces.push_back({mv->piece, mv->translator});
  pc.split = static_cast<int>(pc.pieces.size());
  for (const TsgMove* mv : by_level[cover_levels[1]])
    pc.pieces.push_back({mv->piece, mv->translator});
  std::string why;
  if (!verify_paradox(pc, &why))
    throw ClopenError("internal: converted certificate fails verification: " + why);
  return pc;
}

EquidecompCert paradox_to_tsg(const ParadoxCert& cert) {
  std::string why;
  if (!verify_paradox(cert, &why))
    throw ClopenError("paradox_to_tsg: input certificate invalid: " + why);
  // Covers may overlap; refine each to a partition and drop empty parts, then
  // the moves land disjointly because the original images were disjoint.
  EquidecompCert out;
  for (int cover = 0; cover < 2; ++cover) {
    std::vector<ClopenSet> sets;
    std::vector<Word> ts;
    int lo = cover == 0 ? 0 : cert.split;
    int hi = cover == 0 ? cert.split : static_cast<int>(cert.pieces.size());
    for (int i = lo; i < hi; ++i) {
      sets.push_back(cert.pieces[i].set);
      ts.push_back(cert.pieces[i].translator);
    }
    auto refined = refine_cover_to_partition(sets, cert.region);
    for (size_t i = 0; i < refined.parts.size(); ++i) {
      if (refined.parts[i].is_empty()) continue;
      out.moves.push_back({refined.parts[i], cover, ts[i], 0});
    }
  }
  TsgElement one = TsgElement::make(cert.region.model(), {cert.region});
  if (!verify_leq(tsg_add(one, one), one, out, &why))
    throw ClopenError("internal: converted certificate fails verification: " + why);
  return out;
}

UnperforationProbe unperforation_probe(const TsgElement& x, const TsgElement& y, int n, int m,
                                       int radius, int max_moves) {
  if (n <= m || m < 1) throw ClopenError("unperforation probe needs n > m >= 1");
  UnperforationProbe probe;
  if (x.is_zero()) {
    probe.premise_found = true;
    probe.conclusion_found = true;
    probe.premise = EquidecompCert{};
    probe.conclusion = EquidecompCert{};
    return probe;  // 0 is never a violation
  }
  probe.premise = find_leq(tsg_scale(x, n), tsg_scale(y, m), radius, max_moves);
  probe.premise_found = probe.premise.has_value();
  if (!probe.premise_found) return probe;
  probe.conclusion = find_leq(x, y, radius, max_moves);
  probe.conclusion_found = probe.conclusion.has_value();
  if (!probe.conclusion_found) {
    probe.candidate_violation = true;
    probe.note = "bounded evidence only";
  }
  return probe;
}

}  // namespace tarski
