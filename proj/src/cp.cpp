#include "tarski/cp.hpp"

#include <algorithm>

namespace tarski {

SimpleFunction SimpleFunction::zero(ModelRef model) {
  SimpleFunction f;
  f.model_ = std::move(model);
  return f;
}

SimpleFunction SimpleFunction::indicator(const ClopenSet& s, const mpq_class& value) {
  return from_pieces(s.model(), {{s, value}});
}

SimpleFunction SimpleFunction::from_pieces(ModelRef model,
                                           std::vector<std::pair<ClopenSet, mpq_class>> pieces) {
  // Split into disjoint cells with accumulated values, then merge the cells
  // carrying the same value; preimages of distinct values are canonical.
  std::vector<std::pair<ClopenSet, mpq_class>> cells;
  for (auto& [s, v] : pieces) {
    if (!(*s.model() == *model)) throw ClopenError("model mismatch between clopen sets");
    v.canonicalize();  // mpq equality assumes canonical form
    if (s.is_empty() || v == 0) continue;
    std::vector<std::pair<ClopenSet, mpq_class>> next;
    ClopenSet rest = s;
    for (auto& [r, u] : cells) {
      ClopenSet both = r.set_intersect(s);
      if (!both.is_empty()) next.emplace_back(both, u + v);
      ClopenSet only = r.set_minus(s);
      if (!only.is_empty()) next.emplace_back(only, u);
      rest = rest.set_minus(r);
    }
    if (!rest.is_empty()) next.emplace_back(rest, v);
    cells = std::move(next);
  }
  std::map<mpq_class, ClopenSet> by_value;
  for (auto& [r, v] : cells) {
    if (v == 0) continue;
    auto it = by_value.find(v);
    if (it == by_value.end())
      by_value.emplace(v, r);
    else
      it->second = it->second.set_union(r);
  }
  SimpleFunction f;
  f.model_ = std::move(model);
  for (auto& [v, r] : by_value) f.pieces_.emplace_back(r, v);
  return f;
}

bool SimpleFunction::nonnegative() const {
  for (const auto& [r, v] : pieces_)
    if (v < 0) return false;
  return true;
}

bool SimpleFunction::indicator_valued() const {
  for (const auto& [r, v] : pieces_)
    if (v != 1) return false;
  return true;
}

ClopenSet SimpleFunction::support() const {
  ClopenSet s = ClopenSet::empty(model_);
  for (const auto& [r, v] : pieces_) s = s.set_union(r);
  return s;
}

SimpleFunction SimpleFunction::operator+(const SimpleFunction& o) const {
  std::vector<std::pair<ClopenSet, mpq_class>> ps = pieces_;
  ps.insert(ps.end(), o.pieces_.begin(), o.pieces_.end());
  return from_pieces(model_ ? model_ : o.model_, std::move(ps));
}

SimpleFunction SimpleFunction::operator-(const SimpleFunction& o) const {
  return *this + o.scaled(-1);
}

SimpleFunction SimpleFunction::operator*(const SimpleFunction& o) const {
  std::vector<std::pair<ClopenSet, mpq_class>> ps;
  for (const auto& [r, u] : pieces_) {
    for (const auto& [s, v] : o.pieces_) {
      ClopenSet both = r.set_intersect(s);
      if (!both.is_empty()) ps.emplace_back(both, u * v);
    }
  }
  return from_pieces(model_ ? model_ : o.model_, std::move(ps));
}

SimpleFunction SimpleFunction::scaled(const mpq_class& c) const {
  std::vector<std::pair<ClopenSet, mpq_class>> ps;
  for (const auto& [r, v] : pieces_) ps.emplace_back(r, v * c);
  return from_pieces(model_, std::move(ps));
}

SimpleFunction SimpleFunction::translated(const Word& g) const {
  std::vector<std::pair<ClopenSet, mpq_class>> ps;
  for (const auto& [r, v] : pieces_) ps.emplace_back(r.translated(g), v);
  return from_pieces(model_, std::move(ps));
}

void CPElement::insert_term(const Word& t, const SimpleFunction& f) {
  if (f.is_zero()) return;
  auto it = terms_.find(t);
  if (it == terms_.end()) {
    terms_.emplace(t, f);
  } else {
    SimpleFunction sum = it->second + f;
    terms_.erase(it);
    if (!sum.is_zero()) terms_.emplace(t, std::move(sum));
  }
}

CPElement CPElement::term(const Word& t, const SimpleFunction& coef) {
  CPElement x(coef.model());
  x.insert_term(t, coef);
  return x;
}

CPElement CPElement::unit(const ClopenSet& on) {
  return term(Word{}, SimpleFunction::indicator(on));
}

SimpleFunction CPElement::coefficient(const Word& t) const {
  auto it = terms_.find(t);
  if (it != terms_.end()) return it->second;
  return SimpleFunction::zero(model_);
}

CPElement cp_add(const CPElement& a, const CPElement& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!(*a.model() == *b.model())) throw ClopenError("model mismatch between elements");
  CPElement out = a;
  for (const auto& [t, f] : b.terms_) out.insert_term(t, f);
  return out;
}

CPElement cp_sub(const CPElement& a, const CPElement& b) {
  if (b.is_zero()) return a;
  CPElement out = a.is_zero() ? CPElement(b.model()) : a;
  for (const auto& [t, f] : b.terms()) out.insert_term(t, f.scaled(-1));
  return out;
}

CPElement cp_mul(const CPElement& a, const CPElement& b) {
  if (a.is_zero()) return a;
  if (b.is_zero()) return b;
  if (!(*a.model() == *b.model())) throw ClopenError("model mismatch between elements");
  const GroupSpec& spec = a.model()->spec;
  CPElement out(a.model());
  for (const auto& [s, f] : a.terms_) {
    for (const auto& [t, g] : b.terms_) {
      // (f u_s)(g u_t) = f (s.g) u_{st}
      out.insert_term(multiply(spec, s, t), f * g.translated(s));
    }
  }
  return out;
}

CPElement cp_adjoint(const CPElement& a) {
  if (a.is_zero()) return a;
  const GroupSpec& spec = a.model()->spec;
  CPElement out(a.model());
  for (const auto& [t, f] : a.terms_) {
    Word ti = inverse(spec, t);
    out.insert_term(ti, f.translated(ti));
  }
  return out;
}

SimpleFunction cond_expectation(const CPElement& a) {
  if (a.is_zero() || !a.model()) return SimpleFunction();
  return a.coefficient(Word{});
}

bool check_expectation_identities(const CPElement& x) {
  if (x.is_zero()) return true;
  const GroupSpec& spec = x.model()->spec;
  SimpleFunction lhs1 = cond_expectation(cp_mul(x, cp_adjoint(x)));
  SimpleFunction rhs1 = SimpleFunction::zero(x.model());
  for (const auto& [t, f] : x.terms()) rhs1 = rhs1 + f * f;
  if (!(lhs1 == rhs1)) return false;

  SimpleFunction lhs2 = cond_expectation(cp_mul(cp_adjoint(x), x));
  SimpleFunction rhs2 = SimpleFunction::zero(x.model());
  for (const auto& [t, f] : x.terms()) {
    // the sum runs over s with x_{s^-1} nonzero; s = t^-1 contributes s.(f*f)
    rhs2 = rhs2 + (f * f).translated(inverse(spec, t));
  }
  if (!(lhs2 == rhs2)) return false;
  return true;
}

std::pair<CPElement, CPElement> build_witness(const ParadoxCert& cert) {
  std::string why;
  if (!verify_paradox(cert, &why))
    throw ClopenError("build_witness: certificate invalid: " + why);
  ModelRef model = cert.region.model();

  auto half = [&](int lo, int hi) {
    std::vector<ClopenSet> sets;
    std::vector<Word> ts;
    for (int i = lo; i < hi; ++i) {
      sets.push_back(cert.pieces[i].set);
      ts.push_back(cert.pieces[i].translator);
    }
    auto refined = refine_cover_to_partition(sets, cert.region);
    CPElement acc(model);
    for (size_t i = 0; i < refined.parts.size(); ++i) {
      if (refined.parts[i].is_empty()) continue;
      // u_t 1_P = 1_{t.P} u_t
      acc = cp_add(acc, CPElement::term(ts[i],
                                        SimpleFunction::indicator(
                                            refined.parts[i].translated(ts[i]))));
    }
    return acc;
  };
  return {half(0, cert.split), half(cert.split, static_cast<int>(cert.pieces.size()))};
}

WitnessReport verify_witness(const CPElement& x, const CPElement& y, const ClopenSet& U) {
  WitnessReport rep;
  CPElement unit = CPElement::unit(U);
  if (!(cp_mul(cp_adjoint(x), x) == unit)) {
    rep.failed_clause = "x*x=1_U";
    return rep;
  }
  if (!(cp_mul(cp_adjoint(y), y) == unit)) {
    rep.failed_clause = "y*y=1_U";
    return rep;
  }
  if (!cp_mul(cp_adjoint(y), x).is_zero()) {
    rep.failed_clause = "y*x=0";
    return rep;
  }
  CPElement s = cp_add(cp_mul(x, cp_adjoint(x)), cp_mul(y, cp_adjoint(y)));
  bool off_diagonal_zero = true;
  for (const auto& [t, f] : s.terms())
    if (!t.is_identity()) off_diagonal_zero = false;
  SimpleFunction diff = SimpleFunction::indicator(U) - cond_expectation(s);
  if (!off_diagonal_zero || !diff.nonnegative()) {
    rep.failed_clause = "xx*+yy*<=1_U";
    return rep;
  }
  rep.ok = true;
  return rep;
}

ParadoxCert extract_paradox(const CPElement& x, const CPElement& y, const ClopenSet& U) {
  WitnessReport rep = verify_witness(x, y, U);
  if (!rep.ok) throw ClopenError("extract_paradox: witness invalid (" + rep.failed_clause + ")");
  const GroupSpec& spec = U.spec();
  for (const CPElement* e : {&x, &y}) {
    for (const auto& [t, f] : e->terms())
      if (!f.nonnegative()) throw ClopenError("extract_paradox: coefficients must be nonnegative");
  }
  ParadoxCert cert;
  cert.region = U;
  for (const auto& [t, f] : x.terms())
    cert.pieces.push_back({f.support().translated(inverse(spec, t)), t});
  cert.split = static_cast<int>(cert.pieces.size());
  for (const auto& [t, f] : y.terms())
    cert.pieces.push_back({f.support().translated(inverse(spec, t)), t});
  std::string why;
  if (!verify_paradox(cert, &why))
    throw ClopenError("internal: extracted certificate fails verification: " + why);
  return cert;
}

namespace {

std::optional<mpq_class> integrate(const SimpleFunction& f, const LPInstance& inst,
                                   const MeasureTable& mt) {
  mpq_class total = 0;
  for (const auto& [r, v] : f.pieces()) {
    auto mu = measure_of(mt, inst, r);
    if (!mu) return std::nullopt;
    total += v * (*mu);
  }
  return total;
}

}  // namespace

TraceCheck trace_check(const LPInstance& inst, const MeasureTable& mt,
                       const std::vector<CPElement>& samples) {
  TraceCheck out;
  for (const CPElement& xx : samples) {
    SimpleFunction left = cond_expectation(cp_mul(cp_adjoint(xx), xx));
    SimpleFunction right = cond_expectation(cp_mul(xx, cp_adjoint(xx)));
    auto lv = integrate(left, inst, mt);
    auto rv = integrate(right, inst, mt);
    if (!lv || !rv) {
      ++out.window_too_small;
      continue;
    }
    ++out.checked;
    if (*lv != *rv) out.ok = false;
  }
  return out;
}

FreenessProjections freeness_projections(ModelRef model, const Partition3Cert& cert) {
  if (model->kind != ActionKind::SelfAction)
    throw ClopenError("freeness projections need the self-action model");
  const GroupSpec& spec = model->spec;
  std::string why;
  if (!verify_partition(spec, cert, &why))
    throw ClopenError("freeness_projections: partition certificate invalid: " + why);

  int ncolors = cert.num_colors;
  std::vector<std::vector<LetterWord>> point_cells(ncolors);
  for (const auto& [w, c] : cert.classes) point_cells[c - 1].push_back(spell(spec, w));

  std::vector<std::vector<LetterWord>> cone_cells(ncolors);
  std::vector<LetterWord> residual_cones;
  int frontier = cert.radius + 1;
  for (const auto& u : canonical_words(spec, frontier)) {
    auto col = cone_color(spec, cert.t, u);
    if (col.has_value())
      cone_cells[*col - 1].push_back(u);
    else
      residual_cones.push_back(u);
  }

  FreenessProjections out;
  out.residual =
      ClopenSet::from_cones_points(model, frontier, std::move(residual_cones), {});
  std::vector<ClopenSet> classes;
  for (int c = 0; c < ncolors; ++c) {
    classes.push_back(ClopenSet::from_cones_points(model, frontier, std::move(cone_cells[c]),
                                                   std::move(point_cells[c])));
    out.projections.push_back(CPElement::unit(classes.back()));
  }

  ClopenSet uni = out.residual;
  bool disjoint = true;
  for (int c = 0; c < ncolors; ++c) {
    if (!classes[c].is_disjoint_from(out.residual)) disjoint = false;
    for (int d = c + 1; d < ncolors; ++d)
      if (!classes[c].is_disjoint_from(classes[d])) disjoint = false;
    uni = uni.set_union(classes[c]);
  }
  out.partition_ok = disjoint && uni == ClopenSet::whole(model);

  out.orthogonal_ok = true;
  for (int c = 0; c < ncolors; ++c) {
    SimpleFunction f = SimpleFunction::indicator(classes[c]);
    if (!(f.translated(cert.t) * f).is_zero()) out.orthogonal_ok = false;
  }
  out.exact = out.residual.is_empty();
  return out;
}

}  // namespace tarski
