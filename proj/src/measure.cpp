#include "tarski/measure.hpp"

#include <algorithm>

namespace tarski {

namespace {

// 0/1 row of atom memberships for a set that must be a union of atoms.
std::vector<mpq_class> atom_row(const std::vector<ClopenSet>& atoms, const ClopenSet& s,
                                const char* what) {
  std::vector<mpq_class> row(atoms.size(), 0);
  ClopenSet covered = ClopenSet::empty(s.model());
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].is_subset_of(s)) {
      row[i] = 1;
      covered = covered.set_union(atoms[i]);
    } else if (!atoms[i].is_disjoint_from(s)) {
      throw MeasureError(std::string(what) + " is not a union of the instance atoms");
    }
  }
  if (!(covered == s))
    throw MeasureError(std::string(what) + " is not covered by the instance atoms");
  return row;
}

}  // namespace

LPInstance make_lp_instance(const std::vector<ClopenSet>& family, const std::vector<Word>& K,
                            const ClopenSet& E, long atom_cap) {
  LPInstance inst;
  inst.family = family;
  inst.invariance = K;
  inst.normalized = E;

  std::vector<ClopenSet> gens;
  gens.push_back(E);
  for (const auto& f : family) gens.push_back(f);
  std::vector<ClopenSet> base = gens;
  for (const Word& k : K)
    for (const auto& f : base) gens.push_back(f.translated(k));
  // drop empty generators; atoms() wants sets of one model, empties carry it too
  inst.atoms = atoms(gens);
  if (static_cast<long>(inst.atoms.size()) > atom_cap)
    throw AtomCapExceeded("atom count " + std::to_string(inst.atoms.size()) +
                          " exceeds the cap " + std::to_string(atom_cap) +
                          "; chunk the instance explicitly");
  // atoms() partitions the whole space; mass outside every generator is
  // unconstrained and stays in the table

  inst.constraint_matrix.push_back(atom_row(inst.atoms, E, "normalized set"));
  inst.rhs.push_back(1);
  for (const Word& k : K) {
    for (const auto& f : family) {
      auto row_kf = atom_row(inst.atoms, f.translated(k), "translated family member");
      auto row_f = atom_row(inst.atoms, f, "family member");
      std::vector<mpq_class> row(inst.atoms.size());
      for (size_t i = 0; i < row.size(); ++i) row[i] = row_kf[i] - row_f[i];
      inst.constraint_matrix.push_back(std::move(row));
      inst.rhs.push_back(0);
    }
  }
  return inst;
}

LPInstance with_normalization(const LPInstance& inst, const mpq_class& target) {
  LPInstance out = inst;
  out.rhs[0] = target;
  return out;
}

namespace {

// Phase-1 simplex tableau over exact rationals, Bland's rule throughout.
struct Simplex {
  size_t m, n;  // constraints, structural variables
  // columns: 0..n-1 structural, n..n+m-1 artificial, last = rhs
  std::vector<std::vector<mpq_class>> t;  // m rows
  std::vector<mpq_class> obj;             // reduced cost row (minimization)
  mpq_class obj_value = 0;                // current -objective
  std::vector<size_t> basis;              // basis[r] = column basic in row r

  Simplex(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b)
      : m(a.size()), n(a.empty() ? 0 : a[0].size()) {
    t.assign(m, std::vector<mpq_class>(n + m + 1, 0));
    for (size_t r = 0; r < m; ++r) {
      bool neg = b[r] < 0;
      for (size_t c = 0; c < n; ++c) t[r][c] = neg ? mpq_class(-a[r][c]) : a[r][c];
      t[r][n + r] = 1;
      t[r][n + m] = neg ? mpq_class(-b[r]) : b[r];
      basis.push_back(n + r);
    }
    // objective: minimize sum of artificials; reduced costs after pricing out
    obj.assign(n + m + 1, 0);
    for (size_t r = 0; r < m; ++r)
      for (size_t c = 0; c <= n + m; ++c) obj[c] -= t[r][c];
    for (size_t r = 0; r < m; ++r) obj[n + r] = 0;
  }

  void pivot(size_t row, size_t col) {
    mpq_class p = t[row][col];
    for (auto& x : t[row]) x /= p;
    for (size_t r = 0; r < m; ++r) {
      if (r == row) continue;
      mpq_class f = t[r][col];
      if (f == 0) continue;
      for (size_t c = 0; c <= n + m; ++c) t[r][c] -= f * t[row][c];
    }
    mpq_class f = obj[col];
    if (f != 0)
      for (size_t c = 0; c <= n + m; ++c) obj[c] -= f * t[row][c];
    basis[row] = col;
  }

  // returns minimum of sum of artificials
  mpq_class solve() {
    while (true) {
      size_t col = n + m;
      for (size_t c = 0; c < n + m; ++c) {
        if (obj[c] < 0) {
          col = c;
          break;  // Bland: first negative reduced cost
        }
      }
      if (col == n + m) break;
      size_t row = m;
      mpq_class best;
      for (size_t r = 0; r < m; ++r) {
        if (t[r][col] <= 0) continue;
        mpq_class ratio = t[r][n + m] / t[r][col];
        if (row == m || ratio < best || (ratio == best && basis[r] < basis[row])) {
          best = ratio;
          row = r;
        }
      }
      if (row == m) throw MeasureError("phase-1 objective unbounded (internal)");
      pivot(row, col);
    }
    return -obj[n + m];
  }
};

}  // namespace

LPResult lp_feasibility(const LPInstance& inst) {
  const auto& a = inst.constraint_matrix;
  const auto& b = inst.rhs;
  size_t m = a.size(), n = inst.atoms.size();
  Simplex sx(a, b);
  mpq_class opt = sx.solve();

  if (opt == 0) {
    MeasureTable mt;
    mt.atom_values.assign(n, 0);
    for (size_t r = 0; r < m; ++r) {
      if (sx.basis[r] < n) mt.atom_values[sx.basis[r]] = sx.t[r][n + m];
    }
    std::string why;
    if (!check_measure(mt, inst, &why))
      throw MeasureError("internal: solver measure fails verification: " + why);
    return mt;
  }

  // y_i = 1 - reduced cost of the i-th artificial; then y^T A <= 0 and
  // y^T b = opt > 0. Normalize to y^T b = 1.
  FarkasCert fc;
  fc.multipliers.resize(m);
  mpq_class ytb = 0;
  for (size_t i = 0; i < m; ++i) {
    mpq_class y = 1 - sx.obj[n + i];
    if (b[i] < 0) y = -y;  // rows were sign-flipped to make rhs nonnegative
    fc.multipliers[i] = y;
    ytb += y * b[i];
  }
  if (ytb <= 0) throw MeasureError("internal: Farkas extraction failed");
  for (auto& y : fc.multipliers) y /= ytb;
  std::string why;
  if (!check_farkas(fc, inst, &why))
    throw MeasureError("internal: solver Farkas certificate fails verification: " + why);
  return fc;
}

bool check_measure(const MeasureTable& mt, const LPInstance& inst, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  size_t n = inst.atoms.size();
  if (mt.atom_values.size() != n) return fail("dimension mismatch");
  for (const auto& v : mt.atom_values)
    if (v < 0) return fail("negativity");
  for (size_t r = 0; r < inst.constraint_matrix.size(); ++r) {
    mpq_class lhs = 0;
    for (size_t c = 0; c < n; ++c) lhs += inst.constraint_matrix[r][c] * mt.atom_values[c];
    if (lhs != inst.rhs[r])
      return fail(r == 0 ? "normalization violated" : "invariance violated");
  }
  return true;
}

bool check_farkas(const FarkasCert& fc, const LPInstance& inst, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  size_t m = inst.constraint_matrix.size(), n = inst.atoms.size();
  if (fc.multipliers.size() != m) return fail("dimension mismatch");
  for (size_t c = 0; c < n; ++c) {
    mpq_class col = 0;
    for (size_t r = 0; r < m; ++r) col += fc.multipliers[r] * inst.constraint_matrix[r][c];
    if (col > 0) return fail("combined column positive; no contradiction");
  }
  mpq_class rhs = 0;
  for (size_t r = 0; r < m; ++r) rhs += fc.multipliers[r] * inst.rhs[r];
  if (rhs < 1) return fail("combined right-hand side below 1");
  return true;
}

std::optional<mpq_class> measure_of(const MeasureTable& mt, const LPInstance& inst,
                                    const ClopenSet& s) {
  mpq_class total = 0;
  ClopenSet covered = ClopenSet::empty(s.model());
  for (size_t i = 0; i < inst.atoms.size(); ++i) {
    if (inst.atoms[i].is_subset_of(s)) {
      total += mt.atom_values[i];
      covered = covered.set_union(inst.atoms[i]);
    } else if (!inst.atoms[i].is_disjoint_from(s)) {
      return std::nullopt;
    }
  }
  if (!(covered == s)) return std::nullopt;
  return total;
}

}  // namespace tarski
