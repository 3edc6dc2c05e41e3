#pragma once

// Test-only oracles, independent of the solver paths they cross-check.

#include <gmpxx.h>

#include <vector>

namespace tarski::oracles {

// Fourier-Motzkin feasibility for {Ax = b, x >= 0}; exponential, test sizes
// only. Returns true iff a rational solution exists.
inline bool fourier_motzkin_feasible(std::vector<std::vector<mpq_class>> a,
                                     std::vector<mpq_class> b) {
  size_t n = a.empty() ? 0 : a[0].size();
  // inequalities as rows (c, d) meaning c.x <= d
  std::vector<std::pair<std::vector<mpq_class>, mpq_class>> ineq;
  for (size_t r = 0; r < a.size(); ++r) {
    ineq.push_back({a[r], b[r]});
    std::vector<mpq_class> neg(n);
    for (size_t c = 0; c < n; ++c) neg[c] = -a[r][c];
    ineq.push_back({neg, -b[r]});
  }
  for (size_t c = 0; c < n; ++c) {
    std::vector<mpq_class> row(n, 0);
    row[c] = -1;
    ineq.push_back({row, 0});
  }
  for (size_t v = 0; v < n; ++v) {
    std::vector<std::pair<std::vector<mpq_class>, mpq_class>> lower, upper, rest;
    for (auto& [c, d] : ineq) {
      if (c[v] > 0)
        upper.push_back({c, d});
      else if (c[v] < 0)
        lower.push_back({c, d});
      else
        rest.push_back({c, d});
    }
    for (auto& [cu, du] : upper) {
      for (auto& [cl, dl] : lower) {
        // cu.x <= du scaled by -cl[v], cl.x <= dl scaled by cu[v]
        std::vector<mpq_class> row(n, 0);
        mpq_class su = -cl[v], sl = cu[v];
        for (size_t c = 0; c < n; ++c) row[c] = su * cu[c] + sl * cl[c];
        rest.push_back({row, su * du + sl * dl});
      }
    }
    ineq = std::move(rest);
  }
  for (auto& [c, d] : ineq) {
    if (d < 0) return false;  // 0 <= negative
  }
  return true;
}

}  // namespace tarski::oracles
