#pragma once

// Finitely supported symbolic elements sum_t a_t u_t of the algebraic crossed
// product, with coefficients exact rational simple functions over clopen
// sets. Multiplication follows the covariance relation u_t a = (t.a) u_t;
// the adjoint is (a u_t)* = (t^-1.a) u_{t^-1} (real scalars). The conditional
// expectation reads off the coefficient at the identity.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tarski/measure.hpp"
#include "tarski/paradox.hpp"
#include "tarski/partition.hpp"

namespace tarski {

class SimpleFunction {
 public:
  SimpleFunction() = default;
  static SimpleFunction zero(ModelRef model);
  static SimpleFunction indicator(const ClopenSet& s, const mpq_class& value = 1);
  // regions may overlap-free or not; values on overlaps add
  static SimpleFunction from_pieces(ModelRef model,
                                    std::vector<std::pair<ClopenSet, mpq_class>> pieces);

  const ModelRef& model() const { return model_; }
  // canonical: pairwise disjoint nonempty regions, distinct nonzero values,
  // sorted; equal functions have equal representations
  const std::vector<std::pair<ClopenSet, mpq_class>>& pieces() const { return pieces_; }

  bool is_zero() const { return pieces_.empty(); }
  bool nonnegative() const;
  bool indicator_valued() const;  // all values are exactly 1
  ClopenSet support() const;

  SimpleFunction operator+(const SimpleFunction& o) const;
  SimpleFunction operator-(const SimpleFunction& o) const;
  SimpleFunction operator*(const SimpleFunction& o) const;  // pointwise
  SimpleFunction scaled(const mpq_class& c) const;
  SimpleFunction translated(const Word& g) const;  // g.f = f o g^-1

  friend bool operator==(const SimpleFunction& a, const SimpleFunction& b) {
    return a.pieces_ == b.pieces_;
  }

 private:
  ModelRef model_;
  std::vector<std::pair<ClopenSet, mpq_class>> pieces_;
};

class CPElement {
 public:
  CPElement() = default;
  explicit CPElement(ModelRef model)
      : model_(std::move(model)), terms_(WordLess{&model_->spec}) {}
  static CPElement term(const Word& t, const SimpleFunction& coef);
  static CPElement unit(const ClopenSet& on);  // 1_on u_e

  const ModelRef& model() const { return model_; }
  const std::map<Word, SimpleFunction, WordLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  SimpleFunction coefficient(const Word& t) const;

  friend bool operator==(const CPElement& a, const CPElement& b) {
    return a.terms_ == b.terms_;
  }

 private:
  friend CPElement cp_add(const CPElement&, const CPElement&);
  friend CPElement cp_sub(const CPElement&, const CPElement&);
  friend CPElement cp_mul(const CPElement&, const CPElement&);
  friend CPElement cp_adjoint(const CPElement&);
  void insert_term(const Word& t, const SimpleFunction& f);

  ModelRef model_;
  std::map<Word, SimpleFunction, WordLess> terms_{};
};

CPElement cp_add(const CPElement& a, const CPElement& b);
CPElement cp_sub(const CPElement& a, const CPElement& b);
CPElement cp_mul(const CPElement& a, const CPElement& b);
CPElement cp_adjoint(const CPElement& a);

SimpleFunction cond_expectation(const CPElement& a);

// E(x x*) = sum_t x_t x_t* and E(x* x) = sum_t t.(x_{t^-1}* x_{t^-1});
// an identity, so false means an implementation bug.
bool check_expectation_identities(const CPElement& x);

// Witnesses for proper infiniteness of 1_U from a paradoxicality certificate:
// x = sum u_{t_i} h_i with h_i the indicators of the refined first cover,
// y likewise from the second cover.
std::pair<CPElement, CPElement> build_witness(const ParadoxCert& cert);

struct WitnessReport {
  bool ok = false;
  std::string failed_clause;  // "x*x=1_U" | "y*y=1_U" | "y*x=0" | "xx*+yy*<=1_U"
};
WitnessReport verify_witness(const CPElement& x, const CPElement& y, const ClopenSet& U);

ParadoxCert extract_paradox(const CPElement& x, const CPElement& y, const ClopenSet& U);

// phi = integration against the measure table composed with E; checks the
// trace identity phi(x*x) = phi(xx*) per sample.
struct TraceCheck {
  long checked = 0;
  long window_too_small = 0;
  bool ok = true;  // all checked samples satisfied the identity
};
TraceCheck trace_check(const LPInstance& inst, const MeasureTable& mt,
                       const std::vector<CPElement>& samples);

// Freeness projections from a partition certificate: indicators of the color
// classes on the window, completed by color-uniform frontier cones. The
// residual is the unrepresented frontier; sum_j f_j + 1_residual = 1 and
// (t.f_j) f_j = 0 exactly.
struct FreenessProjections {
  std::vector<CPElement> projections;  // one per color
  ClopenSet residual;
  bool partition_ok = false;   // sum equals 1 minus residual
  bool orthogonal_ok = false;  // (t.f_j) f_j = 0 for every j
  bool exact = false;          // residual empty: identities hold on all of G
};
FreenessProjections freeness_projections(ModelRef self_action_model, const Partition3Cert& cert);

}  // namespace tarski
