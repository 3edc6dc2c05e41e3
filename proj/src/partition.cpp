#include "tarski/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tarski {

OrbitPosition orbit_position(const GroupSpec& spec, const Word& t, const Word& g) {
  auto n = order(spec, t);
  long lo, hi;
  if (n.has_value()) {
    lo = 0;
    hi = *n - 1;
  } else {
    // Beyond this range len(t^j g) >= |j| - 2 len(t) - len(g) > len(g), so the
    // length-lex minimum of the coset is attained inside it.
    long bound = 2 * (word_length(spec, g) + word_length(spec, t)) + 4;
    lo = -bound;
    hi = bound;
  }
  long best_j = 0;
  Word best = g;
  Word tj = power(spec, t, lo);
  for (long j = lo; j <= hi; ++j) {
    Word cand = multiply(spec, tj, g);
    if (j == lo || word_less(spec, cand, best)) {
      best = cand;
      best_j = j;
    }
    tj = multiply(spec, t, tj);
  }
  long pos = -best_j;
  if (n.has_value()) pos = ((pos % *n) + *n) % *n;
  return {pos, best};
}

int position_color(long position, std::optional<long> order_of_t) {
  if (!order_of_t.has_value() || *order_of_t % 2 == 0) {
    return static_cast<int>(((position % 2) + 2) % 2) + 1;
  }
  long n = *order_of_t;
  long pos = ((position % n) + n) % n;
  if (pos < n - 1) return static_cast<int>(pos % 3) + 1;
  // Wrap position: pick the least color distinct from its two cyclic
  // neighbours (position n-2 and position 0).
  int prev = static_cast<int>((n - 2) % 3);
  for (int c = 0; c < 3; ++c)
    if (c != prev && c != 0) return c + 1;
  return 3;  // unreachable
}

int rule_color(const GroupSpec& spec, const Word& t, const Word& g) {
  return position_color(orbit_position(spec, t, g).position, order(spec, t));
}

namespace {

Partition3Cert make_partition(const GroupSpec& spec, const Word& t, int radius,
                              int num_colors, bool two_sided) {
  Partition3Cert cert;
  cert.t = t;
  cert.radius = radius;
  cert.num_colors = num_colors;
  cert.rule = kLexminTransversalRule;
  cert.two_sided = two_sided;
  auto n = order(spec, t);
  for (const Word& w : ball(spec, radius)) {
    cert.classes.emplace_back(w, position_color(orbit_position(spec, t, w).position, n));
  }
  return cert;
}

}  // namespace

Partition3Cert three_partition(const GroupSpec& spec, const Word& t, int radius) {
  if (t.is_identity()) throw GroupError("three_partition: t must not be the identity");
  auto n = order(spec, t);
  bool odd = n.has_value() && *n % 2 == 1;
  return make_partition(spec, t, radius, odd ? 3 : 2, false);
}

Partition3Cert two_partition(const GroupSpec& spec, const Word& t, int radius) {
  if (t.is_identity()) throw GroupError("two_partition: t must not be the identity");
  auto n = order(spec, t);
  if (n.has_value() && *n % 2 == 1 && *n > 1)
    throw GroupError("two_partition: odd order");
  return make_partition(spec, t, radius, 2, true);
}

bool verify_partition(const GroupSpec& spec, const Partition3Cert& cert, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (cert.t.is_identity()) return fail("t is the identity");
  if (cert.rule != kLexminTransversalRule) return fail("unknown transversal rule");

  std::map<Word, int, WordLess> colors{WordLess{&spec}};
  for (const auto& [w, c] : cert.classes) {
    if (c < 1 || c > cert.num_colors) return fail("color out of range");
    if (!colors.emplace(w, c).second) return fail("duplicate window element");
  }
  for (const Word& w : ball(spec, cert.radius)) {
    if (!colors.count(w)) return fail("window element missing a color");
  }
  if (colors.size() != ball(spec, cert.radius).size()) return fail("extra elements in classes");

  // disjointness on the window: t.G_j meets no G_j
  for (const auto& [w, c] : cert.classes) {
    Word tw = multiply(spec, cert.t, w);
    auto it = colors.find(tw);
    if (it != colors.end() && it->second == c) return fail("t.G_j intersects G_j on the window");
  }

  if (cert.two_sided) {
    auto n = order(spec, cert.t);
    if (n.has_value() && *n % 2 == 1 && *n > 1) return fail("two-sided partition with odd order");
    if (cert.num_colors != 2) return fail("two-sided partition must use two colors");
    // Window identity G_2 = t.G_1: membership of t^-1 w is recomputed by the
    // transversal rule, since t^-1 w may leave the window.
    Word tinv = inverse(spec, cert.t);
    for (const auto& [w, c] : cert.classes) {
      int pre = rule_color(spec, cert.t, multiply(spec, tinv, w));
      if ((c == 2) != (pre == 1)) return fail("G_2 != t.G_1 on the window");
    }
  }
  return true;
}

bool cycle_two_colorable(int n) {
  if (n <= 0) return true;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      int j = (i + 1) % n;
      if (((mask >> i) & 1u) == ((mask >> j) & 1u)) ok = false;
    }
    if (ok) return true;
  }
  return false;
}

std::optional<int> cone_color(const GroupSpec& spec, const Word& t, const LetterWord& u) {
  if (u.empty()) return std::nullopt;
  auto n = order(spec, t);
  Word gu = unspell(spec, u);
  long lu = static_cast<long>(u.size());
  long lt = word_length(spec, t);

  long lo, hi;
  if (n.has_value()) {
    lo = 0;
    hi = *n - 1;
  } else {
    long bound = 2 * lu + 2 * lt + 4;
    lo = -bound;
    hi = bound;
    // If u heads down the axis of t, deep elements of the cone keep
    // cancelling against higher powers and the color is not constant.
    long probe = lu + 2 * lt + 4;
    if (common_prefix(spell(spec, power(spec, t, probe)), u) >= lu) return std::nullopt;
    if (common_prefix(spell(spec, power(spec, t, -probe)), u) >= lu) return std::nullopt;
  }

  // Every relevant translate must keep the tail state of u intact; then the
  // coset minimum is independent of the continuation.
  long best_j = lo;
  LetterWord best;
  bool first = true;
  Word tj = power(spec, t, lo);
  for (long j = lo; j <= hi; ++j) {
    Word cand = multiply(spec, tj, gu);
    LetterWord sc = spell(spec, cand);
    if (!letter_state_match(spec, sc, u)) return std::nullopt;
    if (first || letterword_less(sc, best)) {
      best = sc;
      best_j = j;
      first = false;
    }
    tj = multiply(spec, t, tj);
  }
  long pos = -best_j;
  if (n.has_value()) pos = ((pos % *n) + *n) % *n;
  return position_color(pos, n);
}

}  // namespace tarski
