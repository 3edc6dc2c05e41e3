#include "tarski/group.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace tarski {

GroupSpec::GroupSpec(std::vector<CyclicFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw GroupError("group spec needs at least one factor");
  std::set<std::string> names;
  for (const auto& f : factors_) {
    if (f.name.empty()) throw GroupError("generator name must be nonempty");
    if (f.order != 0 && f.order < 2) throw GroupError("finite cyclic order must be >= 2");
    if (!names.insert(f.name).second) throw GroupError("duplicate generator name: " + f.name);
  }
}

int GroupSpec::factor_index(std::string_view name) const {
  for (int i = 0; i < factor_count(); ++i)
    if (factors_[i].name == name) return i;
  return -1;
}

namespace {

long normalize_exp(const GroupSpec& spec, int factor, long e) {
  long n = spec.order_of(factor);
  if (n == 0) return e;
  e %= n;
  if (e < 0) e += n;
  return e;
}

// Append one syllable to a reduced syllable list, merging with the tail.
void push_syllable(const GroupSpec& spec, std::vector<Syllable>& out, Syllable s) {
  s.exp = normalize_exp(spec, s.factor, s.exp);
  if (s.exp == 0) return;
  if (!out.empty() && out.back().factor == s.factor) {
    long e = normalize_exp(spec, s.factor, out.back().exp + s.exp);
    out.pop_back();
    if (e != 0) out.push_back({s.factor, e});
    return;
  }
  out.push_back(s);
}

// Syllable cost and the (cost, sign) pair used by the deterministic order.
long syllable_cost(const GroupSpec& spec, const Syllable& s) {
  long n = spec.order_of(s.factor);
  if (n == 0) return s.exp < 0 ? -s.exp : s.exp;
  return std::min(s.exp, n - s.exp);
}

}  // namespace

Word word_from_syllables(const GroupSpec& spec, const std::vector<Syllable>& raw) {
  std::vector<Syllable> out;
  for (const auto& s : raw) {
    if (s.factor < 0 || s.factor >= spec.factor_count())
      throw GroupError("syllable refers to unknown factor");
    push_syllable(spec, out, s);
  }
  return Word(std::move(out));
}

Word multiply(const GroupSpec& spec, const Word& u, const Word& v) {
  std::vector<Syllable> out = u.syllables();
  for (const auto& s : v.syllables()) push_syllable(spec, out, s);
  return Word(std::move(out));
}

Word inverse(const GroupSpec& spec, const Word& u) {
  std::vector<Syllable> out;
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it)
    push_syllable(spec, out, {it->factor, -it->exp});
  return Word(std::move(out));
}

Word power(const GroupSpec& spec, const Word& u, long k) {
  Word base = k < 0 ? inverse(spec, u) : u;
  long m = k < 0 ? -k : k;
  Word acc;
  for (long i = 0; i < m; ++i) acc = multiply(spec, acc, base);
  return acc;
}

Word parse_word(const GroupSpec& spec, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Syllable> raw;
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    std::string name = tok;
    long exp = 1;
    if (auto pos = tok.find('^'); pos != std::string::npos) {
      name = tok.substr(0, pos);
      try {
        exp = std::stol(tok.substr(pos + 1));
      } catch (const std::exception&) {
        throw GroupError("bad exponent in token: " + tok);
      }
    }
    int f = spec.factor_index(name);
    if (f < 0) throw GroupError("unknown generator token: " + name);
    raw.push_back({f, exp});
  }
  return word_from_syllables(spec, raw);
}

std::string word_to_string(const GroupSpec& spec, const Word& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += spec.factor(s.factor).name;
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

long word_length(const GroupSpec& spec, const Word& w) {
  long len = 0;
  for (const auto& s : w.syllables()) len += syllable_cost(spec, s);
  return len;
}

bool word_less(const GroupSpec& spec, const Word& a, const Word& b) {
  // Length, then letter-lexicographic; agrees with letterword_less on
  // canonical spellings, so the syllable and letter layers order alike.
  return letterword_less(spell(spec, a), spell(spec, b));
}

long run_cap(const GroupSpec& spec, Letter l) {
  long n = spec.order_of(l.factor);
  if (n == 0) return LONG_MAX;
  return l.sign > 0 ? n / 2 : (n - 1) / 2;
}

bool can_append(const GroupSpec& spec, const LetterWord& w, Letter l) {
  if (run_cap(spec, l) < 1) return false;
  if (w.empty()) return true;
  const Letter& b = w.back();
  if (b.factor != l.factor) return true;
  if (b.sign != l.sign) return false;
  long run = 0;
  for (auto it = w.rbegin(); it != w.rend() && *it == b; ++it) ++run;
  return run + 1 <= run_cap(spec, l);
}

std::vector<Letter> next_letters(const GroupSpec& spec, const LetterWord& w) {
  std::vector<Letter> out;
  for (int f = 0; f < spec.factor_count(); ++f) {
    for (int sign : {+1, -1}) {
      Letter l{f, sign};
      if (can_append(spec, w, l)) out.push_back(l);
    }
  }
  return out;
}

LetterWord spell(const GroupSpec& spec, const Word& w) {
  LetterWord out;
  for (const auto& s : w.syllables()) {
    long n = spec.order_of(s.factor);
    long count;
    int sign;
    if (n == 0) {
      sign = s.exp > 0 ? +1 : -1;
      count = s.exp > 0 ? s.exp : -s.exp;
    } else if (2 * s.exp <= n) {
      sign = +1;
      count = s.exp;
    } else {
      sign = -1;
      count = n - s.exp;
    }
    for (long i = 0; i < count; ++i) out.push_back({s.factor, sign});
  }
  return out;
}

Word unspell(const GroupSpec& spec, const LetterWord& lw) {
  std::vector<Syllable> out;
  for (const Letter& l : lw) push_syllable(spec, out, {l.factor, l.sign > 0 ? 1L : -1L});
  return Word(std::move(out));
}

bool letterword_less(const LetterWord& a, const LetterWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] == b[i])) return letter_less(a[i], b[i]);
  }
  return false;
}

std::string letters_to_string(const GroupSpec& spec, const LetterWord& lw) {
  return word_to_string(spec, unspell(spec, lw));
}

long trailing_run(const LetterWord& w) {
  if (w.empty()) return 0;
  long run = 0;
  for (auto it = w.rbegin(); it != w.rend() && *it == w.back(); ++it) ++run;
  return run;
}

long common_prefix(const LetterWord& a, const LetterWord& b) {
  size_t n = std::min(a.size(), b.size());
  size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return static_cast<long>(i);
}

bool letter_state_match(const GroupSpec& spec, const LetterWord& u, const LetterWord& v) {
  if (u.empty() || v.empty()) return u.empty() == v.empty();
  if (!(u.back() == v.back())) return false;
  if (spec.order_of(u.back().factor) == 0) return true;
  return trailing_run(u) == trailing_run(v);
}

std::vector<Word> sphere(const GroupSpec& spec, int r) {
  if (r == 0) return {Word{}};
  // BFS over letter appends; canonical letter words biject with elements and
  // letter count equals word_length.
  std::vector<LetterWord> level{{}};
  for (int d = 1; d <= r; ++d) {
    std::vector<LetterWord> next;
    for (const auto& w : level) {
      for (const Letter& l : next_letters(spec, w)) {
        LetterWord e = w;
        e.push_back(l);
        next.push_back(std::move(e));
      }
    }
    level = std::move(next);
  }
  std::vector<Word> out;
  out.reserve(level.size());
  for (const auto& lw : level) out.push_back(unspell(spec, lw));
  std::sort(out.begin(), out.end(),
            [&](const Word& x, const Word& y) { return word_less(spec, x, y); });
  return out;
}

std::vector<Word> ball(const GroupSpec& spec, int r) {
  if (r < 0) throw GroupError("ball radius must be >= 0");
  std::vector<Word> out;
  for (int d = 0; d <= r; ++d) {
    auto s = sphere(spec, d);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

CyclicDecomposition cyclic_decompose(const GroupSpec& spec, const Word& w) {
  Word core = w;
  Word conj;  // w = conj * core * conj^-1
  while (core.size() >= 2 && core.syllables().front().factor == core.syllables().back().factor) {
    Word head(std::vector<Syllable>{core.syllables().front()});
    core = multiply(spec, multiply(spec, inverse(spec, head), core), head);
    conj = multiply(spec, conj, head);
  }
  return {conj, core};
}

std::optional<long> order(const GroupSpec& spec, const Word& w) {
  Word core = cyclic_decompose(spec, w).core;
  if (core.is_identity()) return 1;
  if (core.size() == 1) {
    const Syllable& s = core.syllables().front();
    long n = spec.order_of(s.factor);
    if (n == 0) return std::nullopt;
    return n / std::gcd(n, s.exp);
  }
  // Cyclically reduced with >= 2 syllables: powers concatenate without
  // cancellation, so the order is infinite.
  return std::nullopt;
}

}  // namespace tarski
