#pragma once

// Words over free products of cyclic groups: reduced normal forms, the
// letter-level (geodesic) spelling used by the boundary/cone machinery,
// ball enumeration and element orders.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tarski {

struct GroupError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CyclicFactor {
  std::string name;
  long order = 0;  // 0 = infinite cyclic, otherwise >= 2

  friend bool operator==(const CyclicFactor&, const CyclicFactor&) = default;
};

class GroupSpec {
 public:
  GroupSpec() = default;
  explicit GroupSpec(std::vector<CyclicFactor> factors);

  int factor_count() const { return static_cast<int>(factors_.size()); }
  const CyclicFactor& factor(int i) const { return factors_.at(i); }
  long order_of(int i) const { return factors_.at(i).order; }

  // -1 when the name is not a declared generator
  int factor_index(std::string_view name) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  std::vector<CyclicFactor> factors_;
};

// One syllable of a reduced word. Exponents are normalized: a finite factor
// of order n carries exponents in {1,..,n-1}, an infinite factor any nonzero
// integer.
struct Syllable {
  int factor = 0;
  long exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Syllable> syl) : syl_(std::move(syl)) {}

  bool is_identity() const { return syl_.empty(); }
  const std::vector<Syllable>& syllables() const { return syl_; }
  size_t size() const { return syl_.size(); }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Syllable> syl_;
};

// --- group law -------------------------------------------------------------

Word word_from_syllables(const GroupSpec& spec, const std::vector<Syllable>& raw);
Word multiply(const GroupSpec& spec, const Word& u, const Word& v);
Word inverse(const GroupSpec& spec, const Word& u);
Word power(const GroupSpec& spec, const Word& u, long k);

// Parse "a b^-1 a^2", identity "e". Throws GroupError on unknown generators.
Word parse_word(const GroupSpec& spec, std::string_view text);
std::string word_to_string(const GroupSpec& spec, const Word& w);

// Word length: each syllable (f,k) costs |k| letters for an infinite factor
// and min(k, n-k) letters for a finite factor of order n.
long word_length(const GroupSpec& spec, const Word& w);

// Deterministic total order: by length, then lexicographically by syllable
// (factor index, syllable cost, positive-before-negative).
bool word_less(const GroupSpec& spec, const Word& a, const Word& b);

struct WordLess {
  const GroupSpec* spec;
  bool operator()(const Word& a, const Word& b) const { return word_less(*spec, a, b); }
};

// All reduced words of length <= r, sorted by word_less.
std::vector<Word> ball(const GroupSpec& spec, int r);
std::vector<Word> sphere(const GroupSpec& spec, int r);  // length == r

// Exact order; nullopt = infinite. Computed by cyclic reduction: torsion in a
// free product is conjugate into a finite factor.
std::optional<long> order(const GroupSpec& spec, const Word& w);

// w = c * core * c^-1 with core cyclically reduced.
struct CyclicDecomposition {
  Word conjugator;
  Word core;
};
CyclicDecomposition cyclic_decompose(const GroupSpec& spec, const Word& w);

// --- letters ---------------------------------------------------------------
//
// A letter is one generator step. The canonical (geodesic) spelling of an
// element uses, per syllable (f,k): k copies of f when the exponent is "short
// positively" (k <= n/2, ties positive), else n-k copies of f^-1; infinite
// factors spell sign-wise. Canonical letter words are exactly the vertices of
// a spanning tree of the Cayley graph, which is what the clopen algebra
// walks.

struct Letter {
  int factor = 0;
  int sign = 1;  // +1 or -1

  friend bool operator==(const Letter&, const Letter&) = default;
};

inline bool letter_less(const Letter& a, const Letter& b) {
  if (a.factor != b.factor) return a.factor < b.factor;
  return a.sign > b.sign;  // positive first
}

using LetterWord = std::vector<Letter>;

bool letterword_less(const LetterWord& a, const LetterWord& b);  // length, then lex

// Max canonical run length of this letter: floor(n/2) for f, floor((n-1)/2)
// for f^-1 on a finite factor of order n; unbounded (LONG_MAX) if infinite.
long run_cap(const GroupSpec& spec, Letter l);

// Letters that may extend a canonical word (same letter continues a run
// within its cap, inverse letters never follow, other factors always may).
std::vector<Letter> next_letters(const GroupSpec& spec, const LetterWord& w);
bool can_append(const GroupSpec& spec, const LetterWord& w, Letter l);

LetterWord spell(const GroupSpec& spec, const Word& w);
Word unspell(const GroupSpec& spec, const LetterWord& lw);

std::string letters_to_string(const GroupSpec& spec, const LetterWord& lw);

long trailing_run(const LetterWord& w);
long common_prefix(const LetterWord& a, const LetterWord& b);

// True when u and v admit exactly the same canonical continuations, spelled
// identically: same last letter, and equal trailing runs on finite factors.
bool letter_state_match(const GroupSpec& spec, const LetterWord& u, const LetterWord& v);

}  // namespace tarski
