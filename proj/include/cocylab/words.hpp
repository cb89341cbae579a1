#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cocylab/arith.hpp"
#include "cocylab/error.hpp"
#include "cocylab/group.hpp"

namespace cocylab {

/// gen^exp with gen a 1-based generator index and exp nonzero.
struct Syllable {
  int gen = 1;
  std::int64_t exp = 1;

  bool operator==(const Syllable&) const = default;
};

/// Reduced word in the free group F_rank, stored run-length encoded.
class FreeWord {
 public:
  FreeWord() = default;
  explicit FreeWord(int rank) : rank_(rank) {
    if (rank < 1) throw Error(ErrorKind::InvalidArgument, "free group rank must be positive");
  }

  /// Free reduction of an arbitrary syllable list (zero exponents allowed).
  static FreeWord reduce(std::span<const Syllable> raw, int rank) {
    FreeWord w(rank);
    for (const auto& s : raw) w.push_back(s);
    return w;
  }

  static FreeWord generator(int rank, int gen, std::int64_t exp = 1) {
    Syllable s{gen, exp};
    return reduce(std::span<const Syllable>(&s, 1), rank);
  }

  int rank() const { return rank_; }
  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_identity() const { return syllables_.empty(); }

  /// Number of letters a_i^{+-1} in the reduced word.
  std::int64_t length() const {
    std::int64_t n = 0;
    for (const auto& s : syllables_) n += s.exp < 0 ? -s.exp : s.exp;
    return n;
  }

  bool operator==(const FreeWord&) const = default;

  /// Appends one syllable, cancelling against the tail.
  void push_back(Syllable s) {
    if (s.gen < 1 || s.gen > rank_)
      throw Error(ErrorKind::IndexOutOfRange,
                  "generator a" + std::to_string(s.gen) + " outside F_" + std::to_string(rank_));
    if (s.exp == 0) return;
    if (!syllables_.empty() && syllables_.back().gen == s.gen) {
      syllables_.back().exp += s.exp;
      if (syllables_.back().exp == 0) syllables_.pop_back();
      return;
    }
    syllables_.push_back(s);
  }

 private:
  int rank_ = 1;
  std::vector<Syllable> syllables_;
};

inline FreeWord reduce(std::span<const Syllable> raw, int rank) { return FreeWord::reduce(raw, rank); }
inline FreeWord reduce(const std::vector<Syllable>& raw, int rank) {
  return FreeWord::reduce(std::span<const Syllable>(raw), rank);
}

enum class Factor { A, B };

/// One normal-form symbol of Z_m * Z_n: a_i = a^i or b_j = b^j.
struct FPLetter {
  Factor factor = Factor::A;
  std::int64_t index = 1;

  bool operator==(const FPLetter&) const = default;
};

/// Normal form in Z_m * Z_n: letters alternate between the two factors and
/// every index lies in [1, modulus).
class FPWord {
 public:
  FPWord() = default;
  FPWord(std::int64_t m, std::int64_t n) : m_(m), n_(n) {
    if (m < 2 || n < 2)
      throw Error(ErrorKind::BadModuli, "free product moduli must be >= 2, got (" + std::to_string(m) + ", " +
                                            std::to_string(n) + ")");
  }

  std::int64_t m() const { return m_; }
  std::int64_t n() const { return n_; }
  std::int64_t modulus(Factor f) const { return f == Factor::A ? m_ : n_; }
  const std::vector<FPLetter>& letters() const { return letters_; }
  bool is_identity() const { return letters_.empty(); }
  std::int64_t length() const { return static_cast<std::int64_t>(letters_.size()); }

  bool operator==(const FPWord&) const = default;

  /// Appends a letter with arbitrary integer index, merging with the tail
  /// and cascading deletions of trivial letters.
  void push_back(FPLetter letter) {
    std::int64_t mod = modulus(letter.factor);
    letter.index = ((letter.index % mod) + mod) % mod;
    if (letter.index == 0) return;
    if (!letters_.empty() && letters_.back().factor == letter.factor) {
      std::int64_t merged = (letters_.back().index + letter.index) % mod;
      if (merged == 0)
        letters_.pop_back();
      else
        letters_.back().index = merged;
      return;
    }
    letters_.push_back(letter);
  }

 private:
  std::int64_t m_ = 2;
  std::int64_t n_ = 2;
  std::vector<FPLetter> letters_;
};

inline FPWord fp_normalize(std::span<const FPLetter> raw, std::int64_t m, std::int64_t n) {
  FPWord w(m, n);
  for (const auto& l : raw) w.push_back(l);
  return w;
}
inline FPWord fp_normalize(const std::vector<FPLetter>& raw, std::int64_t m, std::int64_t n) {
  return fp_normalize(std::span<const FPLetter>(raw), m, n);
}

using Word = std::variant<FreeWord, FPWord>;

// ---------------------------------------------------------------------------
// Group operations

inline FreeWord multiply(const FreeWord& u, const FreeWord& v) {
  if (u.rank() != v.rank())
    throw Error(ErrorKind::KindMismatch,
                "F_" + std::to_string(u.rank()) + " word times F_" + std::to_string(v.rank()) + " word");
  FreeWord out = u;
  for (const auto& s : v.syllables()) out.push_back(s);
  return out;
}

inline FPWord multiply(const FPWord& u, const FPWord& v) {
  if (u.m() != v.m() || u.n() != v.n()) throw Error(ErrorKind::KindMismatch, "free product moduli differ");
  FPWord out = u;
  for (const auto& l : v.letters()) out.push_back(l);
  return out;
}

inline FreeWord invert(const FreeWord& w) {
  FreeWord out(w.rank());
  const auto& s = w.syllables();
  for (auto it = s.rbegin(); it != s.rend(); ++it) out.push_back({it->gen, -it->exp});
  return out;
}

/// (a_{i1} b_{j1} ... )^- = ... b_{n-j1} a_{m-i1}.
inline FPWord invert(const FPWord& w) {
  FPWord out(w.m(), w.n());
  const auto& l = w.letters();
  for (auto it = l.rbegin(); it != l.rend(); ++it) out.push_back({it->factor, w.modulus(it->factor) - it->index});
  return out;
}

inline Word multiply(const Word& u, const Word& v) {
  if (u.index() != v.index()) throw Error(ErrorKind::KindMismatch, "free-group word times free-product word");
  if (const auto* fu = std::get_if<FreeWord>(&u)) return multiply(*fu, std::get<FreeWord>(v));
  return multiply(std::get<FPWord>(u), std::get<FPWord>(v));
}

inline Word invert(const Word& w) {
  return std::visit([](const auto& x) -> Word { return invert(x); }, w);
}

template <class W>
W word_power(const W& w, std::int64_t n) {
  W base = n < 0 ? invert(w) : w;
  W acc = base;
  if (n == 0) {
    if constexpr (std::is_same_v<W, FreeWord>)
      return FreeWord(w.rank());
    else
      return FPWord(w.m(), w.n());
  }
  std::int64_t k = n < 0 ? -n : n;
  for (std::int64_t i = 1; i < k; ++i) acc = multiply(acc, base);
  return acc;
}

inline Word word_power(const Word& w, std::int64_t n) {
  return std::visit([n](const auto& x) -> Word { return word_power(x, n); }, w);
}

inline bool is_identity(const Word& w) {
  return std::visit([](const auto& x) { return x.is_identity(); }, w);
}

// ---------------------------------------------------------------------------
// Cyclic words

/// Canonical cyclic word: cyclically reduced, rotated to the least rotation
/// under (generator, exponent) resp. (factor, index) ordering.
class CyclicWord {
 public:
  explicit CyclicWord(const FreeWord& w) : base_(canonical(w)) {}
  explicit CyclicWord(const FPWord& w) : base_(canonical(w)) {}
  explicit CyclicWord(const Word& w)
      : base_(std::visit([](const auto& x) -> Word { return canonical(x); }, w)) {}

  const Word& word() const { return base_; }
  bool operator==(const CyclicWord&) const = default;

 private:
  template <class T, class Less>
  static std::vector<T> least_rotation(const std::vector<T>& v, Less less) {
    std::vector<T> best = v;
    for (std::size_t r = 1; r < v.size(); ++r) {
      std::vector<T> cand(v.begin() + static_cast<std::ptrdiff_t>(r), v.end());
      cand.insert(cand.end(), v.begin(), v.begin() + static_cast<std::ptrdiff_t>(r));
      if (std::lexicographical_compare(cand.begin(), cand.end(), best.begin(), best.end(), less)) best = cand;
    }
    return best;
  }

  static FreeWord canonical(const FreeWord& w) {
    std::deque<Syllable> d(w.syllables().begin(), w.syllables().end());
    while (d.size() >= 2 && d.front().gen == d.back().gen) {
      std::int64_t e = d.front().exp + d.back().exp;
      d.pop_back();
      if (e == 0)
        d.pop_front();
      else
        d.front().exp = e;
    }
    std::vector<Syllable> v(d.begin(), d.end());
    v = least_rotation(v, [](const Syllable& a, const Syllable& b) {
      return a.gen != b.gen ? a.gen < b.gen : a.exp < b.exp;
    });
    return FreeWord::reduce(v, w.rank());
  }

  static FPWord canonical(const FPWord& w) {
    std::deque<FPLetter> d(w.letters().begin(), w.letters().end());
    while (d.size() >= 2 && d.front().factor == d.back().factor) {
      std::int64_t mod = w.modulus(d.front().factor);
      std::int64_t e = (d.front().index + d.back().index) % mod;
      d.pop_back();
      if (e == 0)
        d.pop_front();
      else
        d.front().index = e;
    }
    std::vector<FPLetter> v(d.begin(), d.end());
    v = least_rotation(v, [](const FPLetter& a, const FPLetter& b) {
      return a.factor != b.factor ? a.factor < b.factor : a.index < b.index;
    });
    // A cyclically reduced list is already alternating; rebuilding keeps the invariant checked.
    return fp_normalize(v, w.m(), w.n());
  }

  Word base_;
};

// ---------------------------------------------------------------------------
// Occurrence counting

namespace detail {

/// Uniform view: a list of runs gen^exp where consecutive runs differ in gen.
/// Free-product letters become runs of length one with a distinct code per
/// symbol, so the same matcher serves both kinds.
inline std::vector<Syllable> runs_of(const FreeWord& w) { return w.syllables(); }

inline std::vector<Syllable> runs_of(const FPWord& w) {
  std::vector<Syllable> out;
  out.reserve(w.letters().size());
  for (const auto& l : w.letters()) {
    int code = l.factor == Factor::A ? static_cast<int>(l.index) : static_cast<int>(w.m() + l.index);
    out.push_back({code, 1});
  }
  return out;
}

inline std::int64_t magnitude(std::int64_t e) { return e < 0 ? -e : e; }
inline bool same_direction(const Syllable& a, const Syllable& b) {
  return a.gen == b.gen && ((a.exp > 0) == (b.exp > 0));
}

/// Overlapping occurrences of `pattern` in the letter expansion of `text`,
/// computed on runs without expanding them. In cyclic mode the text is read
/// periodically and each start position in one period is counted once;
/// `text` must then be cyclically reduced.
inline std::int64_t count_runs(const std::vector<Syllable>& text, const std::vector<Syllable>& pattern,
                               bool cyclic) {
  const std::size_t n = text.size();
  const std::size_t k = pattern.size();
  if (n == 0 || k == 0) return 0;

  if (k == 1) {
    const auto& p = pattern.front();
    std::int64_t len = magnitude(p.exp);
    if (cyclic && n == 1) return same_direction(text.front(), p) ? magnitude(text.front().exp) : 0;
    std::int64_t total = 0;
    for (const auto& s : text)
      if (same_direction(s, p) && magnitude(s.exp) >= len) total += magnitude(s.exp) - len + 1;
    return total;
  }

  // k >= 2: an occurrence is a suffix of one run, k-2 whole runs, and a
  // prefix of another run, so each starting run admits at most one start.
  if (cyclic && n == 1) return 0;
  std::size_t starts = cyclic ? n : (n >= k ? n - k + 1 : 0);
  std::int64_t total = 0;
  for (std::size_t t = 0; t < starts; ++t) {
    auto at = [&](std::size_t r) -> const Syllable& { return text[(t + r) % n]; };
    const auto& first = at(0);
    if (!same_direction(first, pattern.front()) || magnitude(first.exp) < magnitude(pattern.front().exp)) continue;
    bool ok = true;
    for (std::size_t r = 1; r + 1 < k && ok; ++r) ok = at(r) == pattern[r];
    if (!ok) continue;
    const auto& last = at(k - 1);
    if (!same_direction(last, pattern.back()) || magnitude(last.exp) < magnitude(pattern.back().exp)) continue;
    ++total;
  }
  return total;
}

}  // namespace detail

inline std::int64_t count_occurrences(const FreeWord& g, const FreeWord& pattern, bool cyclic) {
  if (pattern.is_identity()) throw Error(ErrorKind::EmptyPattern, "pattern must be nonempty");
  if (g.rank() != pattern.rank()) throw Error(ErrorKind::KindMismatch, "pattern and word ranks differ");
  if (cyclic) {
    CyclicWord cw(g);
    const auto& c = std::get<FreeWord>(cw.word());
    return detail::count_runs(detail::runs_of(c), detail::runs_of(pattern), true);
  }
  return detail::count_runs(detail::runs_of(g), detail::runs_of(pattern), false);
}

inline std::int64_t count_occurrences(const FPWord& g, const FPWord& pattern, bool cyclic) {
  if (pattern.is_identity()) throw Error(ErrorKind::EmptyPattern, "pattern must be nonempty");
  if (g.m() != pattern.m() || g.n() != pattern.n())
    throw Error(ErrorKind::KindMismatch, "pattern and word moduli differ");
  if (cyclic) {
    CyclicWord cw(g);
    const auto& c = std::get<FPWord>(cw.word());
    return detail::count_runs(detail::runs_of(c), detail::runs_of(pattern), true);
  }
  return detail::count_runs(detail::runs_of(g), detail::runs_of(pattern), false);
}

inline std::int64_t count_occurrences(const Word& g, const Word& pattern, bool cyclic) {
  if (g.index() != pattern.index()) throw Error(ErrorKind::KindMismatch, "pattern and word kinds differ");
  if (const auto* fg = std::get_if<FreeWord>(&g)) return count_occurrences(*fg, std::get<FreeWord>(pattern), cyclic);
  return count_occurrences(std::get<FPWord>(g), std::get<FPWord>(pattern), cyclic);
}

/// Single-letter expansion: free letters as (gen, +-1), free-product symbols
/// as their run codes.
inline std::vector<Syllable> letters_of(const Word& w) {
  std::vector<Syllable> out;
  for (const auto& s : std::visit([](const auto& x) { return detail::runs_of(x); }, w)) {
    std::int64_t step = s.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < detail::magnitude(s.exp); ++i) out.push_back({s.gen, step});
  }
  return out;
}

/// B(W) meets E(W): some proper prefix of W equals the suffix of the same length.
inline bool self_overlaps(const Word& pattern) {
  auto l = letters_of(pattern);
  for (std::size_t len = 1; len < l.size(); ++len)
    if (std::equal(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(len),
                   l.end() - static_cast<std::ptrdiff_t>(len)))
      return true;
  return false;
}

// ---------------------------------------------------------------------------
// Text encoding
//
// Free words:         a1^2 a2^-1 a1      (whitespace optional between letters;
//                                         "e" or "1" or "" is the identity)
// Free-product words: A1 B2 A3           (A<i> / B<j>, optional ^k merges as a^{ik})

inline std::string to_string(const FreeWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += "a" + std::to_string(s.gen);
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

inline std::string to_string(const FPWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += (l.factor == Factor::A ? "A" : "B") + std::to_string(l.index);
  }
  return out;
}

inline std::string to_string(const Word& w) {
  return std::visit([](const auto& x) { return to_string(x); }, w);
}

namespace detail {

struct Token {
  char letter;
  std::int64_t index;
  std::int64_t exp;
};

inline std::int64_t read_int(std::string_view text, std::size_t& i, bool allow_sign) {
  std::size_t start = i;
  if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  std::size_t digits = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == digits) throw ParseError(i, "expected integer");
  std::string s(text.substr(start, i - start));
  if (i - digits > 15) throw ParseError(start, "integer too large");
  return std::stoll(s);
}

inline std::vector<Token> tokenize(std::string_view text, std::string_view letters) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && (text.substr(i) == "e" || text.substr(i) == "1")) return out;
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char ch = text[i];
    if (letters.find(ch) == std::string_view::npos)
      throw ParseError(i, std::string("unexpected character '") + ch + "'");
    ++i;
    std::int64_t index = read_int(text, i, false);
    std::int64_t exp = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      exp = read_int(text, i, true);
    }
    out.push_back({ch, index, exp});
  }
  return out;
}

}  // namespace detail

inline FreeWord parse_free_word(std::string_view text, int rank) {
  std::vector<Syllable> raw;
  for (const auto& t : detail::tokenize(text, "a")) {
    if (t.index < 1 || t.index > rank)
      throw Error(ErrorKind::IndexOutOfRange,
                  "generator a" + std::to_string(t.index) + " outside F_" + std::to_string(rank));
    raw.push_back({static_cast<int>(t.index), t.exp});
  }
  return reduce(raw, rank);
}

inline FPWord parse_fp_word(std::string_view text, std::int64_t m, std::int64_t n) {
  std::vector<FPLetter> raw;
  for (const auto& t : detail::tokenize(text, "AB")) {
    Factor f = t.letter == 'A' ? Factor::A : Factor::B;
    std::int64_t mod = f == Factor::A ? m : n;
    if (t.index < 1 || t.index >= mod)
      throw Error(ErrorKind::IndexOutOfRange, std::string(1, t.letter) + std::to_string(t.index) +
                                                  " outside 1.." + std::to_string(mod - 1));
    raw.push_back({f, t.index * t.exp});
  }
  return fp_normalize(raw, m, n);
}

// ---------------------------------------------------------------------------
// Group models

/// F_rank with generators a_1..a_rank. Random elements: geometric number of
/// syllables (mean 4, cap 24), each with geometric magnitude (mean 2, cap 6).
struct FreeGroup {
  using Element = FreeWord;

  int rank = 2;

  Element identity() const { return FreeWord(rank); }
  Element multiply(const Element& x, const Element& y) const { return cocylab::multiply(x, y); }
  Element inverse(const Element& x) const { return invert(x); }
  bool contains(const Element& x) const { return x.rank() == rank; }
  std::string key(const Element& x) const { return to_string(x); }
  std::string encode(const Element& x) const { return to_string(x); }
  Element random_element(Rng& rng) const {
    FreeWord w(rank);
    int syllables = rng.geometric(4, 5, 24);
    int prev = 0;
    for (int i = 0; i < syllables; ++i) {
      int gen;
      do {
        gen = static_cast<int>(rng.uniform(1, rank));
      } while (gen == prev && rank > 1);
      if (gen == prev) break;
      std::int64_t mag = 1 + rng.geometric(1, 2, 5);
      w.push_back({gen, rng.coin() ? mag : -mag});
      prev = gen;
    }
    return w;
  }
  std::vector<Element> generators() const {
    std::vector<Element> out;
    for (int i = 1; i <= rank; ++i) out.push_back(FreeWord::generator(rank, i));
    return out;
  }
};

/// Z_m * Z_n with generators a = A1 and b = B1. Random elements: geometric
/// normal-form length (mean 5, cap 30) with uniform letter indices.
struct FreeProductGroup {
  using Element = FPWord;

  std::int64_t m = 4;
  std::int64_t n = 4;

  Element identity() const { return FPWord(m, n); }
  Element multiply(const Element& x, const Element& y) const { return cocylab::multiply(x, y); }
  Element inverse(const Element& x) const { return invert(x); }
  bool contains(const Element& x) const { return x.m() == m && x.n() == n; }
  std::string key(const Element& x) const { return to_string(x); }
  std::string encode(const Element& x) const { return to_string(x); }
  Element random_element(Rng& rng) const {
    FPWord w(m, n);
    int len = rng.geometric(5, 6, 30);
    Factor f = rng.coin() ? Factor::A : Factor::B;
    for (int i = 0; i < len; ++i) {
      std::int64_t mod = f == Factor::A ? m : n;
      w.push_back({f, rng.uniform(1, mod - 1)});
      f = f == Factor::A ? Factor::B : Factor::A;
    }
    return w;
  }
  std::vector<Element> generators() const {
    FPWord a(m, n), b(m, n);
    a.push_back({Factor::A, 1});
    b.push_back({Factor::B, 1});
    return {a, b};
  }
};

}  // namespace cocylab
