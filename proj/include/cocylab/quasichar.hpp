#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "cocylab/error.hpp"
#include "cocylab/group.hpp"
#include "cocylab/words.hpp"

namespace cocylab {

enum class QuasiKind { FWFree, EWFree, FWFp, EWFp };

inline std::string to_string(QuasiKind k) {
  switch (k) {
    case QuasiKind::FWFree: return "fW-free";
    case QuasiKind::EWFree: return "eW-free";
    case QuasiKind::FWFp: return "fW-fp";
    case QuasiKind::EWFp: return "eW-fp";
  }
  return "?";
}

/// f_W(g) = #W in g - #W^-1 in g; e_W counts on the cyclic word instead.
/// The free-product kinds use the normal-form inverse W^- in place of W^-1.
class QuasiChar {
 public:
  QuasiChar(QuasiKind kind, Word pattern) : kind_(kind), pattern_(std::move(pattern)) {
    bool free = std::holds_alternative<FreeWord>(pattern_);
    bool wants_free = kind_ == QuasiKind::FWFree || kind_ == QuasiKind::EWFree;
    if (free != wants_free) throw Error(ErrorKind::KindMismatch, to_string(kind_) + " with wrong pattern kind");
    if (is_identity(pattern_)) throw Error(ErrorKind::EmptyPattern, "pattern must be nonempty");
    inverse_pattern_ = invert(pattern_);
  }

  static QuasiChar f(const FreeWord& w) { return {QuasiKind::FWFree, w}; }
  static QuasiChar e(const FreeWord& w) { return {QuasiKind::EWFree, w}; }
  static QuasiChar f(const FPWord& w) { return {QuasiKind::FWFp, w}; }
  static QuasiChar e(const FPWord& w) { return {QuasiKind::EWFp, w}; }

  QuasiKind kind() const { return kind_; }
  const Word& pattern() const { return pattern_; }
  bool cyclic() const { return kind_ == QuasiKind::EWFree || kind_ == QuasiKind::EWFp; }
  bool free() const { return kind_ == QuasiKind::FWFree || kind_ == QuasiKind::EWFree; }

  std::int64_t pattern_length() const { return static_cast<std::int64_t>(letters_of(pattern_).size()); }

  std::int64_t operator()(const Word& g) const {
    if (!compatible(g)) throw Error(ErrorKind::KindMismatch, "element outside the quasi-character's group");
    return count_occurrences(g, pattern_, cyclic()) - count_occurrences(g, inverse_pattern_, cyclic());
  }

  bool compatible(const Word& g) const {
    if (g.index() != pattern_.index()) return false;
    if (const auto* fw = std::get_if<FreeWord>(&g)) return fw->rank() == std::get<FreeWord>(pattern_).rank();
    const auto& p = std::get<FPWord>(pattern_);
    const auto& w = std::get<FPWord>(g);
    return w.m() == p.m() && w.n() == p.n();
  }

  std::string describe() const { return (cyclic() ? "e_{" : "f_{") + to_string(pattern_) + "}"; }

 private:
  QuasiKind kind_;
  Word pattern_;
  Word inverse_pattern_;
};

inline std::int64_t evaluate(const QuasiChar& q, const Word& g) { return q(g); }
inline std::int64_t evaluate(const QuasiChar& q, const FreeWord& g) { return q(Word(g)); }
inline std::int64_t evaluate(const QuasiChar& q, const FPWord& g) { return q(Word(g)); }

/// Group model matching the quasi-character's context, with Word elements.
struct WordGroup {
  using Element = Word;

  Word prototype;

  Element identity() const {
    if (const auto* fw = std::get_if<FreeWord>(&prototype)) return FreeWord(fw->rank());
    const auto& p = std::get<FPWord>(prototype);
    return FPWord(p.m(), p.n());
  }
  Element multiply(const Element& x, const Element& y) const { return cocylab::multiply(x, y); }
  Element inverse(const Element& x) const { return invert(x); }
  bool contains(const Element& x) const {
    if (x.index() != prototype.index()) return false;
    if (const auto* fw = std::get_if<FreeWord>(&x)) return fw->rank() == std::get<FreeWord>(prototype).rank();
    const auto& p = std::get<FPWord>(prototype);
    const auto& w = std::get<FPWord>(x);
    return w.m() == p.m() && w.n() == p.n();
  }
  std::string key(const Element& x) const { return to_string(x); }
  std::string encode(const Element& x) const { return to_string(x); }
  Element random_element(Rng& rng) const {
    if (const auto* fw = std::get_if<FreeWord>(&prototype)) return FreeGroup{fw->rank()}.random_element(rng);
    const auto& p = std::get<FPWord>(prototype);
    return FreeProductGroup{p.m(), p.n()}.random_element(rng);
  }
  std::vector<Element> generators() const {
    std::vector<Element> out;
    if (const auto* fw = std::get_if<FreeWord>(&prototype)) {
      for (auto& g : FreeGroup{fw->rank()}.generators()) out.emplace_back(std::move(g));
    } else {
      const auto& p = std::get<FPWord>(prototype);
      for (auto& g : FreeProductGroup{p.m(), p.n()}.generators()) out.emplace_back(std::move(g));
    }
    return out;
  }
};

inline WordGroup group_of(const QuasiChar& q) { return WordGroup{q.pattern()}; }

struct ImageReport {
  std::set<std::int64_t> values;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// max |f(x)+f(y)-f(xy)| over the sample.
  std::int64_t observed_bound = 0;
  /// 3 |W|, the conservative defect bound checked against.
  std::int64_t declared_bound = 0;
};

inline nlohmann::json to_json(const ImageReport& r) {
  return {{"values", r.values},
          {"samples", r.samples},
          {"seed", r.seed},
          {"observed_bound", r.observed_bound},
          {"declared_bound", r.declared_bound}};
}

inline std::int64_t defect(const QuasiChar& q, const Word& x, const Word& y) {
  return q(x) + q(y) - q(multiply(x, y));
}

inline ImageReport coboundary_image(const QuasiChar& q, std::size_t sample_count, std::uint64_t seed) {
  if (sample_count < 1) throw Error(ErrorKind::InvalidArgument, "sample_count must be >= 1");
  ImageReport r;
  r.samples = sample_count;
  r.seed = seed;
  r.declared_bound = 3 * q.pattern_length();
  for (const auto& [x, y] : sample_pairs(group_of(q), sample_count, seed)) {
    std::int64_t v = defect(q, x, y);
    r.values.insert(v);
    r.observed_bound = std::max(r.observed_bound, v < 0 ? -v : v);
  }
  return r;
}

/// e_W(g^n) = n e_W(g) for |n| <= max_n. Requires an e-kind whose pattern has
/// no proper prefix equal to a suffix.
inline bool pseudo_power_check(const QuasiChar& q, const Word& g, std::int64_t max_n) {
  if (!q.cyclic()) throw Error(ErrorKind::KindMismatch, "pseudo-character law applies to e_W kinds");
  if (self_overlaps(q.pattern()))
    throw Error(ErrorKind::PatternSelfOverlaps, "B(W) and E(W) intersect for W = " + to_string(q.pattern()));
  std::int64_t base = q(g);
  for (std::int64_t n = -max_n; n <= max_n; ++n)
    if (q(word_power(g, n)) != n * base) return false;
  return true;
}

enum class WitnessFamily { F1Free, F2Fp };

/// F1: b_i = a2^i a1^-i a2 a1^i in F_2.
inline FreeWord witness_b_free(std::int64_t i) {
  return reduce({{2, i}, {1, -i}, {2, 1}, {1, i}}, 2);
}

/// F2: b_i = (b a^2)^i a (ab)^-i b (ab)^i in Z_m * Z_n.
inline FPWord witness_b_fp(std::int64_t i, std::int64_t m = 4, std::int64_t n = 4) {
  FPWord a(m, n), b(m, n);
  a.push_back({Factor::A, 1});
  b.push_back({Factor::B, 1});
  FPWord ba2 = multiply(b, multiply(a, a));
  FPWord ab = multiply(a, b);
  FPWord out = word_power(ba2, i);
  out = multiply(out, a);
  out = multiply(out, word_power(ab, -i));
  out = multiply(out, b);
  return multiply(out, word_power(ab, i));
}

/// g = b_i b_j^-1 for j > i >= 1.
inline Word witness_element(WitnessFamily family, std::int64_t i, std::int64_t j, std::int64_t m = 4,
                            std::int64_t n = 4) {
  if (i < 1 || j <= i)
    throw Error(ErrorKind::BadIndices, "need j > i >= 1, got i=" + std::to_string(i) + ", j=" + std::to_string(j));
  if (family == WitnessFamily::F1Free) return multiply(witness_b_free(i), invert(witness_b_free(j)));
  return multiply(witness_b_fp(i, m, n), invert(witness_b_fp(j, m, n)));
}

/// Closed form a2^i a1^-i a2 a1^(i-j) a2^-1 a1^j a2^-j of the F1 witness.
inline FreeWord witness_closed_form_free(std::int64_t i, std::int64_t j) {
  return reduce({{2, i}, {1, -i}, {2, 1}, {1, i - j}, {2, -1}, {1, j}, {2, -j}}, 2);
}

}  // namespace cocylab
