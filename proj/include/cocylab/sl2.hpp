#pragma once

#include <array>
#include <cctype>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/arith.hpp"
#include "cocylab/coeff.hpp"
#include "cocylab/error.hpp"
#include "cocylab/group.hpp"

namespace cocylab {

/// [[a, b], [c, d]]
template <class T>
struct Mat2 {
  T a = 1, b = 0, c = 0, d = 1;

  static Mat2 identity() { return {T(1), T(0), T(0), T(1)}; }

  T det() const { return a * d - b * c; }
  T trace() const { return a + d; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator-() const { return {-a, -b, -c, -d}; }
  /// Adjugate; the inverse for determinant-one matrices.
  Mat2 adjugate() const { return {d, -b, -c, a}; }
  bool operator==(const Mat2&) const = default;
};

using MatZ = Mat2<Integer>;
using MatQ = Mat2<Rational>;

inline const MatZ kS{0, -1, 1, 0};
inline const MatZ kT{1, 1, 0, 1};
inline const MatZ kU{1, 0, -1, 1};

inline MatQ to_rational(const MatZ& m) { return {Rational(m.a), Rational(m.b), Rational(m.c), Rational(m.d)}; }

inline MatZ to_integer(const MatQ& m) {
  for (const auto* x : {&m.a, &m.b, &m.c, &m.d})
    if (!is_integral(*x)) throw Error(ErrorKind::NotIntegral, "matrix entry " + format_rational(*x) + " not integral");
  return {numerator_of(m.a), numerator_of(m.b), numerator_of(m.c), numerator_of(m.d)};
}

template <class T>
std::string entry_string(const T& x) {
  if constexpr (std::is_same_v<T, Rational>)
    return format_rational(x);
  else
    return x.str();
}

template <class T>
void require_unimodular(const Mat2<T>& m) {
  if (m.det() != 1)
    throw Error(ErrorKind::NotUnimodular, "determinant " + entry_string(T(m.det())) + " != 1");
}

template <class T>
nlohmann::json to_json(const Mat2<T>& m) {
  return nlohmann::json::array({nlohmann::json::array({entry_string(m.a), entry_string(m.b)}),
                                nlohmann::json::array({entry_string(m.c), entry_string(m.d)})});
}

inline MatQ matq_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw ParseError(0, "matrix must be a 2x2 JSON array");
  auto entry = [](const nlohmann::json& e) { return rational_from_json(e); };
  return {entry(j[0][0]), entry(j[0][1]), entry(j[1][0]), entry(j[1][1])};
}

// ---------------------------------------------------------------------------
// Symbols and cocycles

/// c(d): c if c != 0, else d.
template <class T>
T cd_symbol(const T& c, const T& d) {
  return c != 0 ? c : d;
}

template <class T>
int cd_sign(const Mat2<T>& m) {
  return sign(T(cd_symbol(m.c, m.d)));
}

template <class T>
int asai_h_unchecked(const Mat2<T>& m1, const Mat2<T>& m2) {
  int s1 = cd_sign(m1);
  int s2 = cd_sign(m2);
  int s3 = cd_sign(Mat2<T>(m1 * m2));
  if (s1 > 0 && s2 > 0 && s3 < 0) return 1;
  if (s1 < 0 && s2 < 0 && s3 > 0) return -1;
  return 0;
}

template <class T>
int asai_h(const Mat2<T>& m1, const Mat2<T>& m2) {
  require_unimodular(m1);
  require_unimodular(m2);
  return asai_h_unchecked(m1, m2);
}

/// 1 if x < 0 and y < 0, 0 otherwise.
inline Integer steinberg_ordered(const Rational& x, const Rational& y) {
  if (x == 0 || y == 0) throw Error(ErrorKind::ZeroArgument, "symbol arguments must be nonzero");
  return x < 0 && y < 0 ? 1 : 0;
}

/// k^x x k^x -> A, values in a coefficient group.
using SymbolFn = std::function<CoeffValue(const Rational&, const Rational&)>;

inline SymbolFn ordered_symbol() {
  return [](const Rational& x, const Rational& y) { return CoeffValue{{Rational(steinberg_ordered(x, y))}}; };
}

/// chi(M): lower-left entry, or the lower-right one when it vanishes.
template <class T>
Rational chi(const Mat2<T>& m) {
  return Rational(cd_symbol(m.c, m.d));
}

/// H(M,M') = c(chi(MM'), -chi(M)^-1 chi(M')) - c(chi(M), chi(M')).
template <class T>
CoeffValue matsumoto_H(const Mat2<T>& m1, const Mat2<T>& m2, const SymbolFn& symbol,
                       const CoeffGroup& coeffs = CoeffGroup::integers()) {
  require_unimodular(m1);
  require_unimodular(m2);
  Rational x1 = chi(m1);
  Rational x2 = chi(m2);
  Rational x3 = chi(Mat2<T>(m1 * m2));
  return coeffs.sub(coeffs.reduce(symbol(x3, -x2 / x1)), coeffs.reduce(symbol(x1, x2)));
}

// ---------------------------------------------------------------------------
// S,T words

/// Letter 'S' or 'T' raised to a nonzero power.
struct STSyllable {
  char letter = 'T';
  Integer exp = 1;

  bool operator==(const STSyllable&) const = default;
};

/// Words over {S, T}; S exponents are kept in 1..3 (S^4 = I).
class STWord {
 public:
  STWord() = default;

  const std::vector<STSyllable>& syllables() const { return syllables_; }
  bool empty() const { return syllables_.empty(); }

  void push_back(STSyllable s) {
    if (s.letter != 'S' && s.letter != 'T') throw Error(ErrorKind::InvalidArgument, "ST letters are S and T");
    if (s.letter == 'S') s.exp = floor_mod(s.exp, 4);
    if (s.exp == 0) return;
    if (!syllables_.empty() && syllables_.back().letter == s.letter) {
      STSyllable merged = syllables_.back();
      syllables_.pop_back();
      merged.exp += s.exp;
      push_back(merged);
      return;
    }
    syllables_.push_back(s);
  }

  void append(const STWord& w) {
    for (const auto& s : w.syllables_) push_back(s);
  }

  /// Total T-exponent minus 3 times total S-exponent, mod 12.
  Integer abelian_class() const {
    Integer v = 0;
    for (const auto& s : syllables_) v += s.letter == 'T' ? s.exp : Integer(-3 * s.exp);
    return floor_mod(v, 12);
  }

  bool operator==(const STWord&) const = default;

 private:
  std::vector<STSyllable> syllables_;
};

inline MatZ syllable_matrix(const STSyllable& s) {
  if (s.letter == 'T') return {1, s.exp, 0, 1};
  MatZ out = MatZ::identity();
  for (Integer k = floor_mod(s.exp, 4); k > 0; --k) out = out * kS;
  return out;
}

inline MatZ evaluate(const STWord& w) {
  MatZ out = MatZ::identity();
  for (const auto& s : w.syllables()) out = out * syllable_matrix(s);
  return out;
}

inline std::string to_string(const STWord& w) {
  if (w.empty()) return "I";
  std::string out;
  for (const auto& s : w.syllables()) {
    if (!out.empty()) out += ' ';
    out += s.letter;
    if (s.exp != 1) out += "^" + s.exp.str();
  }
  return out;
}

/// "S T^-3 S", "I" (identity), "-I" (= S^2); letters may carry ^k.
inline STWord parse_st_word(std::string_view text) {
  STWord w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i < text.size() && text[i] == '-') {
    ++i;
    skip_ws();
    if (i < text.size() && text[i] == 'I') {
      ++i;
      skip_ws();
      if (i != text.size()) throw ParseError(i, "trailing characters after -I");
      w.push_back({'S', 2});
      return w;
    }
    throw ParseError(i, "expected I after '-'");
  }
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    char ch = text[i];
    if (ch == 'I') {
      ++i;
      continue;
    }
    if (ch != 'S' && ch != 'T') throw ParseError(i, std::string("unexpected character '") + ch + "'");
    ++i;
    Integer exp = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      skip_ws();
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      exp = parse_integer(text.substr(start, i - start), start);
    }
    w.push_back({ch, exp});
  }
  return w;
}

/// Euclidean descent on the first column: M = T^q1 S T^q2 S ... (+-T^b).
/// With `rng`, each quotient is rounded up or down at random, which yields a
/// different but equally valid word.
inline STWord st_decompose(const MatZ& m, Rng* rng = nullptr) {
  require_unimodular(m);
  STWord w;
  MatZ cur = m;
  while (cur.c != 0) {
    Integer q = cur.a / cur.c;  // truncates toward zero
    Integer r = cur.a - q * cur.c;
    if (r != 0 && (r < 0) != (cur.c < 0)) q -= 1;  // now floor
    if (rng != nullptr && rng->coin() && cur.a - q * cur.c != 0) q += 1;
    // cur = T^q * S * rest
    w.push_back({'T', q});
    cur = MatZ{1, -q, 0, 1} * cur;
    w.push_back({'S', 1});
    cur = kS.adjugate() * cur;
  }
  if (cur.a == 1) {
    w.push_back({'T', cur.b});
  } else {
    w.push_back({'S', 2});
    w.push_back({'T', -cur.b});
  }
  return w;
}

inline STWord st_decompose(const MatQ& m) { return st_decompose(to_integer(m)); }

// ---------------------------------------------------------------------------
// The splitting function of the Asai cocycle on SL2(Z)

struct AsaiBase {
  Rational f_s;
  Rational f_st;
  Rational f_t;
};

/// f(S) from S^4 = I and f(ST) from S^2 = (ST)^3, by telescoping
/// f(x^k) = k f(x) - sum_{i=1}^{k-1} h(x^i, x).
inline const AsaiBase& asai_base() {
  static const AsaiBase base = [] {
    auto telescoped = [](const MatZ& x, int k) {
      int sum = 0;
      MatZ p = x;
      for (int i = 1; i < k; ++i) {
        sum += asai_h(p, x);
        p = p * x;
      }
      return sum;
    };
    // 0 = f(S^4) = 4 f(S) - sum
    Rational f_s = Rational(telescoped(kS, 4), 4);
    // f(S^2) = 2 f(S) - h(S,S) = f((ST)^3) = 3 f(ST) - sum
    Rational f_s2 = 2 * f_s - asai_h(kS, kS);
    MatZ st = kS * kT;
    Rational f_st = (f_s2 + telescoped(st, 3)) / 3;
    // f(ST) = f(S) + f(T) - h(S,T)
    Rational f_t = f_st - f_s + asai_h(kS, kT);
    return AsaiBase{f_s, f_st, f_t};
  }();
  return base;
}

/// 12 f on one syllable; 12 f takes integer values.
inline Integer asai_f12_syllable(const STSyllable& s) {
  static const Integer f12_t = numerator_of(asai_base().f_t * 12);
  static const std::array<Integer, 4> f12_s = [] {
    std::array<Integer, 4> out{};
    MatZ p = MatZ::identity();
    for (int k = 1; k < 4; ++k) {
      out[k] = out[k - 1] + numerator_of(asai_base().f_s * 12) - 12 * asai_h_unchecked(p, kS);
      p = p * kS;
    }
    return out;
  }();
  if (s.letter == 'T') return s.exp * f12_t;  // h(T^a, T^b) = 0
  return f12_s[static_cast<std::size_t>(floor_mod(s.exp, 4))];
}

/// 12 f along a word via f(xy) = f(x) + f(y) - h(x, y).
inline Integer asai_f12_along(const STWord& w) {
  Integer f = 0;
  MatZ acc = MatZ::identity();
  for (const auto& s : w.syllables()) {
    MatZ y = syllable_matrix(s);
    f += asai_f12_syllable(s) - 12 * asai_h_unchecked(acc, y);
    acc = acc * y;
  }
  return f;
}

inline Rational asai_f_along(const STWord& w) { return Rational(asai_f12_along(w), 12); }

inline Rational asai_split_f(const MatZ& m) { return asai_f_along(st_decompose(m)); }
inline Rational asai_split_f(const MatQ& m) { return asai_split_f(to_integer(m)); }

// ---------------------------------------------------------------------------
// Congruence data and the lemma matrices

struct CongruenceData {
  bool in_gamma_n = false;
  Integer abelian_class;
};

inline CongruenceData congruence_data(const MatZ& m, const Integer& n) {
  if (n < 1) throw Error(ErrorKind::BadModulus, "modulus must be >= 1, got " + n.str());
  require_unimodular(m);
  bool in = floor_mod(m.a - 1, n) == 0 && floor_mod(m.b, n) == 0 && floor_mod(m.c, n) == 0 &&
            floor_mod(m.d - 1, n) == 0;
  return {in, st_decompose(m).abelian_class()};
}

/// M_i = [[a_i, a_i d_i - 1], [1, d_i]].
inline MatZ lemma_factor(const Integer& a, const Integer& d) { return {a, a * d - 1, 1, d}; }

/// M = M_i M_j^-1 in closed form.
inline MatZ lemma_matrix(const Integer& ai, const Integer& di, const Integer& aj, const Integer& dj) {
  if (aj - ai < 2 || dj - di < 2)
    throw Error(ErrorKind::BadSpacing, "need a_j - a_i >= 2 and d_j - d_i >= 2");
  return {ai * (dj - di) + 1, ai * aj * (di - dj) + ai - aj, dj - di, aj * (di - dj) + 1};
}

// ---------------------------------------------------------------------------
// Group models

/// SL2(Z). Random elements: half are short words in S, T^k (|k| <= 3, up to
/// 12 syllables), half have entries bounded by `entry_bound` built from a
/// random coprime first column.
struct SL2Z {
  using Element = MatZ;

  std::int64_t entry_bound = 1000000;

  Element identity() const { return MatZ::identity(); }
  Element multiply(const Element& x, const Element& y) const { return x * y; }
  Element inverse(const Element& x) const { return x.adjugate(); }
  bool contains(const Element& x) const { return x.det() == 1; }
  std::string key(const Element& x) const {
    return x.a.str() + "," + x.b.str() + "," + x.c.str() + "," + x.d.str();
  }
  std::string encode(const Element& x) const { return to_string(st_decompose(x)); }

  Element random_element(Rng& rng) const {
    if (rng.coin()) {
      MatZ m = MatZ::identity();
      int len = static_cast<int>(rng.uniform(0, 12));
      for (int i = 0; i < len; ++i) {
        if (rng.coin())
          m = m * kS;
        else
          m = m * MatZ{1, rng.uniform(-3, 3), 0, 1};
      }
      return m;
    }
    return random_large(rng);
  }

  Element random_large(Rng& rng) const {
    const std::int64_t bound = entry_bound;
    while (true) {
      Integer a = rng.uniform(-bound, bound);
      Integer c = rng.uniform(-bound, bound);
      if (c == 0) {
        if (a != 1 && a != -1) continue;
        return {a, Integer(rng.uniform(-bound, bound)), 0, a};
      }
      if (gcd(a, c) != 1) continue;
      // a d - b c = 1 via extended Euclid on (a, c).
      Integer old_r = a, r = c, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
      }
      // old_s a + old_t c = old_r = +-1
      Integer d = old_s * old_r;
      Integer b = -old_t * old_r;
      // shift by a right T-power to keep entries small: (b, d) -> (b + k a, d + k c)
      Integer k = -(d / c);
      b += k * a;
      d += k * c;
      MatZ m{a, b, c, d};
      if (abs(b) > bound || abs(d) > bound) continue;
      return m;
    }
  }

  std::vector<Element> generators() const { return {kS, kT}; }
};

/// SL2(Q). Random elements: products of up to 4 elementary and diagonal
/// factors with small random rational parameters, sometimes negated.
struct SL2Q {
  using Element = MatQ;

  Element identity() const { return MatQ::identity(); }
  Element multiply(const Element& x, const Element& y) const { return x * y; }
  Element inverse(const Element& x) const { return x.adjugate(); }
  bool contains(const Element& x) const { return x.det() == 1; }
  std::string key(const Element& x) const {
    return format_rational(x.a) + "," + format_rational(x.b) + "," + format_rational(x.c) + "," +
           format_rational(x.d);
  }
  std::string encode(const Element& x) const { return to_json(x).dump(); }

  Element random_element(Rng& rng) const {
    MatQ m = MatQ::identity();
    int len = static_cast<int>(rng.uniform(0, 4));
    for (int i = 0; i < len; ++i) {
      Rational x = rng.nonzero_rational(9, 6);
      switch (rng.uniform(0, 3)) {
        case 0: m = m * MatQ{1, x, 0, 1}; break;
        case 1: m = m * MatQ{1, 0, x, 1}; break;
        case 2: m = m * MatQ{x, 0, 0, 1 / x}; break;
        default: m = m * to_rational(kS); break;
      }
    }
    if (rng.chance(1, 4)) m = -m;
    return m;
  }

  std::vector<Element> generators() const { return {to_rational(kS), to_rational(kT)}; }
};

}  // namespace cocylab
