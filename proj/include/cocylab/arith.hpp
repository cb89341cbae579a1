#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "cocylab/error.hpp"

namespace cocylab {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return denominator_of(r) == 1; }

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(Integer(abs(a)), Integer(abs(b)));
}

/// Remainder in [0, |m|).
inline Integer floor_mod(const Integer& a, const Integer& m) {
  Integer am = abs(m);
  Integer r = a % am;
  if (r < 0) r += am;
  return r;
}

/// "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  if (is_integral(r)) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Integer parse_integer(std::string_view text, std::size_t offset = 0) {
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    neg = text[i] == '-';
    ++i;
  }
  if (i >= text.size()) throw ParseError(offset + i, "expected digits");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    char ch = text[i];
    if (ch < '0' || ch > '9') throw ParseError(offset + i, std::string("unexpected character '") + ch + "'");
    value = value * 10 + (ch - '0');
  }
  return neg ? Integer(-value) : value;
}

/// Accepts "p" or "p/q" with q != 0.
inline Rational parse_rational(std::string_view text, std::size_t offset = 0) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, offset));
  Integer num = parse_integer(text.substr(0, slash), offset);
  Integer den = parse_integer(text.substr(slash + 1), offset + slash + 1);
  if (den == 0) throw ParseError(offset + slash + 1, "zero denominator");
  return Rational(num, den);
}

/// Seeded generator with portable integer draws (rejection sampling on the raw
/// 64-bit stream), so every sample set is bit-reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw Error(ErrorKind::InvalidArgument, "empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
    if (span == ~std::uint64_t{0}) return static_cast<std::int64_t>(next());
    std::uint64_t n = span + 1;
    std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % n);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + x % n);
  }

  /// True with probability num/den.
  bool chance(std::int64_t num, std::int64_t den) { return uniform(0, den - 1) < num; }

  bool coin() { return (next() >> 63) != 0; }

  /// Number of successes before the first failure, success probability
  /// num/den, truncated at cap.
  int geometric(std::int64_t num, std::int64_t den, int cap) {
    int k = 0;
    while (k < cap && chance(num, den)) ++k;
    return k;
  }

  /// Nonzero rational with numerator in [-max_num, max_num] and denominator
  /// in [1, max_den].
  Rational nonzero_rational(std::int64_t max_num, std::int64_t max_den) {
    std::int64_t p = 0;
    while (p == 0) p = uniform(-max_num, max_num);
    return Rational(p, uniform(1, max_den));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cocylab
