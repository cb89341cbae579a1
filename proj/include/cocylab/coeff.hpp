#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/arith.hpp"
#include "cocylab/error.hpp"

namespace cocylab {

/// Element of a coefficient group; coordinates are exact rationals so that
/// real-valued splitting functions and Q-coefficients share the carrier.
struct CoeffValue {
  std::vector<Rational> coords;

  bool operator==(const CoeffValue&) const = default;
};

using IntMatrix = std::vector<std::vector<Integer>>;

/// Z^n with optional per-coordinate moduli (0 = free coordinate), or Q^n
/// when `rational` is set (moduli must then all be 0).
class CoeffGroup {
 public:
  CoeffGroup() : moduli_(1, Integer(0)) {}
  explicit CoeffGroup(std::vector<Integer> moduli, bool rational = false)
      : moduli_(std::move(moduli)), rational_(rational) {
    if (moduli_.empty()) throw Error(ErrorKind::InvalidArgument, "coefficient group needs rank >= 1");
    for (const auto& m : moduli_) {
      if (m < 0) throw Error(ErrorKind::BadModulus, "negative modulus " + m.str());
      if (rational_ && m != 0) throw Error(ErrorKind::BadModulus, "rational coordinates cannot carry a modulus");
    }
  }

  static CoeffGroup integers(std::size_t rank = 1) { return CoeffGroup(std::vector<Integer>(rank, Integer(0))); }
  static CoeffGroup rationals(std::size_t rank = 1) {
    return CoeffGroup(std::vector<Integer>(rank, Integer(0)), true);
  }
  static CoeffGroup cyclic(const Integer& n) { return CoeffGroup(std::vector<Integer>{n}); }

  std::size_t rank() const { return moduli_.size(); }
  const std::vector<Integer>& moduli() const { return moduli_; }
  bool rational() const { return rational_; }
  bool operator==(const CoeffGroup&) const = default;

  std::string describe() const {
    if (rational_) return rank() == 1 ? "Q" : "Q^" + std::to_string(rank());
    std::string out;
    for (const auto& m : moduli_) {
      if (!out.empty()) out += " x ";
      out += m == 0 ? "Z" : "Z/" + m.str();
    }
    return out;
  }

  CoeffValue zero() const { return {std::vector<Rational>(rank(), Rational(0))}; }

  CoeffValue reduce(CoeffValue v) const {
    check_rank(v);
    for (std::size_t i = 0; i < rank(); ++i) {
      if (!rational_ && !is_integral(v.coords[i]))
        throw Error(ErrorKind::NotIntegral, "non-integral value " + format_rational(v.coords[i]) + " in " + describe());
      if (moduli_[i] != 0) v.coords[i] = Rational(floor_mod(numerator_of(v.coords[i]), moduli_[i]));
    }
    return v;
  }

  CoeffValue make(std::vector<Rational> coords) const { return reduce(CoeffValue{std::move(coords)}); }
  CoeffValue scalar(const Rational& x) const {
    if (rank() != 1) throw Error(ErrorKind::InvalidArgument, "scalar value needs a rank-1 coefficient group");
    return make({x});
  }

  bool contains(const CoeffValue& v) const {
    if (v.coords.size() != rank()) return false;
    try {
      return reduce(v) == v;
    } catch (const Error&) {
      return false;
    }
  }

  CoeffValue add(const CoeffValue& x, const CoeffValue& y) const {
    check_rank(x);
    check_rank(y);
    CoeffValue out = x;
    for (std::size_t i = 0; i < rank(); ++i) out.coords[i] += y.coords[i];
    return reduce(std::move(out));
  }

  CoeffValue sub(const CoeffValue& x, const CoeffValue& y) const { return add(x, neg(y)); }

  CoeffValue neg(const CoeffValue& x) const {
    check_rank(x);
    CoeffValue out = x;
    for (auto& c : out.coords) c = -c;
    return reduce(std::move(out));
  }

  CoeffValue scale(const Integer& k, const CoeffValue& x) const {
    check_rank(x);
    CoeffValue out = x;
    for (auto& c : out.coords) c *= Rational(k);
    return reduce(std::move(out));
  }

  /// g.a for an integer action matrix; an empty matrix is the identity.
  CoeffValue act(const IntMatrix& matrix, const CoeffValue& a) const {
    if (matrix.empty()) return a;
    if (matrix.size() != rank()) throw Error(ErrorKind::InvalidArgument, "action matrix has wrong size");
    CoeffValue out = zero();
    for (std::size_t i = 0; i < rank(); ++i) {
      if (matrix[i].size() != rank()) throw Error(ErrorKind::InvalidArgument, "action matrix has wrong size");
      for (std::size_t j = 0; j < rank(); ++j) out.coords[i] += Rational(matrix[i][j]) * a.coords[j];
    }
    return reduce(std::move(out));
  }

  bool is_zero(const CoeffValue& x) const { return reduce(x) == zero(); }

 private:
  void check_rank(const CoeffValue& v) const {
    if (v.coords.size() != rank())
      throw Error(ErrorKind::InvalidArgument, "coefficient rank " + std::to_string(v.coords.size()) + " in " +
                                                  describe());
  }

  std::vector<Integer> moduli_;
  bool rational_ = false;
};

/// Integers that fit in 64 bits become JSON numbers; everything else is a
/// "p" or "p/q" string.
inline nlohmann::json rational_to_json(const Rational& r) {
  if (is_integral(r)) {
    Integer n = numerator_of(r);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return static_cast<std::int64_t>(n);
  }
  return format_rational(r);
}

inline Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError(0, "expected integer or \"p/q\" string, got " + j.dump());
}

inline nlohmann::json to_json(const CoeffValue& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : v.coords) out.push_back(rational_to_json(c));
  return out;
}

inline CoeffValue coeff_from_json(const nlohmann::json& j, const CoeffGroup& group) {
  if (!j.is_array()) throw ParseError(0, "coefficient value must be a JSON array");
  CoeffValue v;
  for (const auto& c : j) v.coords.push_back(rational_from_json(c));
  if (v.coords.size() != group.rank())
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(group.rank()) + " coefficient coordinates");
  return group.reduce(std::move(v));
}

inline std::string to_string(const CoeffValue& v) { return to_json(v).dump(); }

}  // namespace cocylab
