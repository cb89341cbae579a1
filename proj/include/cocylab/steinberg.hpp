#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/arith.hpp"
#include "cocylab/coeff.hpp"
#include "cocylab/report.hpp"
#include "cocylab/sl2.hpp"

namespace cocylab {

/// A map k^x x k^x -> A audited as a symplectic Steinberg symbol, written
/// additively.
struct SymbolUnderTest {
  std::string name;
  SymbolFn evaluator;
  CoeffGroup coeffs = CoeffGroup::integers();

  CoeffValue operator()(const Rational& x, const Rational& y) const { return coeffs.reduce(evaluator(x, y)); }
  CoeffValue add(const CoeffValue& a, const CoeffValue& b) const { return coeffs.add(a, b); }
};

inline SymbolUnderTest ordered_symbol_under_test() { return {"ordered", ordered_symbol()}; }

inline SymbolUnderTest trivial_symbol() {
  return {"trivial", [](const Rational&, const Rational&) { return CoeffValue{{Rational(0)}}; }};
}

/// 1 iff exactly one argument is negative; not a Steinberg symbol.
inline SymbolUnderTest xor_sign_symbol() {
  return {"xor", [](const Rational& x, const Rational& y) {
            if (x == 0 || y == 0) throw Error(ErrorKind::ZeroArgument, "symbol arguments must be nonzero");
            return CoeffValue{{Rational((x < 0) != (y < 0) ? 1 : 0)}};
          }};
}

namespace detail {

/// Sample points: a fixed list of small signed values first, then seeded
/// draws p/q with 1 <= |p| <= 12 and 1 <= q <= 9.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

  Rational next() {
    static const std::vector<Rational> fixed{1, -1, 2, -2, Rational(1, 2), Rational(-1, 2), 3, Rational(-2, 3)};
    if (pos_ < fixed.size()) return fixed[pos_++];
    return rng_.nonzero_rational(12, 9);
  }

  Rational next_not_one() {
    Rational x = next();
    while (x == 1) x = next();
    return x;
  }

  Rng& rng() { return rng_; }

 private:
  Rng rng_;
  std::size_t pos_ = 0;
};

inline nlohmann::json args_json(std::initializer_list<Rational> xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(format_rational(x));
  return out;
}

/// Records a violation only if an independent re-evaluation confirms it.
template <class Lhs, class Rhs>
void check(AuditReport& report, const std::string& relation, nlohmann::json inputs, Lhs lhs, Rhs rhs) {
  ++report.checked;
  CoeffValue l = lhs();
  CoeffValue r = rhs();
  if (l == r) return;
  CoeffValue l2 = lhs();
  CoeffValue r2 = rhs();
  if (l2 == r2) return;
  report.record({relation, std::move(inputs), to_json(l2), to_json(r2)});
}

}  // namespace detail

/// (S1) on `samples` triples; (S2) at (1,1) and on `samples` pairs; (S3) on
/// `samples` pairs with x != 1.
inline AuditReport audit_core(const SymbolUnderTest& c, std::size_t samples, std::uint64_t seed = 0) {
  AuditReport report;
  detail::RationalSampler draw(seed);
  detail::check(report, "S2", detail::args_json({1, 1}), [&] { return c(1, 1); }, [&] { return c.coeffs.zero(); });
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = draw.next(), y = draw.next(), z = draw.next();
    detail::check(
        report, "S1", detail::args_json({x, y, z}), [&] { return c.add(c(x, y), c(x * y, z)); },
        [&] { return c.add(c(x, y * z), c(y, z)); });
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = draw.next(), y = draw.next();
    detail::check(report, "S2", detail::args_json({x, y}), [&] { return c(x, y); }, [&] { return c(1 / x, 1 / y); });
  }
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = draw.next_not_one(), y = draw.next();
    detail::check(report, "S3", detail::args_json({x, y}), [&] { return c(x, y); },
                  [&] { return c(x, (1 - x) * y); });
  }
  return report;
}

/// The six consequences (1)-(6) of (S1)-(S3), each on `samples` tuples.
inline AuditReport audit_derived(const SymbolUnderTest& c, std::size_t samples, std::uint64_t seed = 0) {
  AuditReport report;
  if (!audit_core(c, std::min<std::size_t>(samples, 1000), seed).clean())
    report.warnings.push_back("symbol " + c.name + " fails the core relations; derived relations need not hold");
  detail::RationalSampler draw(seed + 1);
  for (std::size_t i = 0; i < samples; ++i) {
    Rational x = draw.next(), y = draw.next(), z = draw.next(), t = draw.next();
    detail::check(report, "1", detail::args_json({x, y}), [&] { return c(x, y); }, [&] { return c(1 / y, x); });
    detail::check(report, "2", detail::args_json({x, y}), [&] { return c(x, y); }, [&] { return c(x, -x * y); });
    detail::check(
        report, "3", detail::args_json({x, z, t}), [&] { return c.add(c(x, z * z), c(x, t * t)); },
        [&] { return c(x, (z * t) * (z * t)); });
    detail::check(report, "4", detail::args_json({x, y, z}), [&] { return c(x * y * y, z); },
                  [&] { return c(x, z * y * y); });
    detail::check(report, "4", detail::args_json({x, y, z}), [&] { return c(x, z * y * y); },
                  [&] { return c(x, z); });
    detail::check(report, "5", detail::args_json({x, y}), [&] { return c(x, y); }, [&] { return c(y, x); });
    detail::check(report, "6", detail::args_json({x, y}), [&] { return c(x, -1); },
                  [&] { return c.add(c(x, y), c(x, -y)); });
  }
  return report;
}

/// c(s,t) = c(t,s) = 0 for s a sum of `terms` nonzero rational squares.
inline AuditReport squares_check(const SymbolUnderTest& c, int terms, std::size_t samples, std::uint64_t seed = 0) {
  if (terms < 1) throw Error(ErrorKind::InvalidArgument, "terms must be >= 1");
  AuditReport report;
  detail::RationalSampler draw(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    Rational s = 0;
    for (int k = 0; k < terms; ++k) {
      Rational q = draw.next();
      s += q * q;
    }
    Rational t = draw.next();
    detail::check(report, "c(s,t)=0", detail::args_json({s, t}), [&] { return c(s, t); },
                  [&] { return c.coeffs.zero(); });
    detail::check(report, "c(t,s)=0", detail::args_json({t, s}), [&] { return c(t, s); },
                  [&] { return c.coeffs.zero(); });
  }
  return report;
}

struct BimultiplicativityProbe {
  CoeffValue lhs;  // c(xy, z)
  CoeffValue rhs;  // c(x, z) + c(y, z)
  bool differs() const { return !(lhs == rhs); }
};

inline BimultiplicativityProbe bimultiplicativity_probe(const SymbolUnderTest& c, const Rational& x = -1,
                                                        const Rational& y = -1, const Rational& z = -1) {
  return {c(x * y, z), c.add(c(x, z), c(y, z))};
}

}  // namespace cocylab
