#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/cocycle.hpp"
#include "cocylab/sl2.hpp"

namespace cocylab {

template <class E>
struct ExtElement {
  CoeffValue a;
  E g;

  bool operator==(const ExtElement&) const = default;
};

/// (A x G, *) with (a1, g1) * (a2, g2) = (a1 + g1.a2 + h(g1, g2), g1 g2).
template <GroupModel G>
struct ExtGroup {
  using Base = typename G::Element;
  using Element = ExtElement<Base>;

  Cocycle2<G> h;
  /// Range of the A-part of random elements, per coordinate.
  std::int64_t sample_bound = 5;

  const G& base() const { return h.group; }
  const CoeffGroup& coeffs() const { return h.coeffs; }

  Element identity() const { return {h.coeffs.zero(), base().identity()}; }

  bool contains(const Element& x) const { return h.coeffs.contains(x.a) && base().contains(x.g); }

  void require(const Element& x) const {
    if (!contains(x)) throw Error(ErrorKind::GroupMismatch, "element " + encode(x) + " is not in " + h.name + " extension");
  }

  Element multiply(const Element& x, const Element& y) const {
    require(x);
    require(y);
    const auto& c = h.coeffs;
    return {c.add(c.add(x.a, h.act(x.g, y.a)), h(x.g, y.g)), base().multiply(x.g, y.g)};
  }

  /// (-g^-1.a - h(g^-1, g), g^-1)
  Element inverse(const Element& x) const {
    require(x);
    const auto& c = h.coeffs;
    Base gi = base().inverse(x.g);
    return {c.sub(c.neg(h.act(gi, x.a)), h(gi, x.g)), gi};
  }

  std::string key(const Element& x) const { return to_json(x.a).dump() + ";" + base().key(x.g); }

  nlohmann::json to_json_value(const Element& x) const { return {{"a", to_json(x.a)}, {"g", base().encode(x.g)}}; }
  std::string encode(const Element& x) const { return to_json_value(x).dump(); }

  Element random_element(Rng& rng) const {
    CoeffValue a = h.coeffs.zero();
    for (auto& v : a.coords) v = rng.uniform(-sample_bound, sample_bound);
    Base g = base().random_element(rng);
    return {h.coeffs.reduce(a), std::move(g)};
  }

  std::vector<Element> generators() const {
    std::vector<Element> out;
    for (const auto& g : base().generators()) out.push_back({h.coeffs.zero(), g});
    for (std::size_t i = 0; i < h.coeffs.rank(); ++i) {
      CoeffValue a = h.coeffs.zero();
      a.coords[i] = 1;
      out.push_back({h.coeffs.reduce(a), base().identity()});
    }
    return out;
  }
};

template <GroupModel G>
ExtGroup<G> extension(Cocycle2<G> h) {
  return ExtGroup<G>{std::move(h)};
}

template <GroupModel G>
typename ExtGroup<G>::Element ext_mul(const ExtGroup<G>& grp, const typename ExtGroup<G>::Element& x,
                                      const typename ExtGroup<G>::Element& y) {
  return grp.multiply(x, y);
}

template <GroupModel G>
typename ExtGroup<G>::Element ext_inv(const ExtGroup<G>& grp, const typename ExtGroup<G>::Element& x) {
  return grp.inverse(x);
}

/// Associativity, identity and inverse laws, the projection being a
/// homomorphism, and (for central cocycles) centrality of A x {e}.
template <GroupModel G>
AuditReport ext_group_axioms(const ExtGroup<G>& grp, std::size_t count, std::uint64_t seed = 0) {
  AuditReport report;
  const auto e = grp.identity();
  auto inputs = [&](std::initializer_list<typename ExtGroup<G>::Element> xs) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& x : xs) out.push_back(grp.to_json_value(x));
    return out;
  };
  for (const auto& t : sample_triples(grp, count, seed)) {
    const auto& [x, y, z] = t;
    ++report.checked;
    auto l = grp.multiply(grp.multiply(x, y), z);
    auto r = grp.multiply(x, grp.multiply(y, z));
    if (!(l == r)) report.record({"associativity", inputs({x, y, z}), grp.to_json_value(l), grp.to_json_value(r)});
    auto ex = grp.multiply(e, x);
    auto xe = grp.multiply(x, e);
    if (!(ex == x) || !(xe == x))
      report.record({"identity", inputs({x}), grp.to_json_value(ex), grp.to_json_value(xe)});
    auto xi = grp.inverse(x);
    auto p1 = grp.multiply(x, xi);
    auto p2 = grp.multiply(xi, x);
    if (!(p1 == e) || !(p2 == e)) report.record({"inverse", inputs({x}), grp.to_json_value(p1), grp.to_json_value(p2)});
    auto pg = grp.base().multiply(x.g, y.g);
    if (!(grp.multiply(x, y).g == pg))
      report.record({"projection", inputs({x, y}), grp.base().encode(grp.multiply(x, y).g), grp.base().encode(pg)});
    if (grp.h.central()) {
      typename ExtGroup<G>::Element central{x.a, grp.base().identity()};
      auto c1 = grp.multiply(central, y);
      auto c2 = grp.multiply(y, central);
      if (!(c1 == c2))
        report.record({"centrality", inputs({central, y}), grp.to_json_value(c1), grp.to_json_value(c2)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Equivalence of cocycles

template <class E>
struct EquivalenceResult {
  bool equivalent = true;
  std::size_t checked = 0;
  std::optional<std::pair<E, E>> witness;
};

namespace detail {

template <GroupModel G>
CoeffGroup common_coeffs(const Cocycle2<G>& h1, const Cocycle2<G>& h2) {
  if (h1.coeffs.rank() != h2.coeffs.rank()) throw Error(ErrorKind::GroupMismatch, "coefficient ranks differ");
  if (h1.coeffs.rational() || h2.coeffs.rational()) return CoeffGroup::rationals(h1.coeffs.rank());
  if (!(h1.coeffs == h2.coeffs)) throw Error(ErrorKind::GroupMismatch, "coefficient groups differ");
  return h1.coeffs;
}

}  // namespace detail

/// h1 - h2 = delta f on sampled pairs, where delta uses the action of h1.
template <GroupModel G>
EquivalenceResult<typename G::Element> equivalence_check(
    const Cocycle2<G>& h1, const Cocycle2<G>& h2, const std::function<CoeffValue(const typename G::Element&)>& f,
    std::size_t count, std::uint64_t seed = 0) {
  CoeffGroup c = detail::common_coeffs(h1, h2);
  const auto& grp = h1.group;
  if (!c.is_zero(f(grp.identity()))) throw Error(ErrorKind::NotNormalized, "f(e) != 0");
  EquivalenceResult<typename G::Element> out;
  for (const auto& [x, y] : sample_pairs(grp, count, seed)) {
    ++out.checked;
    CoeffValue lhs = c.sub(c.reduce(h1.evaluator(x, y)), c.reduce(h2.evaluator(x, y)));
    CoeffValue fy = c.reduce(f(y));
    if (h1.action) fy = c.act(h1.action(x), fy);
    CoeffValue rhs = c.sub(c.add(c.reduce(f(x)), fy), c.reduce(f(grp.multiply(x, y))));
    if (!(lhs == rhs)) {
      out.equivalent = false;
      out.witness = std::make_pair(x, y);
      return out;
    }
  }
  return out;
}

/// The same question asked of the extensions: Phi(a, g) = (a + f(g), g) is a
/// homomorphism from the extension by h1 to the extension by h2.
template <GroupModel G>
EquivalenceResult<typename G::Element> phi_homomorphism_check(
    const Cocycle2<G>& h1, const Cocycle2<G>& h2, const std::function<CoeffValue(const typename G::Element&)>& f,
    std::size_t count, std::uint64_t seed = 0) {
  CoeffGroup c = detail::common_coeffs(h1, h2);
  auto widen = [&c](Cocycle2<G> h) {
    auto inner = h.evaluator;
    h.evaluator = [inner, c](const auto& x, const auto& y) { return c.reduce(inner(x, y)); };
    h.coeffs = c;
    return h;
  };
  ExtGroup<G> e1{widen(h1)}, e2{widen(h2)};
  e2.h.action = h1.action;
  auto phi = [&](const typename ExtGroup<G>::Element& x) {
    return typename ExtGroup<G>::Element{c.add(x.a, c.reduce(f(x.g))), x.g};
  };
  EquivalenceResult<typename G::Element> out;
  Rng rng(seed);
  for (const auto& [x, y] : sample_pairs(h1.group, count, seed)) {
    ++out.checked;
    typename ExtGroup<G>::Element ex{c.reduce(CoeffValue{{Rational(rng.uniform(-3, 3))}}), x};
    typename ExtGroup<G>::Element ey{c.reduce(CoeffValue{{Rational(rng.uniform(-3, 3))}}), y};
    if (c.rank() != 1) {
      ex.a = c.zero();
      ey.a = c.zero();
    }
    if (!(phi(e1.multiply(ex, ey)) == e2.multiply(phi(ex), phi(ey)))) {
      out.equivalent = false;
      out.witness = std::make_pair(x, y);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The braid group B3 as the extension of SL2(Z) by the Asai cocycle

using AsaiExt = ExtGroup<SL2Z>;
using AsaiElement = AsaiExt::Element;

inline AsaiExt asai_extension() { return AsaiExt{asai_cocycle()}; }

/// sigma_1 -> (k1, T), sigma_2 -> (k2, U).
inline std::pair<AsaiElement, AsaiElement> braid_lifts(const Integer& k1, const Integer& k2) {
  return {AsaiElement{CoeffValue{{Rational(k1)}}, kT}, AsaiElement{CoeffValue{{Rational(k2)}}, kU}};
}

/// A-part of s1 s2 s1 minus A-part of s2 s1 s2.
inline Integer braid_discrepancy(const Integer& k1, const Integer& k2) {
  AsaiExt grp = asai_extension();
  auto [s1, s2] = braid_lifts(k1, k2);
  auto left = grp.multiply(grp.multiply(s1, s2), s1);
  auto right = grp.multiply(grp.multiply(s2, s1), s2);
  if (!(left.g == right.g)) throw Error(ErrorKind::InvalidArgument, "braid relation fails in the base group");
  return numerator_of(left.a.coords[0] - right.a.coords[0]);
}

/// (s1 s2)^6.
inline AsaiElement full_twist_center(const Integer& k1, const Integer& k2) {
  AsaiExt grp = asai_extension();
  auto [s1, s2] = braid_lifts(k1, k2);
  return power(grp, grp.multiply(s1, s2), 6);
}

// ---------------------------------------------------------------------------
// Splitting of the pulled-back cocycle on the extension by (h mod n)

/// H is the extension of SL2(Z) by Z/n via the Asai cocycle mod n, f: H ->
/// SL2(Z) the projection and h' = h o (f, f). With the section z(g) = (0, g)
/// and F(x) = z(f(x)) x^-1 in Z/n x {I}, checks F(x) + F(y) - F(xy) = h'(x, y)
/// mod n on sampled pairs of H.
inline AuditReport induced_mod_split_witness(const Integer& n, std::size_t pair_samples, std::uint64_t seed = 0) {
  if (n < 2) throw Error(ErrorKind::BadModulus, "n must be >= 2");
  Cocycle2<SL2Z> h = asai_cocycle();
  ExtGroup<SL2Z> big{induce_quotient(h, {n})};
  Homomorphism<ExtGroup<SL2Z>, SL2Z> proj{big, h.group, [](const AsaiElement& x) { return x.g; }, {}};
  Cocycle2<ExtGroup<SL2Z>> pulled = pullback(h, proj);
  const CoeffGroup zn = CoeffGroup::cyclic(n);

  auto F = [&](const AsaiElement& x) {
    AsaiElement z{zn.zero(), proj(x)};
    AsaiElement k = big.multiply(z, big.inverse(x));
    if (!(k.g == MatZ::identity())) throw Error(ErrorKind::InvalidArgument, "F(x) left the kernel");
    return k.a;
  };

  AuditReport report;
  for (const auto& [x, y] : sample_pairs(big, pair_samples, seed)) {
    ++report.checked;
    CoeffValue lhs = zn.sub(zn.add(F(x), F(y)), F(big.multiply(x, y)));
    CoeffValue rhs = zn.reduce(pulled(x, y));
    if (!(lhs == rhs))
      report.record({"deltaF=h'", nlohmann::json::array({big.to_json_value(x), big.to_json_value(y)}), to_json(lhs),
                     to_json(rhs)});
  }
  return report;
}

}  // namespace cocylab
