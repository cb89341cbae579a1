#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/coeff.hpp"
#include "cocylab/error.hpp"
#include "cocylab/group.hpp"
#include "cocylab/linalg.hpp"
#include "cocylab/quasichar.hpp"
#include "cocylab/report.hpp"
#include "cocylab/sl2.hpp"

namespace cocylab {

/// h: G x G -> A together with the action of G on A (empty = trivial).
template <GroupModel G>
struct Cocycle2 {
  using Element = typename G::Element;
  using Evaluator = std::function<CoeffValue(const Element&, const Element&)>;
  using Action = std::function<IntMatrix(const Element&)>;

  std::string name;
  G group;
  CoeffGroup coeffs;
  Evaluator evaluator;
  Action action;
  /// Declared bound on |h| per coordinate, when the cocycle is bounded.
  std::optional<Rational> image_bound;

  CoeffValue operator()(const Element& x, const Element& y) const { return coeffs.reduce(evaluator(x, y)); }

  bool central() const { return !action; }

  CoeffValue act(const Element& g, const CoeffValue& a) const {
    if (!action) return a;
    return coeffs.act(action(g), a);
  }
};

template <GroupModel G>
nlohmann::json elements_json(const G& group, std::initializer_list<typename G::Element> xs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : xs) out.push_back(group.encode(x));
  return out;
}

/// Normalization h(g,e) = h(e,g) = 0 on every sampled element and
/// h(x,y) + h(xy,z) = h(x,yz) + x.h(y,z) on every triple.
template <GroupModel G>
AuditReport verify_identity(const Cocycle2<G>& h, const std::vector<Triple<typename G::Element>>& triples) {
  const auto& grp = h.group;
  const auto e = grp.identity();
  const auto zero = h.coeffs.zero();
  AuditReport report;
  for (const auto& t : triples) {
    ++report.checked;
    for (const auto* g : {&t.first, &t.second, &t.third}) {
      CoeffValue right = h(*g, e);
      if (!(right == zero)) {
        report.record({"normalization", elements_json(grp, {*g, e}), to_json(right), to_json(zero)});
        break;
      }
      CoeffValue left = h(e, *g);
      if (!(left == zero)) {
        report.record({"normalization", elements_json(grp, {e, *g}), to_json(left), to_json(zero)});
        break;
      }
    }
    const auto& [x, y, z] = t;
    auto xy = grp.multiply(x, y);
    auto yz = grp.multiply(y, z);
    CoeffValue lhs = h.coeffs.add(h(x, y), h(xy, z));
    CoeffValue rhs = h.coeffs.add(h(x, yz), h.act(x, h(y, z)));
    if (!(lhs == rhs)) report.record({"cocycle", elements_json(grp, {x, y, z}), to_json(lhs), to_json(rhs)});
  }
  return report;
}

template <GroupModel G>
AuditReport verify_identity(const Cocycle2<G>& h, std::size_t count, std::uint64_t seed = 0) {
  return verify_identity(h, sample_triples(h.group, count, seed));
}

/// h(g, g^-1) = h(g^-1, g); holds for every central cocycle.
template <GroupModel G>
AuditReport central_symmetry_check(const Cocycle2<G>& h, std::size_t count, std::uint64_t seed = 0) {
  AuditReport report;
  for (const auto& [g, unused] : sample_pairs(h.group, count, seed)) {
    (void)unused;
    auto gi = h.group.inverse(g);
    ++report.checked;
    CoeffValue l = h(g, gi), r = h(gi, g);
    if (!(l == r)) report.record({"h(g,g^-1)=h(g^-1,g)", elements_json(h.group, {g}), to_json(l), to_json(r)});
  }
  return report;
}

/// delta f(x, y) = f(x) + x.f(y) - f(xy).
template <GroupModel G>
Cocycle2<G> coboundary(std::string name, const G& group, const CoeffGroup& coeffs,
                       std::function<CoeffValue(const typename G::Element&)> f,
                       typename Cocycle2<G>::Action action = {}) {
  CoeffValue fe = coeffs.reduce(f(group.identity()));
  if (!(fe == coeffs.zero())) throw Error(ErrorKind::NotNormalized, "f(e) = " + to_string(fe) + " != 0");
  Cocycle2<G> out{std::move(name), group, coeffs, {}, action, std::nullopt};
  out.evaluator = [group, coeffs, f, action](const auto& x, const auto& y) {
    CoeffValue fy = coeffs.reduce(f(y));
    if (action) fy = coeffs.act(action(x), fy);
    return coeffs.sub(coeffs.add(coeffs.reduce(f(x)), fy), coeffs.reduce(f(group.multiply(x, y))));
  };
  return out;
}

/// The cocycle reduced into Z^n / (moduli), coordinate by coordinate.
template <GroupModel G>
Cocycle2<G> induce_quotient(const Cocycle2<G>& h, const std::vector<Integer>& new_moduli) {
  const auto& old = h.coeffs;
  if (old.rational()) throw Error(ErrorKind::BadQuotient, "rational coefficients have no integral quotient here");
  if (new_moduli.size() != old.rank())
    throw Error(ErrorKind::BadQuotient, "expected " + std::to_string(old.rank()) + " moduli");
  for (std::size_t i = 0; i < old.rank(); ++i) {
    const Integer& m_old = old.moduli()[i];
    const Integer& m_new = new_moduli[i];
    if (m_new < 0) throw Error(ErrorKind::BadQuotient, "negative modulus");
    bool ok = m_old == 0 || (m_new != 0 && m_old % m_new == 0);
    if (!ok)
      throw Error(ErrorKind::BadQuotient,
                  "Z/" + m_new.str() + " is not a quotient of " + (m_old == 0 ? std::string("Z") : "Z/" + m_old.str()));
  }
  CoeffGroup target(new_moduli);
  Cocycle2<G> out = h;
  out.name = h.name + " mod (" + target.describe() + ")";
  out.coeffs = target;
  auto inner = h.evaluator;
  out.evaluator = [inner, target](const auto& x, const auto& y) { return target.reduce(inner(x, y)); };
  if (h.image_bound) {
    bool all_free = true;
    for (const auto& m : new_moduli) all_free = all_free && m == 0;
    if (!all_free) out.image_bound.reset();
  }
  return out;
}

/// Quotient of Z^n by the subgroup spanned by the columns of `generators`
/// (together with the existing moduli), brought to diagonal form via Smith
/// normal form. Coordinates with trivial factor Z/1 are dropped.
template <GroupModel G>
Cocycle2<G> induce_quotient_by_subgroup(const Cocycle2<G>& h, const IntMatrix& generators) {
  const auto& old = h.coeffs;
  if (old.rational()) throw Error(ErrorKind::BadQuotient, "rational coefficients have no integral quotient here");
  if (!h.central()) throw Error(ErrorKind::UnsupportedAction, "subgroup quotients are implemented for central cocycles");
  const std::size_t n = old.rank();
  IntMatrix span(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!generators.empty() && generators[i].size() != generators.front().size())
      throw Error(ErrorKind::BadQuotient, "ragged generator matrix");
    if (i < generators.size()) span[i] = generators[i];
  }
  if (generators.size() != n && !generators.empty())
    throw Error(ErrorKind::BadQuotient, "generator columns must have " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i)
    if (old.moduli()[i] != 0)
      for (std::size_t r = 0; r < n; ++r) span[r].push_back(r == i ? old.moduli()[i] : Integer(0));
  bool any_column = !span.empty() && !span.front().empty();
  SmithForm s = any_column ? smith_normal_form(span) : SmithForm{identity_matrix(n), span, {}, 0};

  std::vector<std::size_t> kept;
  std::vector<Integer> moduli;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = i < s.rank ? s.d[i][i] : Integer(0);
    if (d == 1) continue;
    kept.push_back(i);
    moduli.push_back(d);
  }
  if (kept.empty()) {
    kept.push_back(0);
    moduli.push_back(1);
  }
  CoeffGroup target(moduli);
  IntMatrix p = s.p;
  auto inner = h.evaluator;
  Cocycle2<G> out = h;
  out.name = h.name + " mod subgroup";
  out.coeffs = target;
  out.image_bound.reset();
  out.evaluator = [inner, target, p, kept](const auto& x, const auto& y) {
    CoeffValue v = inner(x, y);
    CoeffValue w{std::vector<Rational>(kept.size(), Rational(0))};
    for (std::size_t k = 0; k < kept.size(); ++k)
      for (std::size_t j = 0; j < v.coords.size(); ++j) w.coords[k] += Rational(p[kept[k]][j]) * v.coords[j];
    return target.reduce(w);
  };
  return out;
}

/// A map S -> G checked on supplied relators.
template <GroupModel S, GroupModel G>
struct Homomorphism {
  S source;
  G target;
  std::function<typename G::Element(const typename S::Element&)> map;
  std::vector<typename S::Element> relators;

  typename G::Element operator()(const typename S::Element& x) const { return map(x); }

  void check() const {
    for (const auto& r : relators)
      if (!(map(r) == target.identity()))
        throw Error(ErrorKind::NotHomomorphism,
                    "relator " + source.encode(r) + " maps to " + target.encode(map(r)) + ", not the identity");
  }
};

/// h' = h o (hom, hom), with action pulled back as well.
template <GroupModel S, GroupModel G>
Cocycle2<S> pullback(const Cocycle2<G>& h, const Homomorphism<S, G>& hom) {
  hom.check();
  Cocycle2<S> out{h.name + " pulled back", hom.source, h.coeffs, {}, {}, h.image_bound};
  auto inner = h.evaluator;
  auto map = hom.map;
  out.evaluator = [inner, map](const auto& x, const auto& y) { return inner(map(x), map(y)); };
  if (h.action) {
    auto act = h.action;
    out.action = [act, map](const auto& x) { return act(map(x)); };
  }
  return out;
}

/// Free group F_rank -> G determined by generator images.
template <GroupModel G>
Homomorphism<FreeGroup, G> free_homomorphism(int rank, const G& target,
                                              std::vector<typename G::Element> images) {
  if (static_cast<int>(images.size()) != rank)
    throw Error(ErrorKind::InvalidArgument, "need one image per free generator");
  Homomorphism<FreeGroup, G> hom{FreeGroup{rank}, target, {}, {}};
  hom.map = [target, images](const FreeWord& w) {
    auto out = target.identity();
    for (const auto& s : w.syllables()) out = target.multiply(out, power(target, images[s.gen - 1], s.exp));
    return out;
  };
  return hom;
}

// ---------------------------------------------------------------------------
// Built-in cocycles

inline Cocycle2<SL2Z> asai_cocycle(SL2Z group = {}) {
  return {"asai", group, CoeffGroup::integers(),
          [](const MatZ& x, const MatZ& y) { return CoeffValue{{Rational(asai_h(x, y))}}; }, {}, Rational(1)};
}

inline Cocycle2<SL2Q> asai_cocycle_q(SL2Q group = {}) {
  return {"asai", group, CoeffGroup::integers(),
          [](const MatQ& x, const MatQ& y) { return CoeffValue{{Rational(asai_h(x, y))}}; }, {}, Rational(1)};
}

/// Matsumoto's cocycle for a symbol valued in `coeffs`.
template <GroupModel G = SL2Q>
Cocycle2<G> matsumoto_cocycle(SymbolFn symbol, G group = {}, CoeffGroup coeffs = CoeffGroup::integers()) {
  return {"matsumoto", group, coeffs,
          [symbol, coeffs](const auto& x, const auto& y) { return matsumoto_H(x, y, symbol, coeffs); }, {},
          std::nullopt};
}

template <GroupModel G>
Cocycle2<G> zero_cocycle(G group, CoeffGroup coeffs = CoeffGroup::integers()) {
  return {"zero", group, coeffs, [coeffs](const auto&, const auto&) { return coeffs.zero(); }, {}, Rational(0)};
}

/// delta f_W for a quasi-character, with the computed defect bound declared.
inline Cocycle2<WordGroup> quasichar_cocycle(const QuasiChar& q) {
  auto out = coboundary<WordGroup>("delta " + q.describe(), group_of(q), CoeffGroup::integers(),
                                   [q](const Word& g) { return CoeffValue{{Rational(q(g))}}; });
  out.image_bound = Rational(3 * q.pattern_length());
  return out;
}

/// delta of the splitting function of the Asai cocycle, over Q.
inline Cocycle2<SL2Z> asai_split_coboundary(SL2Z group = {}) {
  return coboundary<SL2Z>("delta f", group, CoeffGroup::rationals(),
                          [](const MatZ& g) { return CoeffValue{{asai_split_f(g)}}; });
}

}  // namespace cocylab
