#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cocylab/cocycle.hpp"
#include "cocylab/linalg.hpp"

namespace cocylab {

/// Upper bound on Cayley-ball sizes, from COCYLAB_MAX_BALL (default 2000000).
inline std::size_t max_ball_size() {
  if (const char* env = std::getenv("COCYLAB_MAX_BALL")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 2000000;
}

/// Letter k < m is generator k, letter m + k its inverse.
using LetterWord = std::vector<std::size_t>;

inline std::string letter_word_string(const LetterWord& w, const std::vector<std::string>& names) {
  const std::size_t m = names.size();
  if (w.empty()) return "e";
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t gen = w[i] % m;
    long long exp = 0;
    std::size_t j = i;
    while (j < w.size() && w[j] % m == gen) {
      exp += w[j] < m ? 1 : -1;
      ++j;
    }
    if (exp != 0) {
      if (!out.empty()) out += ' ';
      out += names[gen];
      if (exp != 1) out += "^" + std::to_string(exp);
    }
    i = j;
  }
  return out.empty() ? "e" : out;
}

/// Letter word of u v^-1, freely reduced.
inline LetterWord relation_word(const LetterWord& u, const LetterWord& v, std::size_t m) {
  LetterWord out;
  auto inv = [m](std::size_t l) { return l < m ? l + m : l - m; };
  auto push = [&](std::size_t l) {
    if (!out.empty() && out.back() == inv(l))
      out.pop_back();
    else
      out.push_back(l);
  };
  for (auto l : u) push(l);
  for (auto it = v.rbegin(); it != v.rend(); ++it) push(inv(*it));
  return out;
}

/// All products of at most `radius` generators and inverses, in BFS order,
/// each with one geodesic witness word.
template <GroupModel G>
struct CayleyBall {
  using Element = typename G::Element;

  G group;
  std::vector<Element> generators;
  std::size_t radius = 0;
  std::vector<Element> elements;
  std::vector<LetterWord> words;
  std::unordered_map<std::string, std::size_t> index;
  /// True when the size guard stopped construction early.
  bool truncated = false;

  /// Generators followed by their inverses.
  std::vector<Element> letters() const {
    std::vector<Element> out = generators;
    for (const auto& g : generators) out.push_back(group.inverse(g));
    return out;
  }

  std::optional<std::size_t> find(const Element& x) const {
    auto it = index.find(group.key(x));
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const { return elements.size(); }
};

/// Visits every edge (x, x.s) with |x| < radius. `on_edge(ball, x_index,
/// letter, product, product_index_or_none)` runs before a new product is
/// inserted.
template <GroupModel G, class OnEdge>
CayleyBall<G> build_ball(const G& group, const std::vector<typename G::Element>& gens, std::size_t radius,
                         std::size_t limit, OnEdge on_edge) {
  for (const auto& g : gens)
    if (!group.contains(g)) throw Error(ErrorKind::BadGenerator, "generator " + group.encode(g) + " not in the group");
  CayleyBall<G> ball{group, gens, radius, {}, {}, {}, false};
  auto letters = ball.letters();
  ball.elements.push_back(group.identity());
  ball.words.push_back({});
  ball.index.emplace(group.key(group.identity()), 0);
  std::size_t begin = 0;
  for (std::size_t r = 0; r < radius && !ball.truncated; ++r) {
    std::size_t end = ball.elements.size();
    for (std::size_t i = begin; i < end && !ball.truncated; ++i) {
      for (std::size_t l = 0; l < letters.size(); ++l) {
        auto y = group.multiply(ball.elements[i], letters[l]);
        std::string k = group.key(y);
        auto it = ball.index.find(k);
        std::optional<std::size_t> found;
        if (it != ball.index.end()) found = it->second;
        if (!found && ball.elements.size() >= limit) {
          ball.truncated = true;
          break;
        }
        on_edge(ball, i, l, y, found);
        if (found) continue;
        LetterWord w = ball.words[i];
        w.push_back(l);
        ball.index.emplace(std::move(k), ball.elements.size());
        ball.elements.push_back(std::move(y));
        ball.words.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return ball;
}

template <GroupModel G>
CayleyBall<G> cayley_ball(const G& group, const std::vector<typename G::Element>& gens, std::size_t radius) {
  auto ball = build_ball(group, gens, radius, max_ball_size(), [](const auto&, auto, auto, const auto&, auto) {});
  if (ball.truncated)
    throw Error(ErrorKind::BallTooLarge,
                "ball exceeds COCYLAB_MAX_BALL=" + std::to_string(max_ball_size()) + " elements");
  return ball;
}

// ---------------------------------------------------------------------------
// Split certification

enum class CoeffDomain { Integers, Rationals };

enum class VerdictKind { Split, NonSplit, Inconclusive };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Split: return "Split";
    case VerdictKind::NonSplit: return "NonSplit";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// sum coeffs[k] f(generator k) = rhs (mod modulus when nonzero), for one
/// coefficient coordinate.
struct Constraint {
  std::vector<Integer> coeffs;
  Integer rhs;
  Integer modulus = 0;
  std::size_t coordinate = 0;
};

struct SplitCertificate {
  std::string relation;
  std::vector<std::string> relations;
  Constraint constraint;
};

template <class E>
struct SplitVerdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  /// Split: f on every ball element, aligned with `elements`.
  std::vector<E> elements;
  std::vector<CoeffValue> assignment;
  /// Split: f on the generators, and the generators left unconstrained (set to 0).
  std::vector<CoeffValue> generator_values;
  std::vector<std::size_t> free_unknowns;
  std::optional<SplitCertificate> certificate;
  std::size_t ball_size = 0;
  std::size_t constraint_count = 0;
  std::string note;
};

namespace detail {

/// f(w) = sum lambda_k u_k + constant, per coefficient coordinate.
struct Affine {
  std::vector<Integer> lambda;
  std::vector<Rational> constant;
};

}  // namespace detail

/// True iff the constraint has no solution in the domain.
inline bool constraint_unsolvable(const Constraint& c, CoeffDomain domain) {
  Integer g = c.modulus;
  for (const auto& x : c.coeffs) g = gcd(g, x);
  if (g == 0) return c.rhs != 0;
  return domain == CoeffDomain::Integers || c.modulus != 0 ? c.rhs % g != 0 : false;
}

inline nlohmann::json to_json(const SplitCertificate& cert) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : cert.constraint.coeffs) coeffs.push_back(rational_to_json(Rational(c)));
  nlohmann::json constraint{{"coeffs", coeffs}, {"rhs", rational_to_json(Rational(cert.constraint.rhs))}};
  if (cert.constraint.modulus != 0) constraint["modulus"] = rational_to_json(Rational(cert.constraint.modulus));
  if (cert.constraint.coordinate != 0) constraint["coordinate"] = cert.constraint.coordinate;
  nlohmann::json out{{"relation", cert.relation}, {"constraint", constraint}};
  if (cert.relations.size() > 1) out["relations"] = cert.relations;
  return out;
}

/// Unknowns are f on the generators; f propagates along BFS edges by
/// f(xs) = f(x) + f(s) - h(x, s) with f(g^-1) = h(g, g^-1) - f(g), and each
/// edge landing on a known element yields a linear constraint. Split when the
/// constraints are solvable (free unknowns set to 0), NonSplit with a
/// certificate otherwise, Inconclusive when the size guard cut the ball short
/// before a contradiction appeared.
template <GroupModel G>
SplitVerdict<typename G::Element> certify_split(const Cocycle2<G>& h, const std::vector<typename G::Element>& gens,
                                                std::size_t radius, CoeffDomain domain,
                                                std::vector<std::string> names = {}) {
  using E = typename G::Element;
  if (!h.central()) throw Error(ErrorKind::UnsupportedAction, "certification supports central cocycles only");
  if (radius < 1) throw Error(ErrorKind::InvalidArgument, "radius must be >= 1");
  const auto& grp = h.group;
  const std::size_t m = gens.size();
  const std::size_t dims = h.coeffs.rank();
  if (domain == CoeffDomain::Rationals)
    for (const auto& mod : h.coeffs.moduli())
      if (mod != 0) throw Error(ErrorKind::InvalidArgument, "rational certification needs free coefficients");
  if (names.empty())
    for (std::size_t k = 0; k < m; ++k) names.push_back(grp.encode(gens[k]));

  // f on the letters: generator k is u_k, its inverse is h(g, g^-1) - u_k.
  std::vector<detail::Affine> letter_value;
  for (std::size_t k = 0; k < m; ++k) {
    detail::Affine a{std::vector<Integer>(m, Integer(0)), std::vector<Rational>(dims, Rational(0))};
    a.lambda[k] = 1;
    letter_value.push_back(a);
  }
  for (std::size_t k = 0; k < m; ++k) {
    detail::Affine a{std::vector<Integer>(m, Integer(0)), h(gens[k], grp.inverse(gens[k])).coords};
    a.lambda[k] = -1;
    letter_value.push_back(a);
  }

  std::vector<detail::Affine> value{{std::vector<Integer>(m, Integer(0)), std::vector<Rational>(dims, Rational(0))}};
  std::vector<Constraint> constraints;
  std::vector<std::pair<LetterWord, LetterWord>> sources;
  std::map<std::tuple<std::size_t, std::vector<Integer>, Integer>, bool> seen;
  const bool integral = domain == CoeffDomain::Integers;
  std::vector<E> letters = gens;
  for (const auto& g : gens) letters.push_back(grp.inverse(g));

  auto on_edge = [&](const CayleyBall<G>& ball, std::size_t xi, std::size_t l, const E& y,
                     std::optional<std::size_t> found) {
    (void)y;
    CoeffValue hv = h(ball.elements[xi], letters[l]);
    detail::Affine fy = value[xi];
    for (std::size_t k = 0; k < m; ++k) fy.lambda[k] += letter_value[l].lambda[k];
    for (std::size_t c = 0; c < dims; ++c) fy.constant[c] += letter_value[l].constant[c] - hv.coords[c];
    if (!found) {
      value.push_back(std::move(fy));
      return;
    }
    const auto& old = value[*found];
    for (std::size_t c = 0; c < dims; ++c) {
      // old = fy:  (fy.lambda - old.lambda) u = old.constant - fy.constant
      std::vector<Integer> coeffs(m);
      for (std::size_t k = 0; k < m; ++k) coeffs[k] = fy.lambda[k] - old.lambda[k];
      Rational rhs = old.constant[c] - fy.constant[c];
      Integer modulus = h.coeffs.moduli()[c];
      Integer scale = denominator_of(rhs);
      if (modulus != 0 && scale != 1) throw Error(ErrorKind::NotIntegral, "fractional value in a cyclic coefficient");
      for (auto& x : coeffs) x *= scale;
      Integer r = numerator_of(rhs);
      if (modulus != 0) r = floor_mod(r, modulus);
      bool all_zero = std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& x) { return x == 0; });
      if (all_zero && r == 0) continue;
      if (modulus == 0) {
        auto first = std::find_if(coeffs.begin(), coeffs.end(), [](const Integer& x) { return x != 0; });
        if (first != coeffs.end() && *first < 0) {
          for (auto& x : coeffs) x = -x;
          r = -r;
        }
      }
      auto key = std::make_tuple(c, coeffs, r);
      if (seen.count(key)) continue;
      seen[key] = true;
      LetterWord w = ball.words[xi];
      w.push_back(l);
      constraints.push_back({std::move(coeffs), r, modulus, c});
      sources.emplace_back(ball.words[*found], std::move(w));
    }
  };

  CayleyBall<G> ball = build_ball(grp, gens, radius, max_ball_size(), on_edge);

  SplitVerdict<E> verdict;
  verdict.ball_size = ball.size();
  verdict.constraint_count = constraints.size();

  auto certificate_from = [&](const std::vector<std::pair<std::size_t, Integer>>& rows, std::vector<Integer> coeffs,
                              Integer rhs, std::size_t coordinate, const Integer& modulus) {
    SplitCertificate cert;
    for (const auto& [row, mult] : rows) {
      (void)mult;
      cert.relations.push_back(letter_word_string(relation_word(sources[row].first, sources[row].second, m), names));
    }
    cert.relation = cert.relations.empty() ? "" : cert.relations.front();
    auto first = std::find_if(coeffs.begin(), coeffs.end(), [](const Integer& x) { return x != 0; });
    if (first != coeffs.end() && *first < 0) {
      for (auto& x : coeffs) x = -x;
      rhs = -rhs;
    }
    if (modulus != 0) rhs = floor_mod(rhs, modulus);
    cert.constraint = {std::move(coeffs), rhs, modulus, coordinate};
    return cert;
  };

  // Solve coordinate by coordinate; cyclic coordinates get slack columns.
  std::vector<std::vector<Rational>> solution(dims, std::vector<Rational>(m, Rational(0)));
  std::vector<bool> bound(m, false);
  for (std::size_t c = 0; c < dims; ++c) {
    const Integer modulus = h.coeffs.moduli()[c];
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < constraints.size(); ++i)
      if (constraints[i].coordinate == c) rows.push_back(i);
    IntMatrix a;
    std::vector<Integer> b;
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
      std::vector<Integer> row = constraints[rows[idx]].coeffs;
      if (modulus != 0)
        for (std::size_t s = 0; s < rows.size(); ++s) row.push_back(s == idx ? modulus : Integer(0));
      a.push_back(std::move(row));
      b.push_back(constraints[rows[idx]].rhs);
      for (std::size_t k = 0; k < m; ++k)
        if (constraints[rows[idx]].coeffs[k] != 0) bound[k] = true;
    }
    std::size_t unknowns = m + (modulus != 0 ? rows.size() : 0);
    LinearResult res = solve_linear(a, b, integral || modulus != 0, unknowns);
    if (!res.solution) {
      std::vector<std::pair<std::size_t, Integer>> global_rows;
      for (const auto& [r, mult] : res.certificate_rows) global_rows.emplace_back(rows[r], mult);
      std::vector<Integer> coeffs(res.certificate_coeffs.begin(), res.certificate_coeffs.begin() + m);
      verdict.kind = VerdictKind::NonSplit;
      verdict.certificate = certificate_from(global_rows, std::move(coeffs), res.certificate_rhs, c, modulus);
      return verdict;
    }
    for (std::size_t k = 0; k < m; ++k) solution[c][k] = (*res.solution)[k];
  }

  if (ball.truncated) {
    verdict.kind = VerdictKind::Inconclusive;
    verdict.note = "ball truncated at " + std::to_string(ball.size()) + " elements by COCYLAB_MAX_BALL";
    return verdict;
  }

  verdict.kind = VerdictKind::Split;
  for (std::size_t k = 0; k < m; ++k) {
    if (!bound[k]) verdict.free_unknowns.push_back(k);
    CoeffValue v{std::vector<Rational>(dims, Rational(0))};
    for (std::size_t c = 0; c < dims; ++c) v.coords[c] = solution[c][k];
    verdict.generator_values.push_back(v);
  }
  CoeffGroup target = integral ? h.coeffs : CoeffGroup::rationals(dims);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    CoeffValue v{std::vector<Rational>(dims, Rational(0))};
    for (std::size_t c = 0; c < dims; ++c) {
      Rational x = value[i].constant[c];
      for (std::size_t k = 0; k < m; ++k) x += Rational(value[i].lambda[k]) * solution[c][k];
      v.coords[c] = x;
    }
    verdict.assignment.push_back(target.reduce(v));
    verdict.elements.push_back(ball.elements[i]);
  }
  return verdict;
}

/// f(xy) = f(x) + f(y) - h(x, y) for every pair of ball elements whose
/// product lies in the ball.
template <GroupModel G>
AuditReport verify_split_on_ball(const Cocycle2<G>& h, const SplitVerdict<typename G::Element>& verdict) {
  AuditReport report;
  if (verdict.kind != VerdictKind::Split) return report;
  const auto& grp = h.group;
  CoeffGroup c = h.coeffs.rational() || verdict.assignment.empty() ? CoeffGroup::rationals(h.coeffs.rank())
                                                                   : h.coeffs;
  bool rational_values = false;
  for (const auto& v : verdict.assignment)
    for (const auto& x : v.coords) rational_values = rational_values || !is_integral(x);
  if (rational_values) c = CoeffGroup::rationals(h.coeffs.rank());
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < verdict.elements.size(); ++i) index.emplace(grp.key(verdict.elements[i]), i);
  for (std::size_t i = 0; i < verdict.elements.size(); ++i)
    for (std::size_t j = 0; j < verdict.elements.size(); ++j) {
      const auto& x = verdict.elements[i];
      const auto& y = verdict.elements[j];
      auto it = index.find(grp.key(grp.multiply(x, y)));
      if (it == index.end()) continue;
      ++report.checked;
      CoeffValue lhs = c.reduce(verdict.assignment[it->second]);
      CoeffValue rhs =
          c.sub(c.add(c.reduce(verdict.assignment[i]), c.reduce(verdict.assignment[j])), c.reduce(h.evaluator(x, y)));
      if (!(lhs == rhs)) report.record({"f(xy)=f(x)+f(y)-h(x,y)", elements_json(grp, {x, y}), to_json(lhs), to_json(rhs)});
    }
  return report;
}

/// Independent re-check of a NonSplit certificate: the relation word
/// multiplies to the identity and the constraint has no solution.
template <GroupModel G>
bool recheck_certificate(const Cocycle2<G>& h, const std::vector<typename G::Element>& gens,
                         const std::vector<std::string>& names, const SplitCertificate& cert, CoeffDomain domain) {
  if (constraint_unsolvable(cert.constraint, domain) == false) return false;
  const auto& grp = h.group;
  for (const auto& rel : cert.relations.empty() ? std::vector<std::string>{cert.relation} : cert.relations) {
    // Parse "name^k name ..." back into a product.
    auto x = grp.identity();
    std::size_t i = 0;
    while (i < rel.size()) {
      while (i < rel.size() && rel[i] == ' ') ++i;
      if (i >= rel.size()) break;
      std::size_t j = i;
      while (j < rel.size() && rel[j] != ' ' && rel[j] != '^') ++j;
      std::string name = rel.substr(i, j - i);
      long long exp = 1;
      if (j < rel.size() && rel[j] == '^') {
        std::size_t k = j + 1;
        while (k < rel.size() && rel[k] != ' ') ++k;
        exp = std::stoll(rel.substr(j + 1, k - j - 1));
        j = k;
      }
      if (name != "e") {
        auto pos = std::find(names.begin(), names.end(), name);
        if (pos == names.end()) return false;
        x = grp.multiply(x, power(grp, gens[static_cast<std::size_t>(pos - names.begin())], exp));
      }
      i = j;
    }
    if (!(x == grp.identity())) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Thick sets

/// Every n-subset of the sample contains i < j with g_i^-1 g_j in P. Caps:
/// 2 <= n <= 6, sample size <= 24. Checks P = P^-1 on the sampled quotients.
template <GroupModel G>
bool is_n_thick(const G& group, const std::vector<typename G::Element>& sample,
                const std::function<bool(const typename G::Element&)>& in_p, int n) {
  if (n < 2 || n > 6) throw Error(ErrorKind::CapExceeded, "n must lie in 2..6");
  if (sample.size() > 24) throw Error(ErrorKind::CapExceeded, "sample size must be <= 24");
  const std::size_t s = sample.size();
  std::vector<std::vector<bool>> adj(s, std::vector<bool>(s, false));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      if (i == j) continue;
      auto q = group.multiply(group.inverse(sample[i]), sample[j]);
      bool p = in_p(q);
      if (p && !in_p(group.inverse(q)))
        throw Error(ErrorKind::NotSymmetric, "P contains " + group.encode(q) + " but not its inverse");
      adj[i][j] = p;
    }
  // Search for n sample positions with no pair in P.
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t)> independent = [&](std::size_t start) {
    if (chosen.size() == static_cast<std::size_t>(n)) return true;
    for (std::size_t i = start; i < s; ++i) {
      bool ok = true;
      for (auto c : chosen) ok = ok && !adj[c][i] && !adj[i][c];
      if (!ok) continue;
      chosen.push_back(i);
      if (independent(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return !independent(0);
}

/// First (i, j), i < j, 1-based, with seq_i seq_j^-1 in P.
template <GroupModel G>
std::optional<std::pair<std::size_t, std::size_t>> thick_pair(
    const G& group, const std::vector<typename G::Element>& seq,
    const std::function<bool(const typename G::Element&)>& in_p) {
  if (seq.size() < 2) throw Error(ErrorKind::InvalidArgument, "sequence needs at least two elements");
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (in_p(group.multiply(seq[i], group.inverse(seq[j])))) return std::make_pair(i + 1, j + 1);
  return std::nullopt;
}

}  // namespace cocylab
