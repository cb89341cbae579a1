#pragma once

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cocylab/arith.hpp"

namespace cocylab {

/// A group model: a value type describing one concrete group (a free group of
/// given rank, SL2(Z), an extension, ...) whose elements are plain values.
/// `key` must be canonical: two elements are equal iff their keys are equal.
template <class G>
concept GroupModel = requires(const G& group, const typename G::Element& x, Rng& rng) {
  typename G::Element;
  { group.identity() } -> std::convertible_to<typename G::Element>;
  { group.multiply(x, x) } -> std::convertible_to<typename G::Element>;
  { group.inverse(x) } -> std::convertible_to<typename G::Element>;
  { group.contains(x) } -> std::convertible_to<bool>;
  { group.key(x) } -> std::convertible_to<std::string>;
  { group.encode(x) } -> std::convertible_to<std::string>;
  { group.random_element(rng) } -> std::convertible_to<typename G::Element>;
  { group.generators() } -> std::convertible_to<std::vector<typename G::Element>>;
  { x == x } -> std::convertible_to<bool>;
};

template <GroupModel G>
typename G::Element power(const G& group, const typename G::Element& x, std::int64_t n) {
  typename G::Element base = n < 0 ? group.inverse(x) : x;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  typename G::Element acc = group.identity();
  while (e > 0) {
    if (e & 1) acc = group.multiply(acc, base);
    e >>= 1;
    if (e > 0) base = group.multiply(base, base);
  }
  return acc;
}

template <GroupModel G>
typename G::Element commutator(const G& group, const typename G::Element& x, const typename G::Element& y) {
  return group.multiply(group.multiply(group.inverse(x), group.inverse(y)), group.multiply(x, y));
}

/// Generators followed by their inverses, the identity first.
template <GroupModel G>
std::vector<typename G::Element> small_elements(const G& group) {
  std::vector<typename G::Element> out{group.identity()};
  for (const auto& g : group.generators()) out.push_back(g);
  for (const auto& g : group.generators()) out.push_back(group.inverse(g));
  return out;
}

/// Deterministic pair sample: all pairs of generators/inverses (identity
/// included) first, then seeded random pairs, `count` pairs in total.
template <GroupModel G>
std::vector<std::pair<typename G::Element, typename G::Element>> sample_pairs(const G& group, std::size_t count,
                                                                              std::uint64_t seed) {
  std::vector<std::pair<typename G::Element, typename G::Element>> out;
  auto small = small_elements(group);
  for (const auto& x : small)
    for (const auto& y : small)
      if (out.size() < count) out.emplace_back(x, y);
  Rng rng(seed);
  while (out.size() < count) {
    auto x = group.random_element(rng);
    auto y = group.random_element(rng);
    out.emplace_back(std::move(x), std::move(y));
  }
  return out;
}

template <class E>
struct Triple {
  E first, second, third;
};

template <GroupModel G>
std::vector<Triple<typename G::Element>> sample_triples(const G& group, std::size_t count, std::uint64_t seed) {
  std::vector<Triple<typename G::Element>> out;
  auto small = small_elements(group);
  if (small.size() > 5) small.resize(5);
  for (const auto& x : small)
    for (const auto& y : small)
      for (const auto& z : small)
        if (out.size() < count) out.push_back({x, y, z});
  Rng rng(seed);
  while (out.size() < count) {
    auto x = group.random_element(rng);
    auto y = group.random_element(rng);
    auto z = group.random_element(rng);
    out.push_back({std::move(x), std::move(y), std::move(z)});
  }
  return out;
}

/// (Z, +).
struct IntegerGroup {
  using Element = Integer;

  std::int64_t sample_bound = 50;

  Element identity() const { return 0; }
  Element multiply(const Element& x, const Element& y) const { return x + y; }
  Element inverse(const Element& x) const { return -x; }
  bool contains(const Element&) const { return true; }
  std::string key(const Element& x) const { return x.str(); }
  std::string encode(const Element& x) const { return x.str(); }
  Element random_element(Rng& rng) const { return rng.uniform(-sample_bound, sample_bound); }
  std::vector<Element> generators() const { return {Integer(1)}; }
};

/// Direct product K x G with componentwise multiplication.
template <GroupModel K, GroupModel G>
struct ProductGroup {
  using Element = std::pair<typename K::Element, typename G::Element>;

  K left;
  G right;

  Element identity() const { return {left.identity(), right.identity()}; }
  Element multiply(const Element& x, const Element& y) const {
    return {left.multiply(x.first, y.first), right.multiply(x.second, y.second)};
  }
  Element inverse(const Element& x) const { return {left.inverse(x.first), right.inverse(x.second)}; }
  bool contains(const Element& x) const { return left.contains(x.first) && right.contains(x.second); }
  std::string key(const Element& x) const { return "(" + left.key(x.first) + ";" + right.key(x.second) + ")"; }
  std::string encode(const Element& x) const {
    return "(" + left.encode(x.first) + ", " + right.encode(x.second) + ")";
  }
  Element random_element(Rng& rng) const {
    auto a = left.random_element(rng);
    auto b = right.random_element(rng);
    return {std::move(a), std::move(b)};
  }
  std::vector<Element> generators() const {
    std::vector<Element> out;
    for (const auto& k : left.generators()) out.emplace_back(k, right.identity());
    for (const auto& g : right.generators()) out.emplace_back(left.identity(), g);
    return out;
  }
};

}  // namespace cocylab
