#include <gtest/gtest.h>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

namespace {

const MatZ kMinusI{-1, 0, 0, -1};

AsaiElement el(std::int64_t a, const MatZ& g) { return {CoeffValue{{Rational(a)}}, g}; }

}  // namespace

TEST(Extension, MultiplyExamples) {
  AsaiExt grp = asai_extension();
  EXPECT_EQ(grp.multiply(el(0, kS), el(0, kS)), el(1, kMinusI));
  EXPECT_EQ(grp.multiply(grp.multiply(el(0, kT), el(0, kU)), el(0, kT)), el(0, MatZ{0, 1, -1, 0}));
  EXPECT_EQ(grp.multiply(el(2, MatZ::identity()), el(3, kT)), el(5, kT));
  EXPECT_EQ(grp.to_json_value(el(1, kMinusI)), nlohmann::json::parse(R"({"a":[1],"g":"S^2"})"));
}

TEST(Extension, InverseExamples) {
  AsaiExt grp = asai_extension();
  EXPECT_EQ(grp.inverse(el(0, kS)), el(0, power(SL2Z{}, kS, 3)));
  EXPECT_EQ(grp.inverse(el(1, kMinusI)), el(0, kMinusI));
  EXPECT_EQ(ext_inv(grp, grp.identity()), grp.identity());
}

TEST(Extension, GroupAxioms) {
  AuditReport r = ext_group_axioms(asai_extension(), 10000, 0);
  EXPECT_TRUE(r.clean()) << to_json(r).dump();
  EXPECT_EQ(r.checked, 10000u);
  auto q = extension(quasichar_cocycle(QuasiChar::f(parse_free_word("a1^2", 2))));
  EXPECT_TRUE(ext_group_axioms(q, 2000, 1).clean());
  EXPECT_TRUE(ext_group_axioms(extension(induce_quotient(asai_cocycle(), {12})), 2000, 2).clean());
}

TEST(Extension, NonCocycleBreaksAssociativity) {
  Cocycle2<SL2Z> bad{"upper-left sign", SL2Z{}, CoeffGroup::integers(),
                     [](const MatZ& x, const MatZ& y) {
                       if (x == MatZ::identity() || y == MatZ::identity()) return CoeffValue{{Rational(0)}};
                       return CoeffValue{{Rational(x.a > 0 ? 1 : 0)}};
                     },
                     {},
                     std::nullopt};
  AuditReport r = ext_group_axioms(ExtGroup<SL2Z>{bad}, 2000, 3);
  ASSERT_FALSE(r.clean());
  EXPECT_EQ(r.violations.front().relation, "associativity");
}

TEST(Extension, EquivalentToTrivial) {
  auto h1 = asai_cocycle();
  auto h2 = zero_cocycle(SL2Z{}, CoeffGroup::rationals());
  std::function<CoeffValue(const MatZ&)> f = [](const MatZ& m) { return CoeffValue{{asai_split_f(m)}}; };
  auto r = equivalence_check(h1, h2, f, 10000, 0);
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(r.checked, 10000u);
  EXPECT_TRUE(phi_homomorphism_check(h1, h2, f, 5000, 1).equivalent);

  std::function<CoeffValue(const MatZ&)> zero = [](const MatZ&) { return CoeffValue{{Rational(0)}}; };
  auto bad = equivalence_check(h1, h2, zero, 10000, 0);
  ASSERT_FALSE(bad.equivalent);
  ASSERT_TRUE(bad.witness);
  EXPECT_NE(asai_h(bad.witness->first, bad.witness->second), 0);
  EXPECT_FALSE(phi_homomorphism_check(h1, h2, zero, 10000, 0).equivalent);
}

TEST(Extension, BraidDiscrepancy) {
  for (int k1 = -2; k1 <= 2; ++k1)
    for (int k2 = -2; k2 <= 2; ++k2) EXPECT_EQ(braid_discrepancy(k1, k2), k1 - k2);
}

TEST(Extension, FullTwistIsCentral) {
  AsaiExt grp = asai_extension();
  EXPECT_EQ(full_twist_center(0, 0), el(-1, MatZ::identity()));
  EXPECT_EQ(full_twist_center(1, 0), el(5, MatZ::identity()));
  for (int k = -3; k <= 3; ++k) {
    auto [s1, s2] = braid_lifts(k, k);
    AsaiElement z = full_twist_center(k, k);
    EXPECT_EQ(z, el(12 * k - 1, MatZ::identity()));
    EXPECT_EQ(grp.multiply(z, s1), grp.multiply(s1, z));
    EXPECT_EQ(grp.multiply(z, s2), grp.multiply(s2, z));
  }
}

TEST(Extension, LiftsReachTheBase) {
  AsaiExt grp = asai_extension();
  auto [s1, s2] = braid_lifts(0, 0);
  AsaiElement tut = grp.multiply(grp.multiply(s1, s2), s1);
  EXPECT_EQ(grp.inverse(tut).g, kS);
  EXPECT_EQ(s1.g, kT);
}

TEST(Extension, KernelFiberOnBalls) {
  AsaiExt grp = asai_extension();
  auto [s1, s2] = braid_lifts(0, 0);
  auto fiber = [&](std::size_t radius) {
    auto ball = cayley_ball(grp, {s1, s2}, radius);
    std::set<Rational> out;
    for (const auto& x : ball.elements)
      if (x.g == MatZ::identity()) out.insert(x.a.coords[0]);
    return out;
  };
  EXPECT_EQ(fiber(10), (std::set<Rational>{0}));
  EXPECT_EQ(fiber(12), (std::set<Rational>{-1, 0, 1}));
}

TEST(Extension, InducedModSplitWitness) {
  for (int n : {2, 3, 12}) {
    AuditReport r = induced_mod_split_witness(n, 2000, static_cast<std::uint64_t>(n));
    EXPECT_TRUE(r.clean()) << n << " " << to_json(r).dump();
    EXPECT_EQ(r.checked, 2000u);
  }
  EXPECT_THROW(induced_mod_split_witness(1, 10), Error);
}
