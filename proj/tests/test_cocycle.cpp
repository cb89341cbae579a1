#include <gtest/gtest.h>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

namespace {

Rational value(const CoeffValue& v) { return v.coords.at(0); }

// f(M) = b + c(a - 1), vanishing at I.
CoeffValue toy_f(const MatZ& m) { return CoeffValue{{Rational(m.b + m.c * (m.a - 1))}}; }

}  // namespace

TEST(Cocycle, AsaiPassesIdentity) {
  AuditReport r = verify_identity(asai_cocycle(), 10000, 0);
  EXPECT_TRUE(r.clean()) << to_json(r).dump();
  EXPECT_EQ(r.checked, 10000u);
  EXPECT_TRUE(central_symmetry_check(asai_cocycle(), 10000, 1).clean());
}

TEST(Cocycle, CoboundariesPassIdentity) {
  auto h = coboundary<SL2Z>("delta toy", SL2Z{}, CoeffGroup::integers(), toy_f);
  EXPECT_TRUE(verify_identity(h, 10000, 2).clean());
  auto z = coboundary<SL2Z>("zero", SL2Z{}, CoeffGroup::integers(), [](const MatZ&) { return CoeffValue{{0}}; });
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 200, 0)) EXPECT_EQ(value(z(x, y)), 0);
  EXPECT_THROW(coboundary<SL2Z>("bad", SL2Z{}, CoeffGroup::integers(),
                                [](const MatZ&) { return CoeffValue{{Rational(1)}}; }),
               Error);
}

TEST(Cocycle, ConstantMapFailsNormalization) {
  Cocycle2<SL2Z> one{"one", SL2Z{}, CoeffGroup::integers(),
                     [](const MatZ&, const MatZ&) { return CoeffValue{{Rational(1)}}; }, {}, std::nullopt};
  AuditReport r = verify_identity(one, {{MatZ::identity(), MatZ::identity(), MatZ::identity()}});
  ASSERT_FALSE(r.clean());
  EXPECT_EQ(r.violations.front().relation, "normalization");
  EXPECT_EQ(r.violations.front().inputs, (nlohmann::json{"I", "I"}));
}

TEST(Cocycle, QuasiCharCoboundaryImage) {
  auto h = quasichar_cocycle(QuasiChar::f(parse_free_word("a1^2", 2)));
  std::set<Rational> seen;
  for (const auto& [x, y] : sample_pairs(h.group, 10000, 3)) seen.insert(value(h(x, y)));
  EXPECT_EQ(seen, (std::set<Rational>{-1, 0, 1}));
  EXPECT_TRUE(verify_identity(h, 2000, 3).clean());
  EXPECT_EQ(*h.image_bound, 6);
}

TEST(Cocycle, AsaiSplitCoboundaryEqualsAsai) {
  auto h = asai_cocycle();
  auto d = asai_split_coboundary();
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 1000, 4)) ASSERT_EQ(value(d(x, y)), value(h(x, y)));
}

TEST(Cocycle, InduceQuotient) {
  auto h = asai_cocycle();
  auto h2 = induce_quotient(h, {2});
  auto h0 = induce_quotient(h, {0});
  auto h12 = induce_quotient(h, {12});
  int minus_ones = 0;
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 3000, 5)) {
    Rational v = value(h(x, y));
    EXPECT_EQ(value(h0(x, y)), v);
    EXPECT_EQ(value(h2(x, y)), v == 0 ? 0 : 1);
    EXPECT_EQ(value(h12(x, y)), v < 0 ? 11 : v);
    minus_ones += v == -1;
  }
  EXPECT_GT(minus_ones, 0);
  EXPECT_TRUE(verify_identity(h12, 2000, 6).clean());
  EXPECT_EQ(h12.coeffs, CoeffGroup::cyclic(12));
  EXPECT_THROW(induce_quotient(h2, {3}), Error);
  EXPECT_NO_THROW(induce_quotient(h12, {4}));
  EXPECT_THROW(induce_quotient(asai_split_coboundary(), {2}), Error);
}

TEST(Cocycle, InduceQuotientBySubgroup) {
  auto base = asai_cocycle();
  Cocycle2<SL2Z> doubled{"asai twice", SL2Z{}, CoeffGroup::integers(2),
                         [base](const MatZ& x, const MatZ& y) {
                           Rational v = value(base(x, y));
                           return CoeffValue{{v, v}};
                         },
                         {},
                         std::nullopt};
  auto q = induce_quotient_by_subgroup(doubled, {{1}, {-1}});
  EXPECT_EQ(q.coeffs.rank(), 1u);
  EXPECT_EQ(q.coeffs.moduli()[0], 0);
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 1000, 7)) {
    Rational v = value(base(x, y));
    Rational w = value(q(x, y));
    EXPECT_EQ(w * w, 4 * v * v);
  }
  EXPECT_TRUE(verify_identity(q, 1000, 8).clean());
  // Z^2 / <(2, 0), (0, 3)> = Z/6.
  auto c = induce_quotient_by_subgroup(doubled, {{2, 0}, {0, 3}});
  EXPECT_EQ(c.coeffs, CoeffGroup::cyclic(6));
  EXPECT_TRUE(verify_identity(c, 1000, 9).clean());
}

TEST(Cocycle, Pullbacks) {
  auto h = asai_cocycle();
  Homomorphism<SL2Z, SL2Z> id{SL2Z{}, SL2Z{}, [](const MatZ& m) { return m; }, {}};
  auto same = pullback(h, id);
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 500, 10)) EXPECT_EQ(same(x, y), h(x, y));

  using ZxSL2 = ProductGroup<IntegerGroup, SL2Z>;
  Homomorphism<ZxSL2, SL2Z> proj{ZxSL2{}, SL2Z{}, [](const ZxSL2::Element& x) { return x.second; }, {}};
  auto hp = pullback(h, proj);
  for (const auto& [x, y] : sample_pairs(ZxSL2{}, 1000, 11)) {
    ZxSL2::Element x0{Integer(0), x.second}, y0{Integer(7), y.second};
    EXPECT_EQ(hp(x, y), hp(x0, y0));
    EXPECT_EQ(hp(x, y), h(x.second, y.second));
  }
  EXPECT_TRUE(verify_identity(hp, 2000, 12).clean());

  auto hom = free_homomorphism(2, SL2Z{}, {kT, kS});
  auto d = coboundary<SL2Z>("delta toy", SL2Z{}, CoeffGroup::integers(), toy_f);
  auto pulled = pullback(d, hom);
  auto direct = coboundary<FreeGroup>("delta toy o hom", FreeGroup{2}, CoeffGroup::integers(),
                                      [hom](const FreeWord& w) { return toy_f(hom(w)); });
  for (const auto& [x, y] : sample_pairs(FreeGroup{2}, 1000, 13)) ASSERT_EQ(pulled(x, y), direct(x, y));
}

TEST(Cocycle, HomomorphismRelators) {
  auto good = free_homomorphism(1, SL2Z{}, {kS});
  good.relators = {parse_free_word("a1^4", 1)};
  EXPECT_NO_THROW(good.check());
  auto bad = free_homomorphism(1, SL2Z{}, {kT});
  bad.relators = {parse_free_word("a1^4", 1)};
  try {
    pullback(asai_cocycle(), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHomomorphism);
  }
}

TEST(Cocycle, MatsumotoPassesIdentity) {
  auto h = matsumoto_cocycle(ordered_symbol());
  EXPECT_TRUE(verify_identity(h, 10000, 0).clean());
  EXPECT_EQ(value(h(to_rational(kS), to_rational(kS))), 1);
}

TEST(Cocycle, NonCentralIdentity) {
  // Z acting on Z^2 by (1 1; 0 1)^k, f(k) = (k^2, k): delta f = (-xy, 0).
  auto act = [](const Integer& k) { return IntMatrix{{1, k}, {0, 1}}; };
  auto h = coboundary<IntegerGroup>(
      "twisted", IntegerGroup{}, CoeffGroup::integers(2),
      [](const Integer& k) { return CoeffValue{{Rational(k * k), Rational(k)}}; }, act);
  EXPECT_FALSE(h.central());
  EXPECT_TRUE(verify_identity(h, 2000, 1).clean());
  EXPECT_EQ(h(Integer(2), Integer(3)), (CoeffValue{{Rational(-6), Rational(0)}}));
}
