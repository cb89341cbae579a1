#include <gtest/gtest.h>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

TEST(Steinberg, OrderedSymbolIsClean) {
  SymbolUnderTest c = ordered_symbol_under_test();
  AuditReport core = audit_core(c, 10000, 0);
  EXPECT_TRUE(core.clean()) << to_json(core).dump();
  EXPECT_GT(core.checked, 30000u);
  AuditReport derived = audit_derived(c, 10000, 1);
  EXPECT_TRUE(derived.clean()) << to_json(derived).dump();
}

TEST(Steinberg, TrivialSymbolIsClean) {
  EXPECT_TRUE(audit_core(trivial_symbol(), 1000, 2).clean());
  EXPECT_TRUE(audit_derived(trivial_symbol(), 1000, 3).clean());
  EXPECT_TRUE(squares_check(trivial_symbol(), 4, 200, 4).clean());
}

TEST(Steinberg, XorSymbolIsCaught) {
  SymbolUnderTest c = xor_sign_symbol();
  AuditReport r = audit_core(c, 1000, 0);
  ASSERT_FALSE(r.clean());
  // Each recorded violation re-evaluates to a genuine difference.
  for (const auto& v : r.violations) EXPECT_NE(v.lhs, v.rhs);
  EXPECT_FALSE(audit_derived(c, 1000, 0).clean());
}

TEST(Steinberg, OrderedSymbolExamples) {
  SymbolUnderTest c = ordered_symbol_under_test();
  EXPECT_EQ(c(-1, -1), (CoeffValue{{Rational(1)}}));
  EXPECT_EQ(c(-2, -3), c(-3, -2));
  EXPECT_EQ(c(Rational(-1, 2), 7), c.coeffs.zero());
  EXPECT_THROW(c(0, -1), Error);
}

TEST(Steinberg, SumsOfSquares) {
  SymbolUnderTest c = ordered_symbol_under_test();
  for (int terms = 1; terms <= 4; ++terms) {
    AuditReport r = squares_check(c, terms, 500, static_cast<std::uint64_t>(terms));
    EXPECT_TRUE(r.clean()) << terms;
    EXPECT_GT(r.checked, 0u);
  }
}

TEST(Steinberg, NotBimultiplicative) {
  auto p = bimultiplicativity_probe(ordered_symbol_under_test());
  EXPECT_EQ(p.lhs, (CoeffValue{{Rational(0)}}));
  EXPECT_EQ(p.rhs, (CoeffValue{{Rational(2)}}));
  EXPECT_TRUE(p.differs());
  EXPECT_FALSE(bimultiplicativity_probe(trivial_symbol()).differs());
}
