#include <gtest/gtest.h>

#include <cstdlib>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

namespace {

std::function<bool(const Integer&)> parity(int r) {
  return [r](const Integer& x) { return floor_mod(x, Integer(2)) == r; };
}

std::vector<Integer> range(int lo, int hi) {
  std::vector<Integer> out;
  for (int i = lo; i <= hi; ++i) out.push_back(i);
  return out;
}

}  // namespace

TEST(SplitCert, BallSizes) {
  EXPECT_EQ(cayley_ball(SL2Z{}, {kS, kT}, 0).size(), 1u);
  EXPECT_EQ(cayley_ball(SL2Z{}, {kS}, 4).size(), 4u);
  FreeGroup f{2};
  EXPECT_EQ(cayley_ball(f, f.generators(), 2).size(), 17u);
  EXPECT_EQ(cayley_ball(f, f.generators(), 3).size(), 53u);
  EXPECT_EQ(cayley_ball(IntegerGroup{}, {Integer(1)}, 5).size(), 11u);
}

TEST(SplitCert, AsaiIsNotSplitOverIntegers) {
  auto h = asai_cocycle();
  auto v = certify_split(h, {kS, kT}, 4, CoeffDomain::Integers, {"S", "T"});
  ASSERT_EQ(v.kind, VerdictKind::NonSplit);
  ASSERT_TRUE(v.certificate);
  EXPECT_EQ(v.certificate->relation, "S^4");
  EXPECT_EQ(to_json(*v.certificate)["constraint"], nlohmann::json::parse(R"({"coeffs":[4,0],"rhs":1})"));
  EXPECT_TRUE(recheck_certificate(h, {kS, kT}, {"S", "T"}, *v.certificate, CoeffDomain::Integers));
  EXPECT_FALSE(recheck_certificate(h, {kS, kT}, {"S", "T"}, *v.certificate, CoeffDomain::Rationals));
}

TEST(SplitCert, AsaiSplitsOverRationals) {
  auto h = asai_cocycle();
  auto v = certify_split(h, {kS, kT}, 6, CoeffDomain::Rationals, {"S", "T"});
  ASSERT_EQ(v.kind, VerdictKind::Split) << v.note;
  ASSERT_EQ(v.generator_values.size(), 2u);
  EXPECT_EQ(v.generator_values[0].coords[0], Rational(1, 4));
  EXPECT_EQ(v.generator_values[1].coords[0], Rational(-1, 12));
  EXPECT_TRUE(v.free_unknowns.empty());
  ASSERT_EQ(v.elements.size(), v.assignment.size());
  for (std::size_t i = 0; i < v.elements.size(); ++i)
    ASSERT_EQ(v.assignment[i].coords[0], asai_split_f(v.elements[i]));
  AuditReport r = verify_split_on_ball(h, v);
  EXPECT_TRUE(r.clean());
  EXPECT_GT(r.checked, v.ball_size);
}

TEST(SplitCert, CoboundaryOnFreeGroupSplits) {
  auto h = quasichar_cocycle(QuasiChar::f(parse_free_word("a1^2", 2)));
  FreeGroup f{2};
  std::vector<Word> gens;
  for (const auto& g : f.generators()) gens.push_back(Word(g));
  auto v = certify_split(h, gens, 3, CoeffDomain::Integers);
  ASSERT_EQ(v.kind, VerdictKind::Split) << v.note;
  EXPECT_EQ(v.ball_size, 53u);
  AuditReport r = verify_split_on_ball(h, v);
  EXPECT_TRUE(r.clean()) << to_json(r).dump();
  EXPECT_GT(r.checked, 0u);
}

TEST(SplitCert, SizeGuardGivesInconclusive) {
  ::setenv("COCYLAB_MAX_BALL", "40", 1);
  auto v = certify_split(asai_cocycle(), {kS, kT}, 8, CoeffDomain::Rationals);
  EXPECT_THROW(cayley_ball(SL2Z{}, {kS, kT}, 8), Error);
  ::unsetenv("COCYLAB_MAX_BALL");
  EXPECT_EQ(v.kind, VerdictKind::Inconclusive);
  EXPECT_FALSE(v.note.empty());
}

TEST(SplitCert, ThickFixtures) {
  IntegerGroup z;
  auto all = [](const Integer&) { return true; };
  EXPECT_TRUE(is_n_thick(z, range(0, 9), all, 2));
  // Pigeonhole: among three integers two share a parity.
  EXPECT_TRUE(is_n_thick(z, range(0, 9), parity(0), 3));
  EXPECT_FALSE(is_n_thick(z, range(0, 9), parity(0), 2));
  EXPECT_FALSE(is_n_thick(z, {0, 2, 4, 6}, parity(1), 4));
  EXPECT_TRUE(is_n_thick(z, {0, 1, 2}, parity(1), 3));
}

TEST(SplitCert, ThickGuards) {
  IntegerGroup z;
  auto positive = [](const Integer& x) { return x > 0; };
  EXPECT_THROW(is_n_thick(z, range(0, 3), positive, 2), Error);
  EXPECT_THROW(is_n_thick(z, range(0, 3), parity(0), 7), Error);
  EXPECT_THROW(is_n_thick(z, range(0, 3), parity(0), 1), Error);
  EXPECT_THROW(is_n_thick(z, range(0, 24), parity(0), 2), Error);
  EXPECT_NO_THROW(is_n_thick(z, range(0, 23), parity(0), 2));
}

TEST(SplitCert, ThickPairs) {
  IntegerGroup z;
  auto p = thick_pair(z, {Integer(5), Integer(5), Integer(5)}, parity(0));
  ASSERT_TRUE(p);
  EXPECT_EQ(*p, std::make_pair(std::size_t{1}, std::size_t{2}));
  auto q = thick_pair(z, {Integer(0), Integer(1), Integer(3)}, parity(0));
  ASSERT_TRUE(q);
  EXPECT_EQ(*q, std::make_pair(std::size_t{2}, std::size_t{3}));
  EXPECT_FALSE(thick_pair(z, {Integer(0), Integer(1)}, parity(0)));
  EXPECT_THROW(thick_pair(z, {Integer(0)}, parity(0)), Error);
}

TEST(SplitCert, ThickPairOnWitnesses) {
  QuasiChar f = QuasiChar::f(parse_free_word("a1^2", 2));
  std::vector<Word> seq;
  for (int i = 1; i <= 6; ++i) seq.push_back(Word(witness_b_free(i)));
  std::function<bool(const Word&)> in_p = [&f](const Word& g) { return f(g) == 1 || f(g) == -1; };
  auto p = thick_pair(WordGroup{seq.front()}, seq, in_p);
  ASSERT_TRUE(p);
  Word g = multiply(seq[p->first - 1], invert(seq[p->second - 1]));
  EXPECT_EQ(f(g), 1);
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j)
      EXPECT_EQ(f(multiply(Word(witness_b_free(i)), invert(Word(witness_b_free(j))))), 1) << i << "," << j;
}

TEST(SplitCert, CommutatorSubgroupVerdictIsRecorded) {
  // [SL2(Z), SL2(Z)] is free on these two matrices.
  std::vector<MatZ> gens{MatZ{2, 1, 1, 1}, MatZ{1, 1, 1, 2}};
  auto h = asai_cocycle();
  auto v = certify_split(h, gens, 4, CoeffDomain::Integers, {"A", "B"});
  RecordProperty("verdict", to_string(v.kind));
  RecordProperty("ball_size", static_cast<int>(v.ball_size));
  if (v.kind == VerdictKind::NonSplit) {
    ASSERT_TRUE(v.certificate);
    EXPECT_TRUE(recheck_certificate(h, gens, {"A", "B"}, *v.certificate, CoeffDomain::Integers));
  }
  if (v.kind == VerdictKind::Split) EXPECT_TRUE(verify_split_on_ball(h, v).clean());
}
