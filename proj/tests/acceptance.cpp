// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "cocylab/cocylab.hpp"

using namespace cocylab;

namespace {

struct Criterion {
  int id;
  std::string title;
  std::function<bool(std::string&)> check;
};

Rational value(const CoeffValue& v) { return v.coords.at(0); }

MatZ mpow(const MatZ& m, std::int64_t k) { return power(SL2Z{}, m, k); }

bool asai_validity(std::string& why) {
  AuditReport r = verify_identity(asai_cocycle(), 10000, 0);
  if (!r.clean() || r.checked != 10000) {
    why = to_json(r).dump();
    return false;
  }
  auto ball = cayley_ball(SL2Z{}, {kS, kT}, 6);
  std::set<int> image;
  for (const auto& x : ball.elements)
    for (const auto& y : ball.elements) image.insert(asai_h(x, y));
  for (int v : image)
    if (v < -1 || v > 1) {
      why = "image value " + std::to_string(v);
      return false;
    }
  ImageReport q = coboundary_image(QuasiChar::f(parse_free_word("a1^2", 2)), 10000, 0);
  if (q.values != std::set<std::int64_t>{-1, 0, 1}) {
    why = "free-group coboundary image " + to_json(q).dump();
    return false;
  }
  why = "ball " + std::to_string(ball.size());
  return true;
}

bool splitting_function(std::string& why) {
  for (const auto& [x, y] : sample_pairs(SL2Z{}, 10000, 1))
    if (asai_split_f(x) + asai_split_f(y) - asai_split_f(MatZ(x * y)) != asai_h(x, y)) {
      why = "delta f != h at " + encode(x) + ", " + encode(y);
      return false;
    }
  if (asai_base().f_s != Rational(1, 4) || asai_split_f(kS) != Rational(1, 4)) {
    why = "f(S) = " + format_rational(asai_split_f(kS));
    return false;
  }
  SL2Z g;
  Rng rng(2);
  for (int t = 0; t < 1000; ++t) {
    MatZ m = g.random_element(rng);
    if (!is_integral(12 * asai_split_f(m))) {
      why = "12 f not integral at " + encode(m);
      return false;
    }
    MatZ c = commutator(g, g.random_element(rng), g.random_element(rng)) *
             commutator(g, g.random_element(rng), g.random_element(rng));
    if (!is_integral(asai_split_f(c))) {
      why = "f not integral on commutator product " + encode(c);
      return false;
    }
  }
  return true;
}

bool lemma_suite(std::string& why) {
  int count = 0;
  for (int ai = -3; ai <= 3; ++ai)
    for (int di = -3; di <= 3; ++di)
      for (int sa = 2; sa <= 5; ++sa)
        for (int sd = 2; sd <= 5; ++sd) {
          MatZ m = lemma_matrix(ai, di, ai + sa, di + sd);
          ++count;
          if (m.det() != 1 || asai_h(m, m) != 1 || m.c <= 0 || m.trace() >= 0) {
            why = "fails at " + encode(m);
            return false;
          }
        }
  MatZ m = lemma_matrix(0, 0, 2, 2);
  for (int n = 1; n <= 5; ++n)
    if (mpow(m, std::int64_t(1) << n).c >= 0) {
      why = "c(M^2^" + std::to_string(n) + ") >= 0";
      return false;
    }
  why = std::to_string(count) + " matrices";
  return true;
}

bool power_induction(std::string& why) {
  MatZ m = lemma_matrix(0, 0, 2, 2);
  Rational f = asai_split_f(m);
  for (int n = 1; n <= 16; ++n) {
    if (asai_split_f(mpow(m, 2 * n)) != 2 * n * f - n ||
        asai_split_f(mpow(m, 2 * n - 1)) != (2 * n - 1) * f - (n - 1)) {
      why = "n = " + std::to_string(n);
      return false;
    }
  }
  why = "f(M) = " + format_rational(f);
  return true;
}

bool quasi_characters(std::string& why) {
  QuasiChar f = QuasiChar::f(parse_free_word("a1^2", 2));
  QuasiChar fab = QuasiChar::f(parse_fp_word("A1 B1", 4, 4));
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) {
      Word g1 = witness_element(WitnessFamily::F1Free, i, j);
      Word g2 = witness_element(WitnessFamily::F2Fp, i, j);
      for (int n = -8; n <= 8; ++n) {
        if (f(word_power(g1, n)) != n || fab(word_power(g2, n)) != 2 * n) {
          why = "power claim at " + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(n);
          return false;
        }
      }
    }
  ImageReport r = coboundary_image(f, 10000, 0);
  for (auto v : r.values)
    if (v < -1 || v > 1) {
      why = "image " + to_json(r).dump();
      return false;
    }
  std::vector<QuasiChar> kinds{f, QuasiChar::e(parse_free_word("a1 a2^-1", 2)), fab,
                               QuasiChar::e(parse_fp_word("A1 B2", 4, 4))};
  for (const auto& q : kinds) {
    WordGroup g = group_of(q);
    Rng rng(10);
    for (int t = 0; t < 10000; ++t) {
      Word x = g.random_element(rng);
      if (q(invert(x)) != -q(x)) {
        why = "antisymmetry " + q.describe() + " at " + to_string(x);
        return false;
      }
    }
  }
  return true;
}

bool pseudo_character(std::string& why) {
  std::vector<QuasiChar> patterns{QuasiChar::e(parse_free_word("a1 a2", 2)),
                                  QuasiChar::e(parse_free_word("a1^2 a2^-1", 2)),
                                  QuasiChar::e(parse_fp_word("A1 B2", 4, 4))};
  for (const auto& q : patterns) {
    WordGroup g = group_of(q);
    Rng rng(20);
    for (int t = 0; t < 100; ++t) {
      Word x = g.random_element(rng);
      if (!pseudo_power_check(q, x, 6)) {
        why = q.describe() + " at " + to_string(x);
        return false;
      }
    }
  }
  return true;
}

bool steinberg(std::string& why) {
  SymbolUnderTest c = ordered_symbol_under_test();
  AuditReport core = audit_core(c, 10000, 0);
  AuditReport derived = audit_derived(c, 10000, 0);
  if (!core.clean() || !derived.clean()) {
    why = "ordered symbol: " + to_json(core).dump() + to_json(derived).dump();
    return false;
  }
  for (int terms = 1; terms <= 4; ++terms)
    if (!squares_check(c, terms, 1000, 0).clean()) {
      why = "squares with " + std::to_string(terms) + " terms";
      return false;
    }
  SymbolUnderTest decoy = xor_sign_symbol();
  AuditReport x = audit_core(decoy, 1000, 0);
  if (x.clean()) {
    why = "xor decoy passed";
    return false;
  }
  const auto& v = x.violations.front();
  if (v.lhs == v.rhs) {
    why = "xor violation does not re-verify";
    return false;
  }
  if (value(c(-1, -1)) != 1) {
    why = "c'(-1,-1) != 1";
    return false;
  }
  why = std::to_string(x.violation_count) + " decoy violations";
  return true;
}

bool matsumoto(std::string& why) {
  AuditReport r = verify_identity(matsumoto_cocycle(ordered_symbol()), 10000, 0);
  if (!r.clean() || r.checked != 10000) {
    why = to_json(r).dump();
    return false;
  }
  Rational hs = value(matsumoto_H(kS, kS, ordered_symbol()));
  if (hs != 1 || hs != asai_h(kS, kS)) {
    why = "H(S,S) = " + format_rational(hs);
    return false;
  }
  return true;
}

bool chevalley(std::string& why) {
  for (int n : {1, 2}) {
    AuditReport r = chevalley_audit(n, 1000, 0);
    if (!r.clean()) {
      why = "n = " + std::to_string(n) + ": " + to_json(r).dump();
      return false;
    }
  }
  return true;
}

bool split_certification(std::string& why) {
  auto h = asai_cocycle();
  auto z = certify_split(h, {kS, kT}, 4, CoeffDomain::Integers, {"S", "T"});
  if (z.kind != VerdictKind::NonSplit || !z.certificate ||
      to_json(*z.certificate)["constraint"] != nlohmann::json::parse(R"({"coeffs":[4,0],"rhs":1})") ||
      !recheck_certificate(h, {kS, kT}, {"S", "T"}, *z.certificate, CoeffDomain::Integers)) {
    why = "radius 4 over Z: " + to_string(z.kind);
    return false;
  }
  auto q = certify_split(h, {kS, kT}, 6, CoeffDomain::Rationals, {"S", "T"});
  if (q.kind != VerdictKind::Split || !verify_split_on_ball(h, q).clean()) {
    why = "radius 6 over Q: " + to_string(q.kind);
    return false;
  }
  for (std::size_t i = 0; i < q.elements.size(); ++i)
    if (value(q.assignment[i]) != asai_split_f(q.elements[i])) {
      why = "assignment differs at " + encode(q.elements[i]);
      return false;
    }

  // Coboundaries: delta of f(M) = b + c(a - 1) on SL2(Z), and of f_{a1^2} on F_2.
  auto toy = [](const MatZ& m) { return CoeffValue{{Rational(m.b + m.c * (m.a - 1))}}; };
  auto d = coboundary<SL2Z>("delta toy", SL2Z{}, CoeffGroup::integers(), toy);
  auto dv = certify_split(d, {kS, kT}, 6, CoeffDomain::Integers);
  if (dv.kind != VerdictKind::Split) {
    why = "SL2 coboundary: " + to_string(dv.kind);
    return false;
  }
  for (std::size_t i = 0; i < dv.elements.size(); ++i)
    if (dv.assignment[i] != toy(dv.elements[i])) {
      why = "SL2 coboundary assignment differs at " + encode(dv.elements[i]);
      return false;
    }
  QuasiChar f = QuasiChar::f(parse_free_word("a1^2", 2));
  auto qh = quasichar_cocycle(f);
  std::vector<Word> gens{Word(parse_free_word("a1", 2)), Word(parse_free_word("a2", 2))};
  auto fv = certify_split(qh, gens, 4, CoeffDomain::Integers);
  if (fv.kind != VerdictKind::Split) {
    why = "free coboundary: " + to_string(fv.kind);
    return false;
  }
  for (std::size_t i = 0; i < fv.elements.size(); ++i)
    if (value(fv.assignment[i]) != f(fv.elements[i])) {
      why = "free coboundary assignment differs at " + to_string(fv.elements[i]);
      return false;
    }
  why = "balls " + std::to_string(q.ball_size) + ", " + std::to_string(dv.ball_size) + ", " +
        std::to_string(fv.ball_size);
  return true;
}

bool braid(std::string& why) {
  if (braid_discrepancy(0, 0) != 0) {
    why = "discrepancy";
    return false;
  }
  if (!(full_twist_center(0, 0) == AsaiElement{CoeffValue{{Rational(-1)}}, MatZ::identity()})) {
    why = "full twist " + asai_extension().encode(full_twist_center(0, 0));
    return false;
  }
  AuditReport ax = ext_group_axioms(asai_extension(), 10000, 0);
  if (!ax.clean() || ax.checked != 10000) {
    why = to_json(ax).dump();
    return false;
  }
  for (int n : {2, 3, 12})
    if (!induced_mod_split_witness(n, 2000, 0).clean()) {
      why = "induced witness n = " + std::to_string(n);
      return false;
    }
  return true;
}

bool thickness(std::string& why) {
  IntegerGroup z;
  std::vector<Integer> ten;
  for (int i = 0; i < 10; ++i) ten.push_back(i);
  auto even = [](const Integer& x) { return floor_mod(x, Integer(2)) == 0; };
  auto odd = [](const Integer& x) { return floor_mod(x, Integer(2)) == 1; };
  auto all = [](const Integer&) { return true; };
  if (!is_n_thick(z, ten, all, 2) || !is_n_thick(z, ten, even, 3) ||
      is_n_thick(z, {Integer(0), Integer(2), Integer(4), Integer(6)}, odd, 4)) {
    why = "fixtures";
    return false;
  }
  QuasiChar f = QuasiChar::f(parse_free_word("a1^2", 2));
  std::vector<Word> seq;
  for (int i = 1; i <= 6; ++i) seq.push_back(Word(witness_b_free(i)));
  std::function<bool(const Word&)> in_p = [&f](const Word& g) { return f(g) == 1 || f(g) == -1; };
  auto p = thick_pair(WordGroup{seq.front()}, seq, in_p);
  if (!p) {
    why = "no pair";
    return false;
  }
  Word g = multiply(seq[p->first - 1], invert(seq[p->second - 1]));
  if (f(g) != 1) {
    why = "f(g) = " + std::to_string(f(g));
    return false;
  }
  why = "pair (" + std::to_string(p->first) + "," + std::to_string(p->second) + ")";
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "Asai cocycle validity", asai_validity},
      {2, "splitting function", splitting_function},
      {3, "lemma-matrix suite", lemma_suite},
      {4, "power induction", power_induction},
      {5, "quasi-character claims", quasi_characters},
      {6, "pseudo-character law", pseudo_character},
      {7, "Steinberg audits", steinberg},
      {8, "Matsumoto cocycle", matsumoto},
      {9, "Chevalley audit", chevalley},
      {10, "splitness certification", split_certification},
      {11, "braid group suite", braid},
      {12, "thickness", thickness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string why;
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.check(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60) {
      ok = false;
      why += " (over 60 s)";
    }
    failed += !ok;
    char line[64];
    std::snprintf(line, sizeof line, "%.2fs", secs);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << line << "]";
    if (!why.empty()) std::cout << " " << why;
    std::cout << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
