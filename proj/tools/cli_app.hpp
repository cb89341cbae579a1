#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cocylab/cocylab.hpp"

namespace cocylab::cli {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    auto b = cur.find_first_not_of(' ');
    auto e = cur.find_last_not_of(' ');
    if (b == std::string::npos) throw UsageError("empty item in list '" + text + "'");
    out.push_back(cur.substr(b, e - b + 1));
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

inline Integer integer_arg(const std::string& text, const char* flag) {
  try {
    return parse_integer(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + ": expected an integer, got '" + text + "'");
  }
}

inline Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    throw UsageError(std::string(flag) + ": expected p/q, got '" + text + "'");
  }
}

/// Free group of the given rank, or Z_m * Z_n when --moduli m,n is set.
struct WordSpace {
  int rank = 2;
  std::string moduli;

  void attach(CLI::App* sub) {
    sub->add_option("--rank", rank, "free group rank")->capture_default_str();
    sub->add_option("--moduli", moduli, "m,n for the free product Z_m * Z_n");
  }
  bool free_product() const { return !moduli.empty(); }
  std::pair<std::int64_t, std::int64_t> mn() const {
    auto parts = split_list(moduli);
    if (parts.size() != 2) throw UsageError("--moduli expects m,n");
    return {static_cast<std::int64_t>(integer_arg(parts[0], "--moduli")),
            static_cast<std::int64_t>(integer_arg(parts[1], "--moduli"))};
  }
  Word parse(const std::string& text) const {
    if (free_product()) {
      auto [m, n] = mn();
      return parse_fp_word(text, m, n);
    }
    return parse_free_word(text, rank);
  }
};

struct CocycleOpts {
  std::string name = "asai";
  std::string kind = "f";
  std::string pattern;
  std::string modulus;
  WordSpace space;

  void attach(CLI::App* sub, bool with_pattern = true) {
    sub->add_option("--cocycle", name, "asai | asai-split | zero | matsumoto | qc")->capture_default_str();
    sub->add_option("--modulus", modulus, "reduce coefficients mod n");
    if (!with_pattern) return;
    sub->add_option("--kind", kind, "f | e (qc cocycle)")->capture_default_str();
    sub->add_option("--pattern", pattern, "pattern word (qc cocycle)");
    space.attach(sub);
  }

  template <GroupModel G>
  Cocycle2<G> reduce(Cocycle2<G> h) const {
    if (modulus.empty()) return h;
    return induce_quotient(h, {integer_arg(modulus, "--modulus")});
  }
};

inline QuasiChar make_quasichar(const std::string& kind, const Word& pattern) {
  if (kind != "f" && kind != "e") throw UsageError("--kind must be f or e");
  bool free = std::holds_alternative<FreeWord>(pattern);
  QuasiKind k = kind == "f" ? (free ? QuasiKind::FWFree : QuasiKind::FWFp) : (free ? QuasiKind::EWFree : QuasiKind::EWFp);
  return QuasiChar(k, pattern);
}

/// Calls fn(h, parse) with the selected cocycle and an element parser.
template <class Fn>
int with_cocycle(const CocycleOpts& o, Fn&& fn) {
  if (o.name == "asai" || o.name == "asai-split" || o.name == "zero") {
    Cocycle2<SL2Z> h = o.name == "asai"         ? asai_cocycle()
                       : o.name == "asai-split" ? asai_split_coboundary()
                                                : zero_cocycle(SL2Z{});
    return fn(o.reduce(h), [](const std::string& t) { return parse_sl2z(t); });
  }
  if (o.name == "matsumoto") {
    return fn(o.reduce(matsumoto_cocycle(ordered_symbol())), [](const std::string& t) { return parse_sl2q(t); });
  }
  if (o.name == "qc") {
    if (o.pattern.empty()) throw UsageError("--cocycle qc needs --pattern");
    QuasiChar q = make_quasichar(o.kind, o.space.parse(o.pattern));
    WordSpace space = o.space;
    return fn(o.reduce(quasichar_cocycle(q)), [space](const std::string& t) { return space.parse(t); });
  }
  throw UsageError("unknown cocycle '" + o.name + "'");
}

inline int report_exit(std::ostream& out, const AuditReport& r) {
  out << to_json(r).dump() << '\n';
  return r.clean() ? 0 : 1;
}

inline SymbolUnderTest symbol_named(const std::string& name) {
  if (name == "ordered") return ordered_symbol_under_test();
  if (name == "trivial") return trivial_symbol();
  if (name == "xor") return xor_sign_symbol();
  throw UsageError("unknown symbol '" + name + "'");
}

inline CoeffDomain domain_named(const std::string& name) {
  if (name == "Z") return CoeffDomain::Integers;
  if (name == "Q") return CoeffDomain::Rationals;
  throw UsageError("--coeff must be Z or Q");
}

inline json ext_json(const AsaiExt& grp, const AsaiElement& x) { return grp.to_json_value(x); }

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cocylab: bounded 2-cocycles, extensions, quasi-characters and split certificates", "cocylab"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  app.add_option("--seed", seed, "RNG seed")->capture_default_str();
  app.add_option("--samples", samples, "sample count (0 = command default)");

  auto with_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "RNG seed")->capture_default_str();
    sub->add_option("--samples", samples, "sample count (0 = command default)");
    return sub;
  };
  auto group = [&](const char* name, const char* help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto count_or = [&](std::size_t fallback) { return samples == 0 ? fallback : samples; };

  // words
  auto* words = group("words", "word arithmetic in F_r and Z_m * Z_n");
  WordSpace wspace;
  std::string w_word, w_u, w_v, w_pattern, w_n = "2";
  bool w_cyclic = false;
  auto* w_reduce = words->add_subcommand("reduce", "canonical form of a word");
  auto* w_mul = words->add_subcommand("mul", "product u v");
  auto* w_inv = words->add_subcommand("inv", "inverse");
  auto* w_pow = words->add_subcommand("power", "n-th power");
  auto* w_cyc = words->add_subcommand("cyclic", "canonical cyclic word");
  auto* w_count = words->add_subcommand("count", "occurrences of a pattern");
  for (auto* s : {w_reduce, w_inv, w_pow, w_cyc, w_count}) {
    s->add_option("--word", w_word, "word")->required();
    wspace.attach(s);
  }
  wspace.attach(w_mul);
  w_mul->add_option("--u", w_u, "left factor")->required();
  w_mul->add_option("--v", w_v, "right factor")->required();
  w_pow->add_option("--n", w_n, "exponent")->capture_default_str();
  w_count->add_option("--pattern", w_pattern, "pattern")->required();
  w_count->add_flag("--cyclic", w_cyclic, "count on the cyclic word");

  // qc
  auto* qc = group("qc", "quasi-characters f_W and e_W");
  WordSpace qspace;
  std::string q_kind = "f", q_pattern, q_word, q_family = "F1";
  long long q_max_n = 6, q_i = 1, q_j = 2, q_n = 1;
  auto* q_eval = qc->add_subcommand("eval", "value on a word");
  auto* q_image = with_common(qc->add_subcommand("image", "sampled coboundary image"));
  auto* q_power = qc->add_subcommand("power", "pseudo-character law e_W(g^n) = n e_W(g)");
  auto* q_witness = qc->add_subcommand("witness", "witness g = b_i b_j^-1");
  for (auto* s : {q_eval, q_image, q_power}) {
    s->add_option("--pattern", q_pattern, "pattern word")->required();
    qspace.attach(s);
  }
  for (auto* s : {q_eval, q_image}) s->add_option("--kind", q_kind, "f | e")->capture_default_str();
  for (auto* s : {q_eval, q_power}) s->add_option("--word", q_word, "argument word")->required();
  q_power->add_option("--max-n", q_max_n, "largest |n|")->capture_default_str();
  q_witness->add_option("--family", q_family, "F1 (free) | F2 (Z_4 * Z_4)")->capture_default_str();
  q_witness->add_option("--i", q_i, "index i")->capture_default_str();
  q_witness->add_option("--j", q_j, "index j > i")->capture_default_str();
  q_witness->add_option("--n", q_n, "power of g to evaluate")->capture_default_str();

  // cocycle
  auto* cocycle = group("cocycle", "2-cocycles: values and identity audits");
  CocycleOpts copts;
  std::string c_x, c_y, c_modulus = "2";
  auto* c_value = cocycle->add_subcommand("value", "h(x, y)");
  auto* c_verify = with_common(cocycle->add_subcommand("verify", "cocycle identity on sampled triples"));
  auto* c_witness = with_common(cocycle->add_subcommand("split-witness", "F(x) = z(f(x)) x^-1 splits h mod n"));
  copts.attach(c_value);
  copts.attach(c_verify);
  c_value->add_option("--x", c_x, "first element")->required();
  c_value->add_option("--y", c_y, "second element")->required();
  c_witness->add_option("--modulus", c_modulus, "n >= 2")->capture_default_str();

  // sl2
  auto* sl2 = group("sl2", "SL2: Asai cocycle, splitting function, Chevalley audit");
  std::string s_m1, s_m2, s_m, s_modulus = "12", s_ai = "0", s_di = "0", s_aj = "2", s_dj = "2";
  int s_rank = 1;
  bool s_negated = false;
  auto* s_asai = sl2->add_subcommand("asai", "Asai cocycle h(m1, m2)");
  auto* s_mats = sl2->add_subcommand("matsumoto", "Matsumoto cocycle H(m1, m2) for the ordered symbol");
  auto* s_dec = sl2->add_subcommand("decompose", "S,T word of a matrix");
  auto* s_f = sl2->add_subcommand("f", "splitting function f with h = delta f");
  auto* s_cong = sl2->add_subcommand("congruence", "membership in Gamma(n) and abelianization class");
  auto* s_lemma = sl2->add_subcommand("lemma", "lemma matrix M_i M_j^-1");
  auto* s_chev = with_common(sl2->add_subcommand("chevalley", "Chevalley generator audit for Sp_2n"));
  for (auto* s : {s_asai, s_mats}) {
    s->add_option("--m1", s_m1, "first matrix")->required();
    s->add_option("--m2", s_m2, "second matrix")->required();
  }
  for (auto* s : {s_dec, s_f, s_cong}) s->add_option("--m", s_m, "matrix")->required();
  s_cong->add_option("--modulus", s_modulus, "n >= 1")->capture_default_str();
  s_lemma->add_option("--ai", s_ai)->capture_default_str();
  s_lemma->add_option("--di", s_di)->capture_default_str();
  s_lemma->add_option("--aj", s_aj)->capture_default_str();
  s_lemma->add_option("--dj", s_dj)->capture_default_str();
  s_chev->add_option("--n", s_rank, "rank 1 or 2")->capture_default_str();
  s_chev->add_flag("--negated", s_negated, "negated root convention");

  // steinberg
  auto* stein = group("steinberg", "symplectic Steinberg symbols");
  std::string t_symbol = "ordered", t_x = "-1", t_y = "-1", t_z = "-1";
  bool t_derived = false;
  int t_terms = 4;
  auto* t_audit = with_common(stein->add_subcommand("audit", "(S1)-(S3), optionally derived relations"));
  auto* t_squares = with_common(stein->add_subcommand("squares", "sums of squares check"));
  auto* t_value = stein->add_subcommand("value", "c(x, y)");
  auto* t_probe = stein->add_subcommand("probe", "c(xy, z) against c(x, z) + c(y, z)");
  for (auto* s : {t_audit, t_squares, t_value, t_probe})
    s->add_option("--symbol", t_symbol, "ordered | trivial | xor")->capture_default_str();
  t_audit->add_flag("--derived", t_derived, "also check derived relations (1)-(6)");
  t_squares->add_option("--terms", t_terms, "largest number of squares")->capture_default_str();
  for (auto* s : {t_value, t_probe}) {
    s->add_option("--x", t_x)->capture_default_str();
    s->add_option("--y", t_y)->capture_default_str();
  }
  t_probe->add_option("--z", t_z)->capture_default_str();

  // ext
  auto* ext = group("ext", "the extension group defined by the Asai cocycle");
  CocycleOpts eopts;
  std::string e_x, e_y;
  bool e_phi = false;
  auto* e_mul = ext->add_subcommand("mul", "x y");
  auto* e_inv = ext->add_subcommand("inv", "x^-1");
  auto* e_axioms = with_common(ext->add_subcommand("axioms", "group axioms on sampled triples"));
  auto* e_equiv = with_common(ext->add_subcommand("equiv", "asai - 0 = delta f with the splitting function"));
  for (auto* s : {e_mul, e_inv, e_axioms}) eopts.attach(s, false);
  for (auto* s : {e_mul, e_inv}) s->add_option("--x", e_x, "{\"a\": [...], \"g\": ...}")->required();
  e_mul->add_option("--y", e_y, "{\"a\": [...], \"g\": ...}")->required();
  e_equiv->add_flag("--phi", e_phi, "check (a, g) -> (a + f(g), g) is a homomorphism instead");

  // split
  auto* split = group("split", "splitness certification on Cayley balls");
  CocycleOpts popts;
  std::string p_gens = "S,T", p_coeff = "Z", p_group = "sl2", p_sample = "0,1,2,3,4,5,6,7,8,9",
              p_predicate = "even", p_family = "F1";
  std::size_t p_radius = 4;
  bool p_assignment = false;
  int p_n = 3;
  long long p_count = 6;
  auto* p_cert = split->add_subcommand("certify", "Split / NonSplit / Inconclusive verdict");
  auto* p_ball = split->add_subcommand("ball", "Cayley ball size");
  auto* p_thick = split->add_subcommand("thick", "n-thickness of a parity set on a sample of Z");
  auto* p_pair = split->add_subcommand("pair", "thick pair among witnesses b_1..b_k");
  popts.attach(p_cert);
  for (auto* s : {p_cert, p_ball}) {
    s->add_option("--gens", p_gens, "comma-separated generators")->capture_default_str();
    s->add_option("--radius", p_radius, "ball radius")->capture_default_str();
  }
  p_cert->add_option("--coeff", p_coeff, "Z | Q")->capture_default_str();
  p_cert->add_flag("--assignment", p_assignment, "print f on every ball element");
  p_ball->add_option("--group", p_group, "sl2 | words")->capture_default_str();
  popts.space.attach(p_ball);
  p_thick->add_option("--predicate", p_predicate, "even | odd | all")->capture_default_str();
  p_thick->add_option("--sample", p_sample, "comma-separated integers")->capture_default_str();
  p_thick->add_option("--n", p_n, "n")->capture_default_str();
  p_pair->add_option("--family", p_family, "F1")->capture_default_str();
  p_pair->add_option("--count", p_count, "number of witnesses")->capture_default_str();

  // braid
  auto* braid = group("braid", "B3 as the Asai extension of SL2(Z)");
  std::string b_k1 = "0", b_k2 = "0";
  std::size_t b_radius = 12;
  auto* b_lift = braid->add_subcommand("lift", "lifts of sigma_1 and sigma_2");
  auto* b_disc = braid->add_subcommand("discrepancy", "A-part of s1 s2 s1 - s2 s1 s2");
  auto* b_twist = braid->add_subcommand("twist", "(s1 s2)^6");
  auto* b_kernel = braid->add_subcommand("kernel", "fiber over I in the Cayley ball of the lifts");
  for (auto* s : {b_lift, b_disc, b_twist, b_kernel}) {
    s->add_option("--k1", b_k1)->capture_default_str();
    s->add_option("--k2", b_k2)->capture_default_str();
  }
  b_kernel->add_option("--radius", b_radius)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\nrun 'cocylab --help' or see README.md\n";
    return 2;
  }

  try {
    // words
    if (w_reduce->parsed()) {
      out << json{{"word", to_string(wspace.parse(w_word))}}.dump() << '\n';
      return 0;
    }
    if (w_mul->parsed()) {
      out << json{{"word", to_string(multiply(wspace.parse(w_u), wspace.parse(w_v)))}}.dump() << '\n';
      return 0;
    }
    if (w_inv->parsed()) {
      out << json{{"word", to_string(invert(wspace.parse(w_word)))}}.dump() << '\n';
      return 0;
    }
    if (w_pow->parsed()) {
      auto n = static_cast<std::int64_t>(integer_arg(w_n, "--n"));
      out << json{{"word", to_string(word_power(wspace.parse(w_word), n))}}.dump() << '\n';
      return 0;
    }
    if (w_cyc->parsed()) {
      out << json{{"cyclic", to_string(CyclicWord(wspace.parse(w_word)).word())}}.dump() << '\n';
      return 0;
    }
    if (w_count->parsed()) {
      auto c = count_occurrences(wspace.parse(w_word), wspace.parse(w_pattern), w_cyclic);
      out << json{{"count", c}}.dump() << '\n';
      return 0;
    }

    // qc
    if (q_eval->parsed()) {
      QuasiChar q = make_quasichar(q_kind, qspace.parse(q_pattern));
      out << json{{"quasichar", q.describe()}, {"value", q(qspace.parse(q_word))}}.dump() << '\n';
      return 0;
    }
    if (q_image->parsed()) {
      QuasiChar q = make_quasichar(q_kind, qspace.parse(q_pattern));
      ImageReport r = coboundary_image(q, count_or(10000), seed);
      out << to_json(r).dump() << '\n';
      return r.observed_bound <= r.declared_bound ? 0 : 1;
    }
    if (q_power->parsed()) {
      QuasiChar q = make_quasichar("e", qspace.parse(q_pattern));
      bool holds = pseudo_power_check(q, qspace.parse(q_word), q_max_n);
      out << json{{"holds", holds}, {"max_n", q_max_n}}.dump() << '\n';
      return holds ? 0 : 1;
    }
    if (q_witness->parsed()) {
      WitnessFamily fam;
      Word pattern;
      if (q_family == "F1") {
        fam = WitnessFamily::F1Free;
        pattern = parse_free_word("a1^2", 2);
      } else if (q_family == "F2") {
        fam = WitnessFamily::F2Fp;
        pattern = parse_fp_word("A1 B1", 4, 4);
      } else {
        throw UsageError("--family must be F1 or F2");
      }
      Word g = witness_element(fam, q_i, q_j);
      QuasiChar q = make_quasichar("f", pattern);
      out << json{{"g", to_string(g)},
                  {"quasichar", q.describe()},
                  {"value", q(g)},
                  {"n", q_n},
                  {"power_value", q(word_power(g, q_n))}}
                 .dump()
          << '\n';
      return 0;
    }

    // cocycle
    if (c_value->parsed()) {
      return with_cocycle(copts, [&](const auto& h, auto parse) {
        out << json{{"value", to_json(h(parse(c_x), parse(c_y)))}}.dump() << '\n';
        return 0;
      });
    }
    if (c_verify->parsed()) {
      return with_cocycle(copts, [&](const auto& h, auto) {
        return report_exit(out, verify_identity(h, count_or(10000), seed));
      });
    }
    if (c_witness->parsed()) {
      return report_exit(out, induced_mod_split_witness(integer_arg(c_modulus, "--modulus"), count_or(1000), seed));
    }

    // sl2
    if (s_asai->parsed()) {
      out << json{{"value", asai_h(parse_sl2z(s_m1), parse_sl2z(s_m2))}}.dump() << '\n';
      return 0;
    }
    if (s_mats->parsed()) {
      CoeffValue v = matsumoto_H(parse_sl2q(s_m1), parse_sl2q(s_m2), ordered_symbol());
      out << json{{"value", rational_to_json(v.coords[0])}}.dump() << '\n';
      return 0;
    }
    if (s_dec->parsed()) {
      STWord w = st_decompose(parse_sl2z(s_m));
      out << json{{"word", to_string(w)}, {"class", rational_to_json(Rational(w.abelian_class()))}}.dump() << '\n';
      return 0;
    }
    if (s_f->parsed()) {
      Rational f = asai_split_f(parse_sl2z(s_m));
      out << json{{"f", rational_to_json(f)}}.dump() << '\n';
      return 0;
    }
    if (s_cong->parsed()) {
      CongruenceData d = congruence_data(parse_sl2z(s_m), integer_arg(s_modulus, "--modulus"));
      out << json{{"in_gamma_n", d.in_gamma_n}, {"class", rational_to_json(Rational(d.abelian_class))}}.dump()
          << '\n';
      return 0;
    }
    if (s_lemma->parsed()) {
      MatZ m = lemma_matrix(integer_arg(s_ai, "--ai"), integer_arg(s_di, "--di"), integer_arg(s_aj, "--aj"),
                            integer_arg(s_dj, "--dj"));
      out << json{{"matrix", to_json(m)},
                  {"h", asai_h(m, m)},
                  {"c", rational_to_json(Rational(m.c))},
                  {"trace", rational_to_json(Rational(m.trace()))},
                  {"f", rational_to_json(asai_split_f(m))}}
                 .dump()
          << '\n';
      return 0;
    }
    if (s_chev->parsed()) {
      auto conv = s_negated ? RootConvention::Negated : RootConvention::Chevalley;
      return report_exit(out, chevalley_audit(s_rank, count_or(1000), seed, conv));
    }

    // steinberg
    if (t_audit->parsed()) {
      SymbolUnderTest c = symbol_named(t_symbol);
      AuditReport r = audit_core(c, count_or(10000), seed);
      if (t_derived) r.merge(audit_derived(c, count_or(10000), seed));
      return report_exit(out, r);
    }
    if (t_squares->parsed()) {
      return report_exit(out, squares_check(symbol_named(t_symbol), t_terms, count_or(1000), seed));
    }
    if (t_value->parsed()) {
      SymbolUnderTest c = symbol_named(t_symbol);
      out << json{{"value", to_json(c(rational_arg(t_x, "--x"), rational_arg(t_y, "--y")))}}.dump() << '\n';
      return 0;
    }
    if (t_probe->parsed()) {
      auto p = bimultiplicativity_probe(symbol_named(t_symbol), rational_arg(t_x, "--x"), rational_arg(t_y, "--y"),
                                        rational_arg(t_z, "--z"));
      out << json{{"lhs", to_json(p.lhs)}, {"rhs", to_json(p.rhs)}, {"differs", p.differs()}}.dump() << '\n';
      return 0;
    }

    // ext
    auto asai_ext = [&]() {
      if (eopts.name != "asai") throw UsageError("ext supports --cocycle asai");
      return AsaiExt{eopts.reduce(asai_cocycle())};
    };
    if (e_mul->parsed()) {
      AsaiExt grp = asai_ext();
      auto z = ext_mul(grp, parse_ext_element(e_x, grp), parse_ext_element(e_y, grp));
      out << ext_json(grp, z).dump() << '\n';
      return 0;
    }
    if (e_inv->parsed()) {
      AsaiExt grp = asai_ext();
      out << ext_json(grp, ext_inv(grp, parse_ext_element(e_x, grp))).dump() << '\n';
      return 0;
    }
    if (e_axioms->parsed()) {
      return report_exit(out, ext_group_axioms(asai_ext(), count_or(10000), seed));
    }
    if (e_equiv->parsed()) {
      auto h1 = asai_cocycle();
      auto h2 = zero_cocycle(SL2Z{}, CoeffGroup::rationals());
      std::function<CoeffValue(const MatZ&)> f = [](const MatZ& m) { return CoeffValue{{asai_split_f(m)}}; };
      auto r = e_phi ? phi_homomorphism_check(h1, h2, f, count_or(10000), seed)
                     : equivalence_check(h1, h2, f, count_or(10000), seed);
      json j{{"equivalent", r.equivalent}, {"checked", r.checked}};
      if (r.witness) j["witness"] = elements_json(h1.group, {r.witness->first, r.witness->second});
      out << j.dump() << '\n';
      return r.equivalent ? 0 : 1;
    }

    // split
    if (p_cert->parsed()) {
      CoeffDomain domain = domain_named(p_coeff);
      std::vector<std::string> names = split_list(p_gens);
      return with_cocycle(popts, [&](const auto& h, auto parse) {
        using E = typename std::decay_t<decltype(h)>::Element;
        std::vector<E> gens;
        for (const auto& n : names) gens.push_back(parse(n));
        auto v = certify_split(h, gens, p_radius, domain, names);
        json j{{"verdict", to_string(v.kind)},
               {"radius", p_radius},
               {"coeff", p_coeff},
               {"ball_size", v.ball_size},
               {"constraints", v.constraint_count}};
        if (!v.note.empty()) j["note"] = v.note;
        if (v.certificate) j["certificate"] = to_json(*v.certificate);
        if (v.kind == VerdictKind::Split) {
          json values = json::object();
          for (std::size_t k = 0; k < names.size(); ++k) values[names[k]] = to_json(v.generator_values[k]);
          j["generator_values"] = values;
          json free = json::array();
          for (auto k : v.free_unknowns) free.push_back(names[k]);
          j["free_unknowns"] = free;
          if (p_assignment) {
            json rows = json::array();
            for (std::size_t i = 0; i < v.elements.size(); ++i)
              rows.push_back({{"g", h.group.encode(v.elements[i])}, {"f", to_json(v.assignment[i])}});
            j["assignment"] = rows;
          }
        }
        out << j.dump() << '\n';
        return v.kind == VerdictKind::NonSplit ? 1 : 0;
      });
    }
    if (p_ball->parsed()) {
      std::vector<std::string> names = split_list(p_gens);
      std::size_t size = 0;
      if (p_group == "sl2") {
        std::vector<MatZ> gens;
        for (const auto& n : names) gens.push_back(parse_sl2z(n));
        size = cayley_ball(SL2Z{}, gens, p_radius).size();
      } else if (p_group == "words") {
        std::vector<Word> gens;
        for (const auto& n : names) gens.push_back(popts.space.parse(n));
        size = cayley_ball(WordGroup{gens.front()}, gens, p_radius).size();
      } else {
        throw UsageError("--group must be sl2 or words");
      }
      out << json{{"size", size}, {"radius", p_radius}}.dump() << '\n';
      return 0;
    }
    if (p_thick->parsed()) {
      std::vector<Integer> sample;
      for (const auto& s : split_list(p_sample)) sample.push_back(integer_arg(s, "--sample"));
      std::function<bool(const Integer&)> in_p;
      if (p_predicate == "even") in_p = [](const Integer& x) { return floor_mod(x, Integer(2)) == 0; };
      else if (p_predicate == "odd") in_p = [](const Integer& x) { return floor_mod(x, Integer(2)) == 1; };
      else if (p_predicate == "all") in_p = [](const Integer&) { return true; };
      else throw UsageError("--predicate must be even, odd or all");
      bool thick = is_n_thick(IntegerGroup{}, sample, in_p, p_n);
      out << json{{"thick", thick}, {"n", p_n}}.dump() << '\n';
      return 0;
    }
    if (p_pair->parsed()) {
      if (p_family != "F1") throw UsageError("--family must be F1");
      QuasiChar q = QuasiChar::f(parse_free_word("a1^2", 2));
      std::vector<Word> seq;
      for (long long i = 1; i <= p_count; ++i) seq.push_back(Word(witness_b_free(i)));
      std::function<bool(const Word&)> in_p = [&q](const Word& g) {
        auto v = q(g);
        return v == 1 || v == -1;
      };
      auto pair = thick_pair(WordGroup{seq.front()}, seq, in_p);
      if (!pair) {
        out << json{{"found", false}}.dump() << '\n';
        return 1;
      }
      Word g = multiply(seq[pair->first - 1], invert(seq[pair->second - 1]));
      out << json{{"found", true}, {"i", pair->first}, {"j", pair->second}, {"g", to_string(g)}, {"value", q(g)}}
                 .dump()
          << '\n';
      return 0;
    }

    // braid
    Integer k1 = integer_arg(b_k1, "--k1");
    Integer k2 = integer_arg(b_k2, "--k2");
    AsaiExt bgrp = asai_extension();
    if (b_lift->parsed()) {
      auto [s1, s2] = braid_lifts(k1, k2);
      out << json{{"sigma1", ext_json(bgrp, s1)}, {"sigma2", ext_json(bgrp, s2)}}.dump() << '\n';
      return 0;
    }
    if (b_disc->parsed()) {
      out << json{{"discrepancy", rational_to_json(Rational(braid_discrepancy(k1, k2)))}}.dump() << '\n';
      return 0;
    }
    if (b_twist->parsed()) {
      out << ext_json(bgrp, full_twist_center(k1, k2)).dump() << '\n';
      return 0;
    }
    if (b_kernel->parsed()) {
      auto [s1, s2] = braid_lifts(k1, k2);
      auto ball = cayley_ball(bgrp, {s1, s2}, b_radius);
      std::set<Rational> fiber;
      for (const auto& x : ball.elements)
        if (x.g == MatZ::identity()) fiber.insert(x.a.coords[0]);
      json values = json::array();
      for (const auto& a : fiber) values.push_back(rational_to_json(a));
      out << json{{"radius", b_radius}, {"ball_size", ball.size()}, {"fiber", values}}.dump() << '\n';
      return 0;
    }
    throw UsageError("no command selected");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun 'cocylab --help' or see README.md\n";
    return 2;
  } catch (const ParseError& e) {
    err << json{{"error", "ParseError"}, {"position", e.position()}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << json{{"error", "ParseError"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
}

}  // namespace cocylab::cli
