#include <doctest.h>

#include "lei/oracle.hpp"
#include "lei/presets.hpp"

using namespace lei;

namespace {

InterpolationResult extract(const std::string& preset, const std::string& seq) {
  RuleSet rs = preset_rules(preset);
  SearchResult r = prove(parse_sequent(seq, rs.sig), rs, {});
  REQUIRE(r.status == SearchStatus::Proved);
  return lyndon(*r.derivation, rs, {});
}

}  // namespace

TEST_CASE("handler dispatch per rule kind") {
  RuleSet rs = preset_rules("fundamental");
  CHECK(handler_for(*rs.find("cut"), rs.sig) == std::nullopt);
  CHECK(handler_for(*rs.find("top.w"), rs.sig) == HandlerKind::MetavarCombination);
  CHECK(handler_for(*rs.find("disp.neg.1.fwd"), rs.sig) == HandlerKind::MetavarCombination);
  CHECK(handler_for(*rs.find("and.r"), rs.sig) == HandlerKind::PrincipalCase);
  CHECK(handler_for(*rs.find("id"), rs.sig) == HandlerKind::PrincipalCase);
  CHECK(handler_for(*rs.find("neg.elim"), rs.sig) == HandlerKind::FundamentalNegation);
  CHECK(handler_for(*rs.find("dia.neg.box"), rs.sig) == HandlerKind::SafeStructural);
  RuleSet kt = preset_rules("k-tense");
  CHECK(handler_for(*kt.find("dia.box"), kt.sig) == HandlerKind::SafeStructural);
}

TEST_CASE("identity axiom interpolates to its atom") {
  InterpolationResult r = extract("lattice", "p |- p");
  CHECK(print(r.gamma) == "p");
  CHECK(r.epsilon == Polarity::Co);
  CHECK_FALSE(r.l_star);
}

TEST_CASE("conjunction-disjunction example interpolates to the shared atom") {
  InterpolationResult r = extract("lattice", "(p /\\ q) |- (p \\/ r)");
  RuleSet rs = preset_rules("lattice");
  Formula gamma = simplify(r.gamma);
  CHECK(print(gamma) == "p");
  // The extracted interpolant verifies and lies in the depth-1 oracle set.
  Sequent s = parse_sequent("(p /\\ q) |- (p \\/ r)", rs.sig);
  CHECK(verify(s, {Side::Ante, {}}, gamma, rs, {}).ok);
  CHECK(is_interpolant_in_space(s, {Side::Ante, {}}, gamma, 1, rs, {}));
}

TEST_CASE("fundamental contradiction interpolates to bot") {
  InterpolationResult r = extract("fundamental", "(p /\\ neg(p)) |- q");
  CHECK(print(simplify(r.gamma)) == "bot");
  CHECK_FALSE(r.l_star);
  RuleSet rs = preset_rules("fundamental");
  CHECK(check(*r.side_derivation, rs).ok);
  CHECK(check(*r.ctx_derivation, rs).ok);
}

TEST_CASE("fundamental modal showcase has negative-only polarity") {
  InterpolationResult r = extract("fundamental", "dia(neg(p)) |- neg(box(p))");
  RuleSet rs = preset_rules("fundamental");
  Formula gamma = simplify(r.gamma);
  SignedVars sv = signed_vars(gamma, rs.sig);
  CHECK(sv.pos.empty());
  CHECK(sv.neg == std::set<std::string>{"p"});
  CHECK(in_language(gamma, rs.sig));
  Sequent s = parse_sequent("dia(neg(p)) |- neg(box(p))", rs.sig);
  CHECK(verify(s, {Side::Ante, {}}, gamma, rs, {}).ok);
}

TEST_CASE("maehara at a non-root occurrence") {
  RuleSet rs = preset_rules("lattice");
  Sequent s = parse_sequent("(p /\\ q) |- (p \\/ r)", rs.sig);
  SearchResult pr = prove(s, rs, {});
  REQUIRE(pr.status == SearchStatus::Proved);
  // Occurrence = the whole succedent: ε = ∂ and the roles swap.
  InterpolationResult r = maehara(*pr.derivation, {Side::Succ, {}}, rs, {});
  CHECK(r.epsilon == Polarity::Contra);
  CHECK(verify(s, {Side::Succ, {}}, simplify(r.gamma), rs, {}).ok);
  CHECK(r.polarity.pos_ok);
  CHECK(r.polarity.neg_ok);
}

TEST_CASE("extraction and verification agree across k-tense theorems") {
  RuleSet rs = preset_rules("k-tense");
  for (const std::string& t :
       {"dia(box(p)) |- box(dia(p))", "dia((p \\/ q)) |- (dia(p) \\/ dia(q))",
        "(box(p) /\\ box(q)) |- box((p /\\ q))", "p |- box(blackdia(p))",
        "dia(blacksquare(p)) |- p"}) {
    Sequent s = parse_sequent(t, rs.sig);
    SearchResult pr = prove(s, rs, {});
    REQUIRE(pr.status == SearchStatus::Proved);
    InterpolationResult r = lyndon(*pr.derivation, rs, {});
    CHECK(verify(s, {Side::Ante, {}}, r.gamma, rs, {}).ok);
    CHECK(verify(s, {Side::Ante, {}}, simplify(r.gamma), rs, {}).ok);
    CHECK(in_language(r.gamma, rs.sig));
  }
}

TEST_CASE("extraction is deterministic") {
  InterpolationResult a = extract("fundamental", "dia(neg(p)) |- neg(box(p))");
  InterpolationResult b = extract("fundamental", "dia(neg(p)) |- neg(box(p))");
  CHECK(print(a.gamma) == print(b.gamma));
  RuleSet rs = preset_rules("fundamental");
  CHECK(interpolation_to_json(a, rs) == interpolation_to_json(b, rs));
}

TEST_CASE("verify rejects polarity violations") {
  RuleSet rs = preset_rules("lattice");
  Sequent s = parse_sequent("(p /\\ q) |- (p \\/ r)", rs.sig);
  // q is not a variable of the succedent: the sharing condition fails even
  // though both derivability conditions hold.
  VerifyReport rep = verify(s, {Side::Ante, {}}, parse_formula("(p /\\ q)", rs.sig),
                            rs, {});
  CHECK(rep.side_derivable);
  CHECK(rep.ctx_derivable);
  CHECK_FALSE(rep.pos_ok);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("verify rejects underivable candidates") {
  RuleSet rs = preset_rules("lattice");
  Sequent s = parse_sequent("(p /\\ q) |- (p \\/ r)", rs.sig);
  VerifyReport rep = verify(s, {Side::Ante, {}}, ftop(), rs, {});
  CHECK(rep.side_derivable);        // (p ∧ q) ⊢ ⊤
  CHECK_FALSE(rep.ctx_derivable);   // ⊤ ⊬ p ∨ r
  CHECK_FALSE(rep.ok);

  VerifyReport rep2 = verify(s, {Side::Ante, {}}, fbot(), rs, {});
  CHECK_FALSE(rep2.side_derivable);  // (p ∧ q) ⊬ ⊥
  CHECK(rep2.ctx_derivable);
  CHECK_FALSE(rep2.ok);
}

TEST_CASE("weakened sides interpolate to a unit") {
  // ⊥ on the left proves anything; the interpolant carries no variables.
  InterpolationResult r = extract("lattice", "bot |- p");
  Formula gamma = simplify(r.gamma);
  RuleSet rs = preset_rules("lattice");
  SignedVars sv = signed_vars(gamma, rs.sig);
  CHECK(sv.pos.empty());
  CHECK(sv.neg.empty());
  CHECK(verify(parse_sequent("bot |- p", rs.sig), {Side::Ante, {}}, gamma, rs, {}).ok);
}

TEST_CASE("interpolation at every occurrence of a small proof") {
  RuleSet rs = preset_rules("lattice");
  Sequent s = parse_sequent("(p /\\ q) |- (q /\\ (p \\/ r))", rs.sig);
  SearchResult pr = prove(s, rs, {});
  REQUIRE(pr.status == SearchStatus::Proved);
  for (const Occurrence& occ : occurrences(s)) {
    InterpolationResult r = maehara(*pr.derivation, occ, rs, {});
    CHECK(verify(s, occ, simplify(r.gamma), rs, {}).ok);
  }
}

TEST_CASE("maehara throws on a cut derivation") {
  RuleSet rs = preset_rules("lattice");
  Sequent goal = parse_sequent("(p /\\ q) |- (p \\/ r)", rs.sig);
  SearchResult left = prove(parse_sequent("(p /\\ q) |- p", rs.sig), rs, {});
  SearchResult right = prove(parse_sequent("p |- (p \\/ r)", rs.sig), rs, {});
  Instantiation inst;
  inst.svars["P"] = parse_structure("(p /\\ q)", rs.sig);
  inst.svars["S"] = parse_structure("(p \\/ r)", rs.sig);
  inst.fvars["A"] = parse_formula("p", rs.sig);
  DerivPtr cut = make_derivation(goal, "cut", inst,
                                 {left.derivation, right.derivation});
  CHECK_THROWS(lyndon(*cut, rs, {}));
}

TEST_CASE("simplify applies unit and absorption laws to a fixpoint") {
  Signature sig = preset_signature("fundamental");
  auto simp = [&](const std::string& t) { return print(simplify(parse_formula(t, sig))); };
  CHECK(simp("(p /\\ top)") == "p");
  CHECK(simp("(top /\\ p)") == "p");
  CHECK(simp("(p \\/ bot)") == "p");
  CHECK(simp("(p /\\ bot)") == "bot");
  CHECK(simp("(p \\/ top)") == "top");
  CHECK(simp("(p /\\ p)") == "p");
  CHECK(simp("(p \\/ p)") == "p");
  CHECK(simp("((p /\\ top) \\/ (bot /\\ q))") == "p");
  CHECK(simp("neg((p \\/ bot))") == "neg(p)");
  CHECK(simp("dia(neg(p))") == "dia(neg(p))");
}

TEST_CASE("in_language distinguishes structural-only connectives") {
  Signature plain = preset_signature("fundamental");
  Signature tense = preset_signature("tense-fundamental");
  Formula f = parse_formula("blacksquare(neg(p))", tense);
  CHECK(in_language(f, tense));
  CHECK_FALSE(in_language(f, plain));
}

TEST_CASE("interpolation JSON golden") {
  RuleSet rs = preset_rules("lattice");
  SearchResult pr = prove(parse_sequent("p |- p", rs.sig), rs, {});
  REQUIRE(pr.status == SearchStatus::Proved);
  InterpolationResult r = lyndon(*pr.derivation, rs, {});
  std::string json = interpolation_to_json(r, rs);
  CHECK(json.find("\"gamma\": \"p\"") != std::string::npos);
  CHECK(json.find("\"epsilon\": \"1\"") != std::string::npos);
  CHECK(json.find("\"left_proof\"") != std::string::npos);
  CHECK(json.find("\"ctx_proof\"") != std::string::npos);
  CHECK(json.find("\"polarity\"") != std::string::npos);
}
