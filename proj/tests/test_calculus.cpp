#include <doctest.h>

#include <random>

#include "lei/calculus.hpp"
#include "lei/presets.hpp"

using namespace lei;

namespace {

std::vector<std::string> names(const RuleSet& rs) {
  std::vector<std::string> out;
  for (const auto& s : rs.schemas) out.push_back(s.name);
  return out;
}

}  // namespace

TEST_CASE("builtin rule list for the lattice fragment is frozen") {
  RuleSet rs = preset_rules("lattice");
  CHECK(names(rs) == std::vector<std::string>{
                         "id", "ax.top.atom", "ax.bot.atom", "ax.top.unit",
                         "ax.bot.unit", "top.l", "bot.r", "and.l1", "and.l2",
                         "and.r", "or.l", "or.r1", "or.r2", "top.w", "bot.w",
                         "cut"});
}

TEST_CASE("fundamental preset rule list is frozen and deterministic") {
  RuleSet rs = preset_rules("fundamental");
  std::vector<std::string> expect{
      "id", "ax.top.atom", "ax.bot.atom", "ax.top.unit", "ax.bot.unit",
      "top.l", "bot.r", "and.l1", "and.l2", "and.r", "or.l", "or.r1", "or.r2",
      "top.w", "bot.w", "box.l", "box.r", "dia.l", "dia.r", "neg.l", "neg.r",
      "disp.box.1.fwd", "disp.box.1.inv", "disp.dia.1.fwd", "disp.dia.1.inv",
      "disp.neg.1.fwd", "cut", "neg.elim", "dia.neg.box"};
  CHECK(names(rs) == expect);
  CHECK(names(preset_rules("fundamental")) == expect);
  // The self-Galois negation postulate is its own inverse.
  CHECK(rs.find("disp.neg.1.fwd")->inverse == "disp.neg.1.fwd");
  CHECK(rs.find("disp.dia.1.fwd")->inverse == "disp.dia.1.inv");
}

TEST_CASE("tense-fundamental adds intro rules for the residual modalities") {
  RuleSet rs = preset_rules("tense-fundamental");
  CHECK(rs.find("blacksquare.l"));
  CHECK(rs.find("blackdia.r"));
  CHECK(preset_rules("fundamental").find("blacksquare.l") == nullptr);
}

TEST_CASE("match_backward: and.r splits a conjunction on the right") {
  RuleSet rs = preset_rules("lattice");
  Sequent goal = parse_sequent("p |- (q /\\ r)", rs.sig);
  auto ms = match_backward(*rs.find("and.r"), goal, rs.sig);
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].premises.size() == 2);
  CHECK(print(ms[0].premises[0]) == "p |- q");
  CHECK(print(ms[0].premises[1]) == "p |- r");
  CHECK(print(ms[0].inst.fvars.at("A")) == "q");
  CHECK(print(ms[0].inst.fvars.at("B")) == "r");
}

TEST_CASE("match_backward: weakening applies to any sequent") {
  RuleSet rs = preset_rules("fundamental");
  Sequent goal = parse_sequent("@dia(p) |- #box(q)", rs.sig);
  auto ms = match_backward(*rs.find("top.w"), goal, rs.sig);
  REQUIRE(ms.size() == 1);
  REQUIRE(ms[0].premises.size() == 1);
  CHECK(print(ms[0].premises[0]) == "@top |- #box(q)");
}

TEST_CASE("match_backward: the dia.neg.box structural rule") {
  RuleSet rs = preset_rules("fundamental");
  Sequent goal = parse_sequent("p |- #blacksquare(#neg(q))", rs.sig);
  auto ms = match_backward(*rs.find("dia.neg.box"), goal, rs.sig);
  REQUIRE(ms.size() == 1);
  CHECK(print(ms[0].premises[0]) == "p |- #neg(@blackdia(q))");
}

TEST_CASE("match_backward: nonlinear id matches only syntactic axioms") {
  RuleSet rs = preset_rules("lattice");
  CHECK(match_backward(*rs.find("id"), parse_sequent("p |- p", rs.sig), rs.sig).size() == 1);
  CHECK(match_backward(*rs.find("id"), parse_sequent("p |- q", rs.sig), rs.sig).empty());
  // id's metavariable ranges over atoms, not arbitrary formulas.
  CHECK(match_backward(*rs.find("id"), parse_sequent("(p /\\ q) |- (p /\\ q)", rs.sig),
                       rs.sig)
            .empty());
}

TEST_CASE("match_backward: cut is never selected backward") {
  RuleSet rs = preset_rules("lattice");
  CHECK(rs.find("cut")->kind == RuleKind::Cut);
  CHECK(match_backward(*rs.find("cut"), parse_sequent("p |- q", rs.sig), rs.sig).empty());
}

TEST_CASE("match soundness: instantiating the conclusion reproduces the goal") {
  std::mt19937 rng(7);
  RuleSet rs = preset_rules("tense-fundamental");
  std::vector<std::string> goals = {
      "p |- p",
      "(p /\\ q) |- (p \\/ r)",
      "@dia(p) |- #blacksquare(#neg(q))",
      "dia(neg(p)) |- neg(box(p))",
      "@dia(@blackdia(p)) |- #box(#bot)",
      "@top |- #neg(@dia(q))",
  };
  for (const auto& g : goals) {
    Sequent goal = parse_sequent(g, rs.sig);
    for (const auto& schema : rs.schemas)
      for (const auto& m : match_backward(schema, goal, rs.sig)) {
        CHECK(equal(instantiate(schema.conclusion, m.inst), goal));
        REQUIRE(m.premises.size() == schema.premises.size());
        for (size_t i = 0; i < m.premises.size(); ++i)
          CHECK(equal(instantiate(schema.premises[i], m.inst), m.premises[i]));
      }
  }
}

TEST_CASE("var_occurrences reports metavariable paths") {
  RuleSet rs = preset_rules("fundamental");
  const RuleSchema* r = rs.find("dia.neg.box");
  auto vos = var_occurrences(r->conclusion);
  REQUIRE(vos.size() == 2);
  CHECK(vos[0].var == "X");
  CHECK(print(vos[0].occ) == "ante");
  CHECK(vos[1].var == "Y");
  CHECK(print(vos[1].occ) == "succ.1.1");
}

TEST_CASE("validate_analytic rejects malformed structural rules") {
  // Duplicate conclusion metavariable.
  RuleSchema dup;
  dup.name = "dup";
  dup.conclusion = {m_var("X", ConnKind::F),
                    m_app("neg", false, {m_var("X", ConnKind::F)})};
  dup.premises = {};
  CHECK_FALSE(validate_analytic(dup).empty());

  // Premise variable absent from the conclusion.
  RuleSchema orphan;
  orphan.name = "orphan";
  orphan.conclusion = {m_var("X", ConnKind::F), m_var("Y", ConnKind::G)};
  orphan.premises = {{m_var("Z", ConnKind::F), m_var("Y", ConnKind::G)}};
  CHECK_FALSE(validate_analytic(orphan).empty());

  // Formula material in a structural rule.
  RuleSchema frm;
  frm.name = "frm";
  frm.conclusion = {m_formula(p_atomvar("p")), m_var("Y", ConnKind::G)};
  frm.premises = {};
  CHECK_FALSE(validate_analytic(frm).empty());
}

TEST_CASE("add_user_rules enforces analyticity and rejects duplicates") {
  RuleSet rs = preset_rules("fundamental");
  CHECK_THROWS(add_user_rules(rs, "rule bad\nX |- Y\n----\nX |- #neg(X)\n"));
  CHECK_THROWS(add_user_rules(rs, "rule neg.elim\nX |- Y\n----\nX |- Y\n"));
  CHECK_THROWS(add_user_rules(rs, "rule sortless\nX |- @dia(Y)\n----\nX |- Y\n"));
}

TEST_CASE("user rule sort annotations are honored") {
  RuleSet rs = preset_rules("fundamental");
  CHECK_NOTHROW(add_user_rules(rs, "rule ann\nX:F |- Y:G\n----\nX:F |- #box(Y:G)\n"));
  RuleSet rs2 = preset_rules("fundamental");
  CHECK_THROWS(add_user_rules(rs2, "rule ann\nX:G |- Y\n----\nX:G |- #box(Y)\n"));
}

TEST_CASE("classification of the preset structural rules is frozen") {
  RuleSet kt = preset_rules("k-tense");
  CHECK(classify_safety(*kt.find("dia.box")) == Safety::InterpolationSafe);
  RuleSet fu = preset_rules("fundamental");
  CHECK(classify_safety(*fu.find("neg.elim")) == Safety::NotSpecial);
  CHECK(classify_safety(*fu.find("dia.neg.box")) == Safety::InterpolationSafe);
  CHECK(to_string(Safety::NotSpecial) == "not-special");
  CHECK(to_string(Safety::Special) == "special");
  CHECK(to_string(Safety::InterpolationSafe) == "interpolation-safe");
}

TEST_CASE("safe vs merely special user rules") {
  RuleSet rs = preset_rules("k-tense");
  add_user_rules(rs,
                 "rule pair\n"
                 "X |- #box(Y)\n"
                 "----\n"
                 "X |- #blacksquare(Y)\n");
  CHECK(classify_safety(*rs.find("pair")) == Safety::InterpolationSafe);

  RuleSet rs2 = preset_rules("lambek");
  add_user_rules(rs2,
                 "rule assoc\n"
                 "@circ(@circ(X, Y), Z) |- W\n"
                 "----\n"
                 "@circ(X, @circ(Y, Z)) |- W\n");
  // Isolated succedent W, but the premise antecedent holds three variables.
  CHECK(classify_safety(*rs2.find("assoc")) == Safety::Special);
}

TEST_CASE("instantiate substitutes structure and formula metavariables") {
  RuleSet rs = preset_rules("fundamental");
  Instantiation inst;
  inst.svars["X"] = parse_structure("@dia(p)", rs.sig);
  inst.svars["Y"] = parse_structure("#box(q)", rs.sig);
  const RuleSchema* r = rs.find("neg.elim");
  CHECK(print(instantiate(r->premises[0], inst)) == "@dia(p) |- #neg(@dia(p))");
  CHECK(print(instantiate(r->conclusion, inst)) == "@dia(p) |- #box(q)");
}
