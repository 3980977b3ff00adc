#include <doctest.h>

#include <random>

#include "lei/display.hpp"
#include "lei/presets.hpp"

using namespace lei;

namespace {

std::vector<std::string> printed(const std::vector<Sequent>& ss) {
  std::vector<std::string> out;
  for (const auto& s : ss) out.push_back(print(s));
  return out;
}

// Random occurrence of a sequent, uniform over all structure nodes.
Occurrence random_occ(std::mt19937& rng, const Sequent& s) {
  auto occs = occurrences(s);
  std::uniform_int_distribution<size_t> d(0, occs.size() - 1);
  return occs[d(rng)];
}

}  // namespace

TEST_CASE("neighbors of a displayed modal sequent") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("@dia(p) |- q", rs.sig);
  auto ns = neighbors(s, rs);
  REQUIRE(ns.size() == 1);
  CHECK(print(ns[0].first) == "p |- #blacksquare(q)");
  CHECK(ns[0].second.postulate == "disp.dia.1.fwd");
}

TEST_CASE("the Galois negation postulate swaps the sides") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("p |- #neg(q)", rs.sig);
  auto ns = neighbors(s, rs);
  REQUIRE(ns.size() == 1);
  CHECK(print(ns[0].first) == "q |- #neg(p)");
  // Applying it again returns to the start: an involution.
  auto back = neighbors(ns[0].first, rs);
  REQUIRE(back.size() == 1);
  CHECK(equal(back[0].first, s));
}

TEST_CASE("formula sequents have no postulate neighbors") {
  RuleSet rs = preset_rules("fundamental");
  CHECK(neighbors(parse_sequent("p |- q", rs.sig), rs).empty());
  CHECK(neighbors(parse_sequent("dia(p) |- box(q)", rs.sig), rs).empty());
}

TEST_CASE("closure of a two-element display class") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("@dia(p) |- q", rs.sig);
  CHECK(printed(closure(s, rs)) ==
        std::vector<std::string>{"@dia(p) |- q", "p |- #blacksquare(q)"});
}

TEST_CASE("closure grows with nesting and is symmetric") {
  RuleSet rs = preset_rules("tense-fundamental");
  Sequent s = parse_sequent("@dia(@dia(p)) |- #neg(q)", rs.sig);
  auto cl = closure(s, rs);
  CHECK(cl.size() > 3);
  for (const auto& t : cl) {
    auto cl2 = closure(t, rs);
    CHECK(cl2.size() == cl.size());
    bool found = false;
    for (const auto& u : cl2) found = found || equal(u, s);
    CHECK(found);
  }
}

TEST_CASE("canonical picks a unique representative") {
  RuleSet rs = preset_rules("fundamental");
  Sequent a = parse_sequent("@dia(p) |- q", rs.sig);
  Sequent b = parse_sequent("p |- #blacksquare(q)", rs.sig);
  CHECK(equal(canonical(a, rs), canonical(b, rs)));
  CHECK(equal(canonical(canonical(a, rs), rs), canonical(a, rs)));
  Sequent c = parse_sequent("p |- q", rs.sig);
  CHECK_FALSE(equal(canonical(a, rs), canonical(c, rs)));
}

TEST_CASE("display_path replays to the target") {
  RuleSet rs = preset_rules("tense-fundamental");
  Sequent from = parse_sequent("@dia(@blackdia(p)) |- q", rs.sig);
  Sequent to = parse_sequent("@blackdia(p) |- #blacksquare(q)", rs.sig);
  auto path = display_path(from, to, rs);
  CHECK(path.size() == 1);
  CHECK_THROWS(display_path(from, parse_sequent("p |- q", rs.sig), rs));
}

TEST_CASE("isolate surfaces a nested substructure") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("@dia(@dia(p)) |- q", rs.sig);
  DisplayedForm df = isolate(s, {Side::Ante, {0, 0}}, rs);
  CHECK(df.epsilon == Polarity::Co);
  CHECK(print(df.sequent) == "p |- #blacksquare(#blacksquare(q))");
  CHECK(print(df.source) == "ante.1.1");
}

TEST_CASE("isolating under a Galois connective lands on the flipped side") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("p |- #neg(q)", rs.sig);
  DisplayedForm df = isolate(s, {Side::Succ, {0}}, rs);
  CHECK(df.epsilon == Polarity::Co);  // ε(q) = 1: it displays as an antecedent
  CHECK(print(df.sequent) == "q |- #neg(p)");
}

TEST_CASE("isolating a root is a no-op") {
  RuleSet rs = preset_rules("fundamental");
  Sequent s = parse_sequent("@dia(p) |- q", rs.sig);
  DisplayedForm df = isolate(s, {Side::Succ, {}}, rs);
  CHECK(df.steps.empty());
  CHECK(df.epsilon == Polarity::Contra);
  CHECK(equal(df.sequent, s));
}

TEST_CASE("plug equals direct path substitution") {
  RuleSet rs = preset_rules("tense-fundamental");
  std::mt19937 rng(99);
  std::vector<std::string> seqs = {
      "@dia(@dia(p)) |- #box(q)",
      "@dia(p) |- #neg(@blackdia(q))",
      "@circ_free |- #bot",  // placeholder replaced below
  };
  seqs.pop_back();
  for (const auto& t : seqs) {
    Sequent s = parse_sequent(t, rs.sig);
    for (const Occurrence& occ : occurrences(s)) {
      DisplayedForm df = isolate(s, occ, rs);
      // Plugging the isolated substructure back yields the original sequent.
      Structure target = at(s, occ);
      CHECK(equal(plug(df, target, rs), s));
      // Plugging a fresh leaf equals path substitution.
      Structure fresh = sleaf(fatom("r"));
      CHECK(equal(plug(df, fresh, rs), substitute(s, occ, fresh)));
    }
  }
  (void)rng;
}

TEST_CASE("decomposition: every substructure displays as one full side") {
  RuleSet rs = preset_rules("lambek");
  Sequent s = parse_sequent("@circ(p, @circ(q, r)) |- #under(q, #over(p, r))", rs.sig);
  for (const Occurrence& occ : occurrences(s)) {
    DisplayedForm df = isolate(s, occ, rs);
    Structure target = at(s, occ);
    const Structure& side =
        df.epsilon == Polarity::Co ? df.sequent.ante : df.sequent.succ;
    CHECK(equal(side, target));
    CHECK(df.epsilon == epsilon(s, occ, rs.sig));
  }
}
