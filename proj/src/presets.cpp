#include "lei/presets.hpp"

#include <stdexcept>

namespace lei {

namespace {

const char* kLatticeSig = R"(logic lattice
atoms p q r
)";

const char* kKTenseSig = R"(logic k-tense
atoms p q r
conn F dia 1 +
conn G box 1 +
residual sharp dia 1 blacksquare
residual flat box 1 blackdia
operational blacksquare blackdia
)";

// The rule for the axiom dia box p |- box dia p.
const char* kKTenseRules = R"(rule dia.box
X |- #box(#blacksquare(Y))
----
X |- #blacksquare(#box(Y))
)";

const char* kFundamentalSig = R"(logic fundamental
atoms p q r
conn F dia 1 +
conn G neg 1 -
conn G box 1 +
selfgalois neg 1
residual sharp dia 1 blacksquare
residual flat box 1 blackdia
)";

const char* kTenseFundamentalSig = R"(logic tense-fundamental
atoms p q r
conn F dia 1 +
conn G neg 1 -
conn G box 1 +
selfgalois neg 1
residual sharp dia 1 blacksquare
residual flat box 1 blackdia
operational blacksquare blackdia
)";

// Rules for the axioms p /\ neg(p) |- bot and dia(neg(p)) |- neg(box(p)).
const char* kFundamentalRules = R"(rule neg.elim
X |- #neg(X)
----
X |- Y

rule dia.neg.box
X |- #neg(@blackdia(Y))
----
X |- #blacksquare(#neg(Y))
)";

const char* kLambekSig = R"(logic lambek
atoms p q r
conn F circ 2 ++
residual sharp circ 1 over
residual sharp circ 2 under
operational over under
)";

}  // namespace

std::vector<std::string> preset_names() {
  return {"lattice", "k-tense", "fundamental", "tense-fundamental", "lambek"};
}

bool is_preset(const std::string& name) {
  for (const auto& n : preset_names())
    if (n == name) return true;
  return false;
}

std::string preset_signature_text(const std::string& name) {
  if (name == "lattice") return kLatticeSig;
  if (name == "k-tense") return kKTenseSig;
  if (name == "fundamental") return kFundamentalSig;
  if (name == "tense-fundamental") return kTenseFundamentalSig;
  if (name == "lambek") return kLambekSig;
  throw std::runtime_error("unknown preset " + name);
}

std::string preset_rules_text(const std::string& name) {
  if (name == "k-tense") return kKTenseRules;
  if (name == "fundamental" || name == "tense-fundamental") return kFundamentalRules;
  if (name == "lattice" || name == "lambek") return "";
  throw std::runtime_error("unknown preset " + name);
}

Signature preset_signature(const std::string& name) {
  return residual_closure(parse_signature(preset_signature_text(name)));
}

RuleSet preset_rules(const std::string& name) {
  RuleSet rs = builtin_rules(parse_signature(preset_signature_text(name)));
  std::string rules = preset_rules_text(name);
  if (!rules.empty()) add_user_rules(rs, rules);
  return rs;
}

}  // namespace lei
