#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lei/syntax.hpp"

namespace lei {

// ------------------------------------------------------------ meta language

// Formula patterns appearing in builtin logical rules.
enum class FPKind { AtomVar, FormVar, Top, Bot, Meet, Join, App };

struct FPatNode;
using FPat = std::shared_ptr<const FPatNode>;

struct FPatNode {
  FPKind kind;
  std::string name;         // AtomVar/FormVar/App
  std::vector<FPat> args;
};

FPat p_atomvar(const std::string& name);
FPat p_formvar(const std::string& name);
FPat p_top();
FPat p_bot();
FPat p_meet(FPat a, FPat b);
FPat p_join(FPat a, FPat b);
FPat p_app(const std::string& conn, std::vector<FPat> args);

// Metastructures: Var leaves are structure metavariables with a sort.
enum class MKind { Var, MHatTop, MCheckBot, MApp, MFormula };

struct MetaNode;
using Meta = std::shared_ptr<const MetaNode>;

struct MetaNode {
  MKind kind;
  std::string name;         // Var name / MApp connective
  ConnKind sort = ConnKind::F;  // Var sort
  bool hat = false;         // MApp flavor
  std::vector<Meta> args;   // MApp
  FPat fpat;                // MFormula
};

Meta m_var(const std::string& name, ConnKind sort);
Meta m_hat_top();
Meta m_check_bot();
Meta m_app(const std::string& conn, bool hat, std::vector<Meta> args);
Meta m_formula(FPat p);

struct MetaSequent {
  Meta ante;
  Meta succ;
};

std::string print(const Meta& m);
std::string print(const MetaSequent& ms);

// -------------------------------------------------------------- rule schemas

enum class RuleOrigin { Builtin, User };

// Dispatch tag for interpolant extraction.
enum class RuleKind {
  Axiom,        // 0-premise: Id, p⊢⊤, ⊥⊢p, ⊤̂⊢⊤, ⊥⊢⊥̌
  TopL, BotR,   // ⊤⊢Σ from ⊤̂⊢Σ; Π⊢⊥ from Π⊢⊥̌
  AndL, OrR,    // ∧_{L1}/∧_{L2}, ∨_{R1}/∨_{R2}
  AndR, OrL,
  Weakening,    // ⊤_W, ⊥_W
  FL, GR,       // f(Ā)⊢Σ from f̂(Ā)⊢Σ and dual
  FR, GL,       // f̂(Ξ̄)⊢f(Ā) with ε-flipped premises and dual
  Display,
  Cut,
  Structural,   // user rules
};

struct RuleSchema {
  std::string name;
  std::vector<MetaSequent> premises;
  MetaSequent conclusion;
  RuleOrigin origin = RuleOrigin::Builtin;
  RuleKind kind = RuleKind::Structural;
  std::string conn;          // FL/GR/FR/GL/Display: the operative connective
  std::string inverse;       // Display: name of the inverse schema
};

struct Instantiation {
  std::map<std::string, Structure> svars;  // structure metavariables
  std::map<std::string, Formula> fvars;    // formula + atom metavariables
};

struct RuleSet {
  Signature sig;                       // residual-closed
  std::vector<RuleSchema> schemas;     // deterministic order
  const RuleSchema* find(const std::string& name) const;
};

// Builtin D.LE rules for a signature (Cut included but flagged).
RuleSet builtin_rules(const Signature& sig);

// Parse a .lrul file and append user rules; validates analyticity.
void add_user_rules(RuleSet& rules, const std::string& text);

// --------------------------------------------------------------- operations

struct Match {
  Instantiation inst;
  std::vector<Sequent> premises;
};

// All (at most one, for linear conclusions) instantiations with
// instantiate(conclusion)=goal; premises are the instantiated premises.
std::vector<Match> match_backward(const RuleSchema& schema, const Sequent& goal,
                                  const Signature& sig);

Structure instantiate(const Meta& m, const Instantiation& inst);
Sequent instantiate(const MetaSequent& ms, const Instantiation& inst);

// Paths of each metavariable in a metasequent (for occurrence threading).
struct VarOccurrence {
  std::string var;
  Occurrence occ;
};
std::vector<VarOccurrence> var_occurrences(const MetaSequent& ms);

// Analyticity check for user structural rules; empty = analytic.
std::vector<std::string> validate_analytic(const RuleSchema& schema);

enum class Safety { NotSpecial, Special, InterpolationSafe };
std::string to_string(Safety s);

// Pre: validate_analytic passes.
Safety classify_safety(const RuleSchema& schema);

}  // namespace lei
