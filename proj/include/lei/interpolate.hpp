#pragma once

#include "lei/prover.hpp"

namespace lei {

enum class HandlerKind {
  MetavarCombination,
  PrincipalCase,
  SafeStructural,
  FundamentalNegation,
};

// Handler for a rule, or nullopt when extraction must abort on it (Cut,
// non-safe user rules other than the registered negation rule).
std::optional<HandlerKind> handler_for(const RuleSchema& schema, const Signature& sig);

struct PolarityReport {
  SignedVars gamma;
  SignedVars substructure;  // Var±(X)
  SignedVars context;
  bool pos_ok = false;      // Var⁺(γ) ⊆ Var⁺(X) ∩ Var⁺(context)
  bool neg_ok = false;
};

struct InterpolationResult {
  Formula gamma;
  Polarity epsilon = Polarity::Co;  // ε_X of the occurrence
  DerivPtr side_derivation;         // X ⊢^ε γ
  DerivPtr ctx_derivation;          // (Π⊢Σ)[γ/X]
  PolarityReport polarity;
  bool l_star = false;              // γ uses structural-only connectives
};

// Maehara extraction at an occurrence of root(d). Throws std::runtime_error
// on Cut, unhandled rules, or a violated negation-rule side condition.
InterpolationResult maehara(const Derivation& d, const Occurrence& occ,
                            const RuleSet& rules, const SearchConfig& cfg);

// Lyndon interpolant: maehara at the whole antecedent (root must be a formula
// sequent).
InterpolationResult lyndon(const Derivation& d, const RuleSet& rules,
                           const SearchConfig& cfg);

struct VerifyReport {
  bool ok = false;
  bool side_derivable = false;
  bool ctx_derivable = false;
  bool pos_ok = false;
  bool neg_ok = false;
  Sequent side_sequent;
  Sequent ctx_sequent;
  std::string message;  // failing component, or "pass"
};

// Independent re-check: prove X ⊢^ε γ and (Π⊢Σ)[γ/X], re-check polarity.
VerifyReport verify(const Sequent& seq, const Occurrence& occ, const Formula& gamma,
                    const RuleSet& rules, const SearchConfig& cfg);

// Equivalence-preserving simplification (unit laws, absorption by ⊤/⊥,
// idempotence); fixpoint, bottom-up.
Formula simplify(const Formula& f);

// True iff every connective of f is operational in sig.
bool in_language(const Formula& f, const Signature& sig);

// JSON document: gamma, epsilon, left_proof, ctx_proof, polarity.
std::string interpolation_to_json(const InterpolationResult& r, const RuleSet& rules);

}  // namespace lei
