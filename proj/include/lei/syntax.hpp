#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lei/signature.hpp"

namespace lei {

// ---------------------------------------------------------------- formulas

enum class FKind { Atom, Top, Bot, Meet, Join, App };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  FKind kind;
  std::string name;            // Atom / App
  std::vector<Formula> args;   // Meet/Join: 2, App: arity
};

Formula fatom(const std::string& name);
Formula ftop();
Formula fbot();
Formula fmeet(Formula a, Formula b);
Formula fjoin(Formula a, Formula b);
Formula fapp(const std::string& conn, std::vector<Formula> args);

bool equal(const Formula& a, const Formula& b);
size_t weight(const Formula& f);   // node count
size_t depth(const Formula& f);    // atoms/constants have depth 0

// --------------------------------------------------------------- structures

enum class SKind { Leaf, HatTop, CheckBot, SApp };

struct StructureNode;
using Structure = std::shared_ptr<const StructureNode>;

struct StructureNode {
  SKind kind;
  Formula formula;              // Leaf
  std::string conn;             // SApp
  bool hat = false;             // SApp flavor: hat (F) vs check (G)
  std::vector<Structure> args;  // SApp
};

Structure sleaf(Formula f);
Structure shat_top();
Structure scheck_bot();
Structure sapp(const std::string& conn, bool hat, std::vector<Structure> args);

bool equal(const Structure& a, const Structure& b);
size_t weight(const Structure& s);  // structure nodes + formula nodes

struct Sequent {
  Structure ante;
  Structure succ;
};

bool equal(const Sequent& a, const Sequent& b);
size_t weight(const Sequent& s);

// -------------------------------------------------------------- occurrences

enum class Side { Ante, Succ };

struct Occurrence {
  Side side = Side::Ante;
  std::vector<size_t> path;  // 0-based child indices from the side's root

  bool operator==(const Occurrence&) const = default;
};

// Subtree at an occurrence; null if the path does not resolve.
Structure at(const Sequent& seq, const Occurrence& occ);
Structure at(const Structure& s, const std::vector<size_t>& path);
// Path-based replacement (Π⊢Σ)[repl/occ]; throws on invalid occurrence.
Sequent substitute(const Sequent& seq, const Occurrence& occ, Structure repl);
Structure substitute(const Structure& s, const std::vector<size_t>& path, Structure repl);
// All structure-node occurrences of a sequent, preorder, ante side first.
std::vector<Occurrence> occurrences(const Sequent& seq);

// ε of a substructure occurrence: 1 if it displays as the whole antecedent.
Polarity epsilon(const Sequent& seq, const Occurrence& occ, const Signature& sig);

// ----------------------------------------------------------------- polarity

struct SignedVars {
  std::set<std::string> pos;
  std::set<std::string> neg;

  bool operator==(const SignedVars&) const = default;
};

SignedVars signed_vars(const Formula& f, const Signature& sig);
SignedVars signed_vars(const Structure& s, const Signature& sig);
// Union of per-side-root signed vars with the occurrence deleted.
SignedVars context_vars(const Sequent& seq, const Occurrence& occ, const Signature& sig);

// --------------------------------------------------------------- conversion

// Structural connectives → operational counterparts; HatTop→⊤, CheckBot→⊥.
// With l_only, a structural-only connective raises std::runtime_error.
Formula structure_to_formula(const Structure& s, const Signature& sig, bool l_only);

// Well-sortedness: arity, operational flags on formulas, hat/check flavor and
// argument sorts per order type. Returns error text, empty if fine.
std::string check_formula(const Formula& f, const Signature& sig);
std::string check_structure(const Structure& s, const Signature& sig, ConnKind sort);
std::string check_sequent(const Sequent& seq, const Signature& sig);

// ----------------------------------------------------------- parse / print

std::string print(const Formula& f);
std::string print(const Structure& s);
std::string print(const Sequent& s);
std::string print(const Occurrence& occ);  // "ante.1.2" style, 1-based

// Throw std::runtime_error with position info on bad input; results are
// checked for well-sortedness against the signature.
Formula parse_formula(const std::string& text, const Signature& sig);
Structure parse_structure(const std::string& text, const Signature& sig);
Sequent parse_sequent(const std::string& text, const Signature& sig);
Occurrence parse_occurrence(const std::string& text);

}  // namespace lei
