#pragma once

#include <memory>

#include "lei/display.hpp"

namespace lei {

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

struct Derivation {
  Sequent sequent;
  std::string rule;
  Instantiation inst;
  std::vector<DerivPtr> children;
};

DerivPtr make_derivation(Sequent seq, std::string rule, Instantiation inst,
                         std::vector<DerivPtr> children);

struct SearchConfig {
  size_t depth = 64;
  bool structural_rules = true;  // enable user structural rules (weakenings stay on)
  bool memo = true;
};

enum class SearchStatus { Proved, NotProved, DepthExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::NotProved;
  DerivPtr derivation;  // set iff Proved
};

// Cut-free backward search: axioms, then logical rules, then structural rules,
// each tried over every member of closure(goal); per-branch loop check on
// canonical(sequent); depth bounds the number of rule applications per branch.
SearchResult prove(const Sequent& goal, const RuleSet& rules, const SearchConfig& cfg);

struct CheckReport {
  bool ok = true;
  std::string message;  // first violation
};

// Forward checker; admits Cut.
CheckReport check(const Derivation& d, const RuleSet& rules);

// Tree-structured JSON: sequent / rule / instantiation / children, stable key
// order, 2-space indent.
std::string derivation_to_json(const Derivation& d);

}  // namespace lei
