#pragma once

#include <vector>

#include "lei/calculus.hpp"

namespace lei {

struct DisplayStep {
  std::string postulate;  // display schema name (direction encoded as .fwd/.inv)
};

struct DisplayedForm {
  Sequent sequent;                 // target substructure at a root position
  Polarity epsilon = Polarity::Co; // 1 = whole antecedent, ∂ = whole succedent
  std::vector<DisplayStep> steps;  // from the original sequent
  Occurrence source;               // the occurrence that was isolated
};

// One postulate application in every applicable direction.
std::vector<std::pair<Sequent, DisplayStep>> neighbors(const Sequent& seq,
                                                       const RuleSet& rules);

// Full ≡_D class, BFS discovery order (first element is seq).
std::vector<Sequent> closure(const Sequent& seq, const RuleSet& rules);

// Lexicographically least printed member of closure(seq).
Sequent canonical(const Sequent& seq, const RuleSet& rules);

// Schema-name path from `from` to `to` within the closure; each step names the
// schema whose backward application maps the current sequent to the next.
// Throws if `to` is not display-equivalent to `from`.
std::vector<DisplayStep> display_path(const Sequent& from, const Sequent& to,
                                      const RuleSet& rules);

// Display property: surface the substructure at occ as a whole side.
DisplayedForm isolate(const Sequent& seq, const Occurrence& occ, const RuleSet& rules);

// Substitute at the displayed root and replay the inverse steps.
Sequent plug(const DisplayedForm& df, const Structure& replacement, const RuleSet& rules);

}  // namespace lei
