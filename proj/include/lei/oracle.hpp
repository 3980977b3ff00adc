#pragma once

#include "lei/interpolate.hpp"

namespace lei {

struct CandidateSpace {
  std::set<std::string> pos;           // allowed positive atoms
  std::set<std::string> neg;           // allowed negative atoms
  std::vector<std::string> conns;      // operational connective names
  bool lattice = true;                 // allow ∧ / ∨
  size_t depth = 0;
};

// The space induced by a Maehara problem: shared signed variables of the
// substructure and its context, all operational connectives of the signature.
CandidateSpace candidate_space(const Sequent& seq, const Occurrence& occ,
                               const RuleSet& rules, size_t depth);

// All formulas of depth ≤ space.depth whose signed variables respect the
// space; syntactically deduplicated, ordered by (depth, printed form).
std::vector<Formula> enumerate(const CandidateSpace& space, const Signature& sig);

// Membership test equivalent to `f ∈ enumerate(space)` without materializing
// the set.
bool contains(const CandidateSpace& space, const Formula& f, const Signature& sig);

// Every enumerated candidate passing verify(); exhaustive within the space.
std::vector<Formula> find_interpolants(const Sequent& seq, const Occurrence& occ,
                                       size_t depth, const RuleSet& rules,
                                       const SearchConfig& cfg);

// Lazy membership check: candidate is in the space and passes verify().
bool is_interpolant_in_space(const Sequent& seq, const Occurrence& occ,
                             const Formula& gamma, size_t depth, const RuleSet& rules,
                             const SearchConfig& cfg);

}  // namespace lei
