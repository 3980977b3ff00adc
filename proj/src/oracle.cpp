#include "lei/oracle.hpp"

#include <algorithm>
#include <map>

namespace lei {

CandidateSpace candidate_space(const Sequent& seq, const Occurrence& occ,
                               const RuleSet& rules, size_t depth) {
  CandidateSpace sp;
  SignedVars sub = signed_vars(at(seq, occ), rules.sig);
  SignedVars ctx = context_vars(seq, occ, rules.sig);
  for (const auto& a : sub.pos)
    if (ctx.pos.count(a)) sp.pos.insert(a);
  for (const auto& a : sub.neg)
    if (ctx.neg.count(a)) sp.neg.insert(a);
  for (const Connective* c : rules.sig.all())
    if (c->operational) sp.conns.push_back(c->name);
  sp.depth = depth;
  return sp;
}

namespace {

bool respects(const CandidateSpace& sp, const Formula& f, const Signature& sig) {
  SignedVars sv = signed_vars(f, sig);
  for (const auto& a : sv.pos)
    if (!sp.pos.count(a)) return false;
  for (const auto& a : sv.neg)
    if (!sp.neg.count(a)) return false;
  return true;
}

bool uses_allowed_conns(const CandidateSpace& sp, const Formula& f) {
  switch (f->kind) {
    case FKind::Meet:
    case FKind::Join:
      if (!sp.lattice) return false;
      break;
    case FKind::App:
      if (std::find(sp.conns.begin(), sp.conns.end(), f->name) == sp.conns.end())
        return false;
      break;
    default: break;
  }
  for (const auto& a : f->args)
    if (!uses_allowed_conns(sp, a)) return false;
  return true;
}

}  // namespace

std::vector<Formula> enumerate(const CandidateSpace& space, const Signature& sig) {
  // Layered construction: layer d = all formulas of depth ≤ d. The polarity
  // filter runs at the end: a subformula may violate the space while the whole
  // formula (under a contravariant connective) respects it.
  std::vector<std::vector<Formula>> layers;
  std::vector<Formula> base;
  base.push_back(ftop());
  base.push_back(fbot());
  std::set<std::string> atoms = space.pos;
  atoms.insert(space.neg.begin(), space.neg.end());
  for (const auto& a : atoms) base.push_back(fatom(a));
  layers.push_back(base);
  for (size_t d = 1; d <= space.depth; ++d) {
    std::set<std::string> seen;
    std::vector<Formula> layer;
    for (const auto& f : layers.back()) {
      layer.push_back(f);
      seen.insert(print(f));
    }
    auto add = [&](Formula f) {
      if (seen.insert(print(f)).second) layer.push_back(std::move(f));
    };
    const auto& prev = layers.back();
    if (space.lattice) {
      for (const auto& a : prev)
        for (const auto& b : prev) {
          add(fmeet(a, b));
          add(fjoin(a, b));
        }
    }
    for (const auto& name : space.conns) {
      const Connective* c = sig.find(name);
      if (!c || c->arity == 0) continue;
      // All argument tuples from the previous layer.
      std::vector<size_t> idx(c->arity, 0);
      while (true) {
        std::vector<Formula> args;
        for (size_t i = 0; i < c->arity; ++i) args.push_back(prev[idx[i]]);
        add(fapp(name, std::move(args)));
        size_t i = 0;
        for (; i < c->arity; ++i) {
          if (++idx[i] < prev.size()) break;
          idx[i] = 0;
        }
        if (i == c->arity) break;
      }
    }
    layers.push_back(std::move(layer));
  }
  std::vector<Formula> out;
  for (const auto& f : layers.back())
    if (respects(space, f, sig)) out.push_back(f);
  std::stable_sort(out.begin(), out.end(), [&](const Formula& a, const Formula& b) {
    size_t da = depth(a), db = depth(b);
    if (da != db) return da < db;
    return print(a) < print(b);
  });
  return out;
}

bool contains(const CandidateSpace& space, const Formula& f, const Signature& sig) {
  return depth(f) <= space.depth && uses_allowed_conns(space, f) &&
         respects(space, f, sig);
}

std::vector<Formula> find_interpolants(const Sequent& seq, const Occurrence& occ,
                                       size_t depth, const RuleSet& rules,
                                       const SearchConfig& cfg) {
  CandidateSpace sp = candidate_space(seq, occ, rules, depth);
  std::vector<Formula> out;
  for (const Formula& f : enumerate(sp, rules.sig))
    if (verify(seq, occ, f, rules, cfg).ok) out.push_back(f);
  return out;
}

bool is_interpolant_in_space(const Sequent& seq, const Occurrence& occ,
                             const Formula& gamma, size_t depth, const RuleSet& rules,
                             const SearchConfig& cfg) {
  CandidateSpace sp = candidate_space(seq, occ, rules, depth);
  return contains(sp, gamma, rules.sig) && verify(seq, occ, gamma, rules, cfg).ok;
}

}  // namespace lei
