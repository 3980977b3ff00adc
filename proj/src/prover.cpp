#include "lei/prover.hpp"

#include <map>
#include <set>

#include <nlohmann/json.hpp>

namespace lei {

DerivPtr make_derivation(Sequent seq, std::string rule, Instantiation inst,
                         std::vector<DerivPtr> children) {
  return std::make_shared<Derivation>(
      Derivation{std::move(seq), std::move(rule), std::move(inst), std::move(children)});
}

namespace {

class Prover {
 public:
  Prover(const RuleSet& rules, const SearchConfig& cfg) : rules_(rules), cfg_(cfg) {
    for (const auto& s : rules_.schemas) {
      switch (s.kind) {
        case RuleKind::Axiom: axioms_.push_back(&s); break;
        case RuleKind::Cut:
        case RuleKind::Display: break;
        case RuleKind::Weakening: weakenings_.push_back(&s); break;
        case RuleKind::Structural: structural_.push_back(&s); break;
        default: logical_.push_back(&s); break;
      }
    }
  }

  SearchResult run(const Sequent& goal) {
    // Structural rules that duplicate a metavariable (e.g. a negation rule
    // with premise X |- neg X) let backward search grow sequents without
    // bound; cap subgoal weight relative to the root goal.
    weight_cap_ = weight(goal) + 16;
    FailInfo info;
    DerivPtr d = search(goal, cfg_.depth, info);
    pending_.clear();
    if (d) return {SearchStatus::Proved, d};
    // Loop cuts prune only derivations that could be shortened, so failure is
    // definitive unless the depth budget itself was cut somewhere.
    return {info.depth_cut || info.capped ? SearchStatus::DepthExceeded
                                          : SearchStatus::NotProved,
            nullptr};
  }

 private:
  // Derivation of `outer` given a derivation of a display-equivalent sequent.
  DerivPtr wrap_display(const Sequent& outer, DerivPtr inner) {
    if (equal(outer, inner->sequent)) return inner;
    auto steps = display_path(outer, inner->sequent, rules_);
    // Recompute intermediate sequents (and instantiations for the checker).
    std::vector<std::pair<Sequent, Match>> chain;  // conclusion + its match
    Sequent cur = outer;
    for (const auto& st : steps) {
      const RuleSchema* schema = rules_.find(st.postulate);
      auto ms = match_backward(*schema, cur, rules_.sig);
      chain.emplace_back(cur, ms.at(0));
      cur = ms.at(0).premises.at(0);
    }
    DerivPtr d = std::move(inner);
    for (size_t i = chain.size(); i-- > 0;) {
      d = make_derivation(chain[i].first, steps[i].postulate,
                          std::move(chain[i].second.inst), {d});
    }
    return d;
  }

  struct FailInfo {
    bool depth_cut = false;            // some alternative ran out of depth budget
    bool capped = false;               // some alternative hit the weight cap
    std::set<std::string> cut_keys;    // unresolved loop-cut targets (branch keys)
  };

  struct CondFail {
    std::set<std::string> deps;  // failure holds while these are on the branch
    bool capped = false;
  };

  // Tabled backward search. A failed node's contingencies are the loop-cut
  // targets reached in its subtree; a target's key is erased when that node
  // itself completes with failure, so an empty set means the exploration was
  // exhaustive up to internal cycles and the failure is absolute (modulo the
  // weight cap, which only taints the reported status, and barring depth
  // cuts, which make a failure unreusable). Non-empty sets are cached
  // conditionally and reusable while every dependency is still on the branch.
  DerivPtr search(const Sequent& goal, size_t depth, FailInfo& fail_info) {
    Sequent canon = canonical(goal, rules_);
    std::string ckey = print(canon);
    if (branch_.count(ckey)) {
      fail_info.cut_keys.insert(ckey);
      return nullptr;
    }
    if (cfg_.memo) {
      auto it = memo_.find(ckey);
      if (it != memo_.end()) return wrap_display(goal, it->second);
      if (failed_.count(ckey)) return nullptr;
      if (failed_capped_.count(ckey)) {
        fail_info.capped = true;
        return nullptr;
      }
      auto cit = cond_failed_.find(ckey);
      if (cit != cond_failed_.end()) {
        bool live = true;
        for (const auto& dep : cit->second.deps)
          if (!branch_.count(dep)) { live = false; break; }
        if (live) {
          fail_info.capped = fail_info.capped || cit->second.capped;
          fail_info.cut_keys.insert(cit->second.deps.begin(), cit->second.deps.end());
          return nullptr;
        }
      }
    }
    if (depth == 0) {
      fail_info.depth_cut = true;
      return nullptr;
    }
    if (weight(goal) > weight_cap_) {
      fail_info.capped = true;
      return nullptr;
    }
    size_t pending_base = pending_.size();
    branch_.insert(ckey);
    DerivPtr found;
    FailInfo agg;
    std::vector<Sequent> cls = closure(goal, rules_);
    const std::vector<const RuleSchema*>* phases[] = {&axioms_, &logical_, &weakenings_,
                                                      &structural_};
    for (const auto* phase : phases) {
      if (phase == &structural_ && !cfg_.structural_rules) continue;
      for (const Sequent& s : cls) {
        for (const RuleSchema* schema : *phase) {
          for (auto& m : match_backward(*schema, s, rules_.sig)) {
            std::vector<DerivPtr> children;
            bool ok = true;
            for (const Sequent& prem : m.premises) {
              FailInfo sub;
              DerivPtr c = search(prem, depth - 1, sub);
              if (!c) {
                ok = false;
                agg.depth_cut = agg.depth_cut || sub.depth_cut;
                agg.capped = agg.capped || sub.capped;
                agg.cut_keys.insert(sub.cut_keys.begin(), sub.cut_keys.end());
                break;
              }
              children.push_back(std::move(c));
            }
            if (!ok) continue;
            found = wrap_display(goal, make_derivation(s, schema->name, std::move(m.inst),
                                                       std::move(children)));
            break;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
    branch_.erase(ckey);
    if (found) {
      if (cfg_.memo) memo_.emplace(ckey, wrap_display(canon, found));
      return found;
    }
    agg.cut_keys.erase(ckey);
    if (!agg.depth_cut && agg.cut_keys.empty()) {
      // Absolute failure: promote this node and all pending descendants.
      if (cfg_.memo) {
        auto& cache = agg.capped ? failed_capped_ : failed_;
        cache.insert(ckey);
        for (size_t i = pending_base; i < pending_.size(); ++i)
          cache.insert(std::move(pending_[i]));
      }
      pending_.resize(pending_base);
      fail_info.capped = fail_info.capped || agg.capped;
      return nullptr;
    }
    if (cfg_.memo && !agg.depth_cut) {
      cond_failed_[ckey] = CondFail{agg.cut_keys, agg.capped};
      pending_.push_back(ckey);
    }
    fail_info.depth_cut = fail_info.depth_cut || agg.depth_cut;
    fail_info.capped = fail_info.capped || agg.capped;
    fail_info.cut_keys.insert(agg.cut_keys.begin(), agg.cut_keys.end());
    return nullptr;
  }

  const RuleSet& rules_;
  SearchConfig cfg_;
  std::vector<const RuleSchema*> axioms_, logical_, weakenings_, structural_;
  std::set<std::string> branch_;           // canonical prints on the current path
  std::map<std::string, DerivPtr> memo_;   // canonical print → derivation of it
  std::set<std::string> failed_;           // canonical prints with absolute failure
  std::set<std::string> failed_capped_;    // ditto, but the weight cap was involved
  std::vector<std::string> pending_;       // failed nodes awaiting cycle resolution
  std::map<std::string, CondFail> cond_failed_;
  size_t weight_cap_ = SIZE_MAX;
};

}  // namespace

SearchResult prove(const Sequent& goal, const RuleSet& rules, const SearchConfig& cfg) {
  return Prover(rules, cfg).run(goal);
}

CheckReport check(const Derivation& d, const RuleSet& rules) {
  const RuleSchema* schema = rules.find(d.rule);
  if (!schema) return {false, "unknown rule " + d.rule + " at " + print(d.sequent)};
  Sequent concl;
  try {
    concl = instantiate(schema->conclusion, d.inst);
  } catch (const std::exception& e) {
    return {false, std::string("bad instantiation at ") + print(d.sequent) + ": " + e.what()};
  }
  if (!equal(concl, d.sequent))
    return {false, "rule " + d.rule + " does not conclude " + print(d.sequent)};
  if (auto e = check_sequent(d.sequent, rules.sig); !e.empty())
    return {false, "ill-sorted sequent " + print(d.sequent) + ": " + e};
  if (schema->premises.size() != d.children.size())
    return {false, "premise count mismatch for " + d.rule + " at " + print(d.sequent)};
  for (size_t i = 0; i < d.children.size(); ++i) {
    Sequent prem;
    try {
      prem = instantiate(schema->premises[i], d.inst);
    } catch (const std::exception& e) {
      return {false, std::string("bad instantiation at ") + print(d.sequent) + ": " + e.what()};
    }
    if (!equal(prem, d.children[i]->sequent))
      return {false, "premise " + std::to_string(i + 1) + " of " + d.rule + " at " +
                         print(d.sequent) + " should be " + print(prem)};
    CheckReport sub = check(*d.children[i], rules);
    if (!sub.ok) return sub;
  }
  return {true, "valid"};
}

namespace {
nlohmann::ordered_json derivation_json(const Derivation& d) {
  nlohmann::ordered_json j;
  j["sequent"] = print(d.sequent);
  j["rule"] = d.rule;
  nlohmann::ordered_json inst = nlohmann::ordered_json::object();
  for (const auto& [k, v] : d.inst.svars) inst[k] = print(v);
  for (const auto& [k, v] : d.inst.fvars) inst[k] = print(v);
  j["instantiation"] = std::move(inst);
  nlohmann::ordered_json kids = nlohmann::ordered_json::array();
  for (const auto& c : d.children) kids.push_back(derivation_json(*c));
  j["children"] = std::move(kids);
  return j;
}
}  // namespace

std::string derivation_to_json(const Derivation& d) {
  return derivation_json(d).dump(2);
}

}  // namespace lei
