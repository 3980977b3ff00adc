#include "lei/display.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace lei {

namespace {

// Reserved marker leaf used to track an occurrence through display moves.
// Not parseable (atoms are lowercase identifiers; "_" never names an atom in
// signatures) so it cannot collide with user input.
Structure marker() { return sleaf(fatom("_")); }

bool is_marker(const Structure& s) {
  return s->kind == SKind::Leaf && s->formula->kind == FKind::Atom &&
         s->formula->name == "_";
}

}  // namespace

std::vector<std::pair<Sequent, DisplayStep>> neighbors(const Sequent& seq,
                                                       const RuleSet& rules) {
  std::vector<std::pair<Sequent, DisplayStep>> out;
  for (const auto& schema : rules.schemas) {
    if (schema.kind != RuleKind::Display) continue;
    for (auto& m : match_backward(schema, seq, rules.sig))
      out.emplace_back(m.premises.at(0), DisplayStep{schema.name});
  }
  return out;
}

std::vector<Sequent> closure(const Sequent& seq, const RuleSet& rules) {
  std::vector<Sequent> out;
  std::map<std::string, size_t> seen;
  std::deque<Sequent> work;
  work.push_back(seq);
  seen.emplace(print(seq), 0);
  while (!work.empty()) {
    Sequent cur = work.front();
    work.pop_front();
    out.push_back(cur);
    for (auto& [next, step] : neighbors(cur, rules)) {
      auto key = print(next);
      if (seen.emplace(key, out.size()).second) work.push_back(next);
    }
  }
  return out;
}

Sequent canonical(const Sequent& seq, const RuleSet& rules) {
  Sequent best = seq;
  std::string best_key = print(seq);
  for (const Sequent& s : closure(seq, rules)) {
    std::string key = print(s);
    if (key < best_key) {
      best_key = std::move(key);
      best = s;
    }
  }
  return best;
}

namespace {

// BFS with predecessor recording; stop when `done` holds. Returns the step
// list from `from` to the first sequent satisfying `done`, plus that sequent.
template <typename Pred>
std::optional<std::pair<Sequent, std::vector<DisplayStep>>> bfs_until(
    const Sequent& from, const RuleSet& rules, Pred done) {
  struct Entry {
    Sequent seq;
    int prev;          // index into entries, -1 for root
    std::string step;  // schema leading here from prev
  };
  std::vector<Entry> entries;
  std::map<std::string, size_t> seen;
  entries.push_back({from, -1, ""});
  seen.emplace(print(from), 0);
  for (size_t i = 0; i < entries.size(); ++i) {
    Sequent cur = entries[i].seq;  // copy: entries may reallocate below
    if (done(cur)) {
      std::vector<DisplayStep> steps;
      for (int j = static_cast<int>(i); entries[j].prev >= 0; j = entries[j].prev)
        steps.push_back({entries[j].step});
      std::reverse(steps.begin(), steps.end());
      return std::make_pair(cur, std::move(steps));
    }
    for (auto& [next, step] : neighbors(cur, rules)) {
      auto key = print(next);
      if (seen.emplace(key, entries.size()).second)
        entries.push_back({next, static_cast<int>(i), step.postulate});
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<DisplayStep> display_path(const Sequent& from, const Sequent& to,
                                      const RuleSet& rules) {
  auto r = bfs_until(from, rules, [&](const Sequent& s) { return equal(s, to); });
  if (!r) throw std::runtime_error("sequents are not display-equivalent");
  return r->second;
}

DisplayedForm isolate(const Sequent& seq, const Occurrence& occ, const RuleSet& rules) {
  Structure target = at(seq, occ);
  if (!target) throw std::runtime_error("invalid occurrence");
  Sequent marked = substitute(seq, occ, marker());
  auto r = bfs_until(marked, rules, [](const Sequent& s) {
    return is_marker(s.ante) || is_marker(s.succ);
  });
  if (!r) throw std::runtime_error("occurrence cannot be displayed");
  auto& [displayed_marked, steps] = *r;
  DisplayedForm df;
  df.epsilon = is_marker(displayed_marked.ante) ? Polarity::Co : Polarity::Contra;
  Occurrence root{df.epsilon == Polarity::Co ? Side::Ante : Side::Succ, {}};
  df.sequent = substitute(displayed_marked, root, target);
  df.steps = std::move(steps);
  df.source = occ;
  return df;
}

Sequent plug(const DisplayedForm& df, const Structure& replacement, const RuleSet& rules) {
  Occurrence root{df.epsilon == Polarity::Co ? Side::Ante : Side::Succ, {}};
  Sequent cur = substitute(df.sequent, root, replacement);
  for (auto it = df.steps.rbegin(); it != df.steps.rend(); ++it) {
    const RuleSchema* schema = rules.find(it->postulate);
    if (!schema) throw std::runtime_error("unknown postulate " + it->postulate);
    const RuleSchema* inv = rules.find(schema->inverse);
    if (!inv) throw std::runtime_error("postulate has no inverse: " + it->postulate);
    auto ms = match_backward(*inv, cur, rules.sig);
    if (ms.empty())
      throw std::runtime_error("inverse postulate " + inv->name + " does not apply");
    cur = ms.front().premises.at(0);
  }
  return cur;
}

}  // namespace lei
