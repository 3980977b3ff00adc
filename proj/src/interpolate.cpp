#include "lei/interpolate.hpp"

#include <nlohmann/json.hpp>

namespace lei {

namespace {

// Where an occurrence path lands in a conclusion pattern: inside (or exactly
// at) a metavariable image, or at a rigid pattern node.
struct Loc {
  bool is_var = false;
  std::string var;
  std::vector<size_t> rest;      // remainder of the path inside the var image
  const MetaNode* rigid = nullptr;
};

Loc locate(const Meta& root, const std::vector<size_t>& path) {
  const MetaNode* cur = root.get();
  for (size_t i = 0; i < path.size(); ++i) {
    if (cur->kind == MKind::Var)
      return {true, cur->name, {path.begin() + i, path.end()}, nullptr};
    if (cur->kind != MKind::MApp || path[i] >= cur->args.size())
      throw std::runtime_error("occurrence does not fit the rule conclusion");
    cur = cur->args[path[i]].get();
  }
  if (cur->kind == MKind::Var) return {true, cur->name, {}, nullptr};
  return {false, "", {}, cur};
}

bool is_bare_var(const Meta& m) { return m->kind == MKind::Var; }

// The fundamental-logic negation rule: X ⊢ ň(X) / X ⊢ Y with ň self-Galois.
bool is_negation_rule(const RuleSchema& s, const Signature& sig) {
  if (s.origin != RuleOrigin::User || s.premises.size() != 1) return false;
  const MetaSequent& c = s.conclusion;
  const MetaSequent& p = s.premises[0];
  if (!is_bare_var(c.ante) || !is_bare_var(c.succ) || !is_bare_var(p.ante)) return false;
  if (p.ante->name != c.ante->name || c.ante->name == c.succ->name) return false;
  const Meta& ps = p.succ;
  if (ps->kind != MKind::MApp || ps->args.size() != 1 || !is_bare_var(ps->args[0]) ||
      ps->args[0]->name != c.ante->name)
    return false;
  const Connective* n = sig.find(ps->name);
  return n && n->kind == ConnKind::G && n->arity == 1 &&
         n->order_type.coords[0] == Polarity::Contra && n->self_residual == 1;
}

// Prop. precondition for the negation handler: all operational connectives of
// the signature are unary (conjunction/disjunction live outside the signature).
bool all_operational_unary(const Signature& sig) {
  for (const Connective* c : sig.all())
    if (c->operational && c->arity > 1) return false;
  return true;
}

}  // namespace

std::optional<HandlerKind> handler_for(const RuleSchema& schema, const Signature& sig) {
  switch (schema.kind) {
    case RuleKind::Cut: return std::nullopt;
    case RuleKind::Display:
    case RuleKind::Weakening: return HandlerKind::MetavarCombination;
    case RuleKind::Structural: break;
    default: return HandlerKind::PrincipalCase;
  }
  if (is_negation_rule(schema, sig)) {
    if (!all_operational_unary(sig)) return std::nullopt;
    return HandlerKind::FundamentalNegation;
  }
  if (classify_safety(schema) == Safety::InterpolationSafe)
    return HandlerKind::SafeStructural;
  return std::nullopt;
}

namespace {

class Extractor {
 public:
  Extractor(const RuleSet& rules) : rules_(rules) {}

  Formula run(const Derivation& d, const Occurrence& occ) { return gamma(d, occ); }

  bool l_star() const { return l_star_; }

 private:
  Formula top_eps(Polarity eps) { return eps == Polarity::Co ? ftop() : fbot(); }

  Formula combine(const std::vector<Formula>& gs, Polarity eps) {
    if (gs.empty()) return top_eps(eps);
    Formula acc = gs.front();
    for (size_t i = 1; i < gs.size(); ++i)
      acc = eps == Polarity::Co ? fmeet(acc, gs[i]) : fjoin(acc, gs[i]);
    return acc;
  }

  // Case (a): occ inside the image of metavariable `var` with path remainder
  // `rest`; recurse into every premise where the variable occurs.
  Formula metavar_case(const Derivation& d, const RuleSchema& schema,
                       const std::string& var, const std::vector<size_t>& rest,
                       Polarity eps) {
    std::vector<Formula> gs;
    for (size_t i = 0; i < schema.premises.size(); ++i) {
      std::vector<VarOccurrence> here;
      for (const auto& vo : var_occurrences(schema.premises[i]))
        if (vo.var == var) here.push_back(vo);
      if (here.empty()) continue;
      if (here.size() > 1)
        throw std::runtime_error("rule " + schema.name +
                                 " duplicates a metavariable in a premise; extraction "
                                 "is not supported for it");
      Occurrence prem_occ = here[0].occ;
      prem_occ.path.insert(prem_occ.path.end(), rest.begin(), rest.end());
      gs.push_back(gamma(*d.children.at(i), prem_occ));
    }
    return combine(gs, eps);
  }

  // Logical counterpart u[τ̄] of a rigid metastructure.
  Formula counterpart(const Meta& u, const std::map<std::string, Formula>& taus) {
    switch (u->kind) {
      case MKind::Var: return taus.at(u->name);
      case MKind::MHatTop: return ftop();
      case MKind::MCheckBot: return fbot();
      case MKind::MApp: {
        const Connective* c = rules_.sig.find(u->name);
        if (c && !c->operational) l_star_ = true;
        std::vector<Formula> args;
        for (const auto& a : u->args) args.push_back(counterpart(a, taus));
        return fapp(u->name, std::move(args));
      }
      case MKind::MFormula: break;
    }
    throw std::runtime_error("formula inside a structural-rule conclusion");
  }

  Formula structure_counterpart(const Structure& s) {
    const Connective* bad = nullptr;
    std::function<void(const Structure&)> scan = [&](const Structure& t) {
      if (t->kind == SKind::SApp) {
        const Connective* c = rules_.sig.find(t->conn);
        if (c && !c->operational) bad = c;
        for (const auto& a : t->args) scan(a);
      }
    };
    scan(s);
    if (bad) l_star_ = true;
    return structure_to_formula(s, rules_.sig, false);
  }

  // Case (h): the negation rule X ⊢ ňX / X ⊢ Y.
  Formula negation_case(const Derivation& d, const Occurrence& occ) {
    // Reapply the rule with Y := ⊥̌, then display the occurrence; the
    // interpolant is the logical counterpart of the exposed context plugged
    // with ⊥ (π'[⊥]).
    Sequent s2{d.sequent.ante, scheck_bot()};
    DisplayedForm df = isolate(s2, {Side::Ante, occ.path}, rules_);
    Structure ctx = df.epsilon == Polarity::Co ? df.sequent.succ : df.sequent.ante;
    Formula g = structure_counterpart(ctx);
    if (!signed_vars(g, rules_.sig).pos.empty() ||
        !signed_vars(g, rules_.sig).neg.empty())
      throw std::runtime_error(
          "negation-rule side condition violated: displayed context is not "
          "variable-free");
    return g;
  }

  // Case (g): occ at a rigid subtree U of a safe structural rule's conclusion.
  Formula safe_case(const Derivation& d, const RuleSchema& schema, const Meta& u,
                    Side occ_side) {
    // Which side is the isolated metavariable?
    bool iso_ante = is_bare_var(schema.conclusion.ante);
    if (iso_ante) {
      for (const auto& p : schema.premises)
        if (!is_bare_var(p.ante) || p.ante->name != schema.conclusion.ante->name)
          iso_ante = false;
    }
    Side non_iso = iso_ante ? Side::Succ : Side::Ante;
    if (occ_side != non_iso)
      throw std::runtime_error("unexpected occurrence side in safe structural rule");
    // Metavariables of U.
    std::set<std::string> u_vars;
    std::map<std::string, ConnKind> u_sorts;
    std::function<void(const Meta&)> collect = [&](const Meta& m) {
      if (m->kind == MKind::Var) {
        u_vars.insert(m->name);
        u_sorts[m->name] = m->sort;
      }
      for (const auto& a : m->args) collect(a);
    };
    collect(u);
    std::map<std::string, std::vector<Formula>> groups;
    for (size_t i = 0; i < schema.premises.size(); ++i) {
      const MetaSequent& p = schema.premises[i];
      std::vector<VarOccurrence> side_occs;
      for (const auto& vo : var_occurrences(p))
        if (vo.occ.side == non_iso) side_occs.push_back(vo);
      if (side_occs.size() > 1)
        throw std::runtime_error("rule " + schema.name + " is not interpolation-safe");
      if (side_occs.empty() || !u_vars.count(side_occs[0].var)) continue;
      groups[side_occs[0].var].push_back(gamma(*d.children.at(i), side_occs[0].occ));
    }
    std::map<std::string, Formula> taus;
    for (const auto& v : u_vars) {
      Polarity eps = u_sorts[v] == ConnKind::F ? Polarity::Co : Polarity::Contra;
      taus[v] = combine(groups[v], eps);
    }
    return counterpart(u, taus);
  }

  Formula gamma(const Derivation& d, const Occurrence& occ) {
    const RuleSchema* schema = rules_.find(d.rule);
    if (!schema) throw std::runtime_error("unknown rule " + d.rule);
    if (schema->kind == RuleKind::Cut)
      throw std::runtime_error("derivation contains Cut; extraction requires a "
                               "cut-free derivation");
    auto handler = handler_for(*schema, rules_.sig);
    if (!handler)
      throw std::runtime_error("no interpolation handler for rule " + schema->name);
    Polarity eps = epsilon(d.sequent, occ, rules_.sig);
    const Meta& side_pat =
        occ.side == Side::Ante ? schema->conclusion.ante : schema->conclusion.succ;
    Loc loc = locate(side_pat, occ.path);

    if (*handler == HandlerKind::FundamentalNegation) {
      // occ on the fresh side Y → ⊤^ε; inside the X side → case (h).
      if (occ.side == Side::Succ) return top_eps(eps);
      return negation_case(d, occ);
    }
    if (loc.is_var) return metavar_case(d, *schema, loc.var, loc.rest, eps);

    // Rigid node.
    if (*handler == HandlerKind::SafeStructural) {
      Meta u(loc.rigid, [](const MetaNode*) {});  // aliases the schema's node
      return safe_case(d, *schema, u, occ.side);
    }
    // Builtin rules: rigid nodes only occur at a root.
    Occurrence ante_root{Side::Ante, {}};
    Occurrence succ_root{Side::Succ, {}};
    switch (schema->kind) {
      case RuleKind::Axiom: {
        if (schema->name == "id") return d.inst.fvars.at("p");
        if (schema->name == "ax.top.atom" || schema->name == "ax.top.unit") return ftop();
        return fbot();  // ax.bot.atom / ax.bot.unit
      }
      case RuleKind::AndR:
        return fmeet(gamma(*d.children.at(0), succ_root),
                     gamma(*d.children.at(1), succ_root));
      case RuleKind::OrL:
        return fjoin(gamma(*d.children.at(0), ante_root),
                     gamma(*d.children.at(1), ante_root));
      case RuleKind::AndL:
        return gamma(*d.children.at(0), ante_root);
      case RuleKind::OrR:
        return gamma(*d.children.at(0), succ_root);
      case RuleKind::FR:
      case RuleKind::GL: {
        std::vector<Formula> sigmas;
        for (const auto& c : d.children) sigmas.push_back(gamma(*c, ante_root));
        return fapp(schema->conn, std::move(sigmas));
      }
      default: {
        // ⊤_L, ⊥_R, f_L, g_R, display postulates: a root occurrence asks for a
        // Lyndon interpolant of the whole sequent, so flip to the opposite
        // root, which is a bare metavariable in all these schemas.
        const Meta& other =
            occ.side == Side::Ante ? schema->conclusion.succ : schema->conclusion.ante;
        if (!is_bare_var(other))
          throw std::runtime_error("unhandled rigid occurrence in rule " + schema->name);
        return metavar_case(d, *schema, other->name, {}, eps);
      }
    }
  }

  const RuleSet& rules_;
  bool l_star_ = false;
};

Sequent side_sequent(const Sequent& seq, const Occurrence& occ, Polarity eps,
                     const Formula& gamma) {
  Structure x = at(seq, occ);
  if (eps == Polarity::Co) return {x, sleaf(gamma)};
  return {sleaf(gamma), x};
}

PolarityReport polarity_report(const Sequent& seq, const Occurrence& occ,
                               const Formula& gamma, const Signature& sig) {
  PolarityReport r;
  r.gamma = signed_vars(gamma, sig);
  r.substructure = signed_vars(at(seq, occ), sig);
  r.context = context_vars(seq, occ, sig);
  auto subset = [](const std::set<std::string>& a, const std::set<std::string>& b,
                   const std::set<std::string>& c) {
    for (const auto& x : a)
      if (!b.count(x) || !c.count(x)) return false;
    return true;
  };
  r.pos_ok = subset(r.gamma.pos, r.substructure.pos, r.context.pos);
  r.neg_ok = subset(r.gamma.neg, r.substructure.neg, r.context.neg);
  return r;
}

}  // namespace

InterpolationResult maehara(const Derivation& d, const Occurrence& occ,
                            const RuleSet& rules, const SearchConfig& cfg) {
  if (!at(d.sequent, occ)) throw std::runtime_error("invalid occurrence");
  Extractor ex(rules);
  InterpolationResult r;
  r.gamma = ex.run(d, occ);
  r.l_star = ex.l_star();
  r.epsilon = epsilon(d.sequent, occ, rules.sig);
  Sequent side = side_sequent(d.sequent, occ, r.epsilon, r.gamma);
  Sequent ctx = substitute(d.sequent, occ, sleaf(r.gamma));
  SearchResult sr = prove(side, rules, cfg);
  if (sr.status != SearchStatus::Proved)
    throw std::runtime_error("extracted interpolant: witness " + print(side) +
                             " did not re-prove");
  SearchResult cr = prove(ctx, rules, cfg);
  if (cr.status != SearchStatus::Proved)
    throw std::runtime_error("extracted interpolant: witness " + print(ctx) +
                             " did not re-prove");
  r.side_derivation = sr.derivation;
  r.ctx_derivation = cr.derivation;
  r.polarity = polarity_report(d.sequent, occ, r.gamma, rules.sig);
  return r;
}

InterpolationResult lyndon(const Derivation& d, const RuleSet& rules,
                           const SearchConfig& cfg) {
  if (d.sequent.ante->kind != SKind::Leaf || d.sequent.succ->kind != SKind::Leaf)
    throw std::runtime_error("Lyndon interpolation requires a formula sequent");
  return maehara(d, {Side::Ante, {}}, rules, cfg);
}

VerifyReport verify(const Sequent& seq, const Occurrence& occ, const Formula& gamma,
                    const RuleSet& rules, const SearchConfig& cfg) {
  VerifyReport r;
  Structure x = at(seq, occ);
  if (!x) {
    r.message = "invalid occurrence";
    return r;
  }
  Polarity eps = epsilon(seq, occ, rules.sig);
  r.side_sequent = side_sequent(seq, occ, eps, gamma);
  r.ctx_sequent = substitute(seq, occ, sleaf(gamma));
  r.side_derivable = prove(r.side_sequent, rules, cfg).status == SearchStatus::Proved;
  r.ctx_derivable = prove(r.ctx_sequent, rules, cfg).status == SearchStatus::Proved;
  PolarityReport p = polarity_report(seq, occ, gamma, rules.sig);
  r.pos_ok = p.pos_ok;
  r.neg_ok = p.neg_ok;
  r.ok = r.side_derivable && r.ctx_derivable && r.pos_ok && r.neg_ok;
  if (r.ok) r.message = "pass";
  else if (!r.side_derivable) r.message = "not derivable: " + print(r.side_sequent);
  else if (!r.ctx_derivable) r.message = "not derivable: " + print(r.ctx_sequent);
  else r.message = "polarity inclusion fails";
  return r;
}

Formula simplify(const Formula& f) {
  if (f->kind != FKind::Meet && f->kind != FKind::Join) {
    if (f->kind == FKind::App) {
      std::vector<Formula> args;
      for (const auto& a : f->args) args.push_back(simplify(a));
      return fapp(f->name, std::move(args));
    }
    return f;
  }
  Formula a = simplify(f->args[0]);
  Formula b = simplify(f->args[1]);
  if (f->kind == FKind::Meet) {
    if (a->kind == FKind::Top) return b;
    if (b->kind == FKind::Top) return a;
    if (a->kind == FKind::Bot || b->kind == FKind::Bot) return fbot();
    if (equal(a, b)) return a;
    return fmeet(a, b);
  }
  if (a->kind == FKind::Bot) return b;
  if (b->kind == FKind::Bot) return a;
  if (a->kind == FKind::Top || b->kind == FKind::Top) return ftop();
  if (equal(a, b)) return a;
  return fjoin(a, b);
}

bool in_language(const Formula& f, const Signature& sig) {
  if (f->kind == FKind::App) {
    const Connective* c = sig.find(f->name);
    if (!c || !c->operational) return false;
  }
  for (const auto& a : f->args)
    if (!in_language(a, sig)) return false;
  return true;
}

std::string interpolation_to_json(const InterpolationResult& r, const RuleSet& rules) {
  (void)rules;
  nlohmann::ordered_json j;
  j["gamma"] = print(r.gamma);
  j["epsilon"] = r.epsilon == Polarity::Co ? "1" : "d";
  j["left_proof"] = nlohmann::ordered_json::parse(derivation_to_json(*r.side_derivation));
  j["ctx_proof"] = nlohmann::ordered_json::parse(derivation_to_json(*r.ctx_derivation));
  nlohmann::ordered_json pol;
  auto setvec = [](const std::set<std::string>& s) {
    return std::vector<std::string>(s.begin(), s.end());
  };
  pol["gamma_pos"] = setvec(r.polarity.gamma.pos);
  pol["gamma_neg"] = setvec(r.polarity.gamma.neg);
  pol["substructure_pos"] = setvec(r.polarity.substructure.pos);
  pol["substructure_neg"] = setvec(r.polarity.substructure.neg);
  pol["context_pos"] = setvec(r.polarity.context.pos);
  pol["context_neg"] = setvec(r.polarity.context.neg);
  pol["pos_ok"] = r.polarity.pos_ok;
  pol["neg_ok"] = r.polarity.neg_ok;
  j["polarity"] = std::move(pol);
  j["l_star"] = r.l_star;
  return j.dump(2);
}

}  // namespace lei
