#include "lei/calculus.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "lexer.hpp"

namespace lei {

// ----------------------------------------------------------- constructors

FPat p_atomvar(const std::string& name) {
  return std::make_shared<FPatNode>(FPatNode{FPKind::AtomVar, name, {}});
}
FPat p_formvar(const std::string& name) {
  return std::make_shared<FPatNode>(FPatNode{FPKind::FormVar, name, {}});
}
FPat p_top() { return std::make_shared<FPatNode>(FPatNode{FPKind::Top, "", {}}); }
FPat p_bot() { return std::make_shared<FPatNode>(FPatNode{FPKind::Bot, "", {}}); }
FPat p_meet(FPat a, FPat b) {
  return std::make_shared<FPatNode>(FPatNode{FPKind::Meet, "", {std::move(a), std::move(b)}});
}
FPat p_join(FPat a, FPat b) {
  return std::make_shared<FPatNode>(FPatNode{FPKind::Join, "", {std::move(a), std::move(b)}});
}
FPat p_app(const std::string& conn, std::vector<FPat> args) {
  return std::make_shared<FPatNode>(FPatNode{FPKind::App, conn, std::move(args)});
}

Meta m_var(const std::string& name, ConnKind sort) {
  return std::make_shared<MetaNode>(MetaNode{MKind::Var, name, sort, false, {}, nullptr});
}
Meta m_hat_top() {
  return std::make_shared<MetaNode>(
      MetaNode{MKind::MHatTop, "", ConnKind::F, true, {}, nullptr});
}
Meta m_check_bot() {
  return std::make_shared<MetaNode>(
      MetaNode{MKind::MCheckBot, "", ConnKind::G, false, {}, nullptr});
}
Meta m_app(const std::string& conn, bool hat, std::vector<Meta> args) {
  return std::make_shared<MetaNode>(
      MetaNode{MKind::MApp, conn, hat ? ConnKind::F : ConnKind::G, hat, std::move(args),
               nullptr});
}
Meta m_formula(FPat p) {
  return std::make_shared<MetaNode>(
      MetaNode{MKind::MFormula, "", ConnKind::F, false, {}, std::move(p)});
}

// ----------------------------------------------------------------- printing

namespace {
void print_fpat(const FPat& p, std::string& out) {
  switch (p->kind) {
    case FPKind::AtomVar:
    case FPKind::FormVar: out += p->name; return;
    case FPKind::Top: out += "top"; return;
    case FPKind::Bot: out += "bot"; return;
    case FPKind::Meet:
    case FPKind::Join:
      out += '(';
      print_fpat(p->args[0], out);
      out += p->kind == FPKind::Meet ? " /\\ " : " \\/ ";
      print_fpat(p->args[1], out);
      out += ')';
      return;
    case FPKind::App:
      out += p->name;
      out += '(';
      for (size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += ", ";
        print_fpat(p->args[i], out);
      }
      out += ')';
      return;
  }
}

void print_meta(const Meta& m, std::string& out) {
  switch (m->kind) {
    case MKind::Var:
      out += m->name;
      out += m->sort == ConnKind::F ? ":F" : ":G";
      return;
    case MKind::MHatTop: out += "@top"; return;
    case MKind::MCheckBot: out += "#bot"; return;
    case MKind::MApp:
      out += m->hat ? '@' : '#';
      out += m->name;
      out += '(';
      for (size_t i = 0; i < m->args.size(); ++i) {
        if (i) out += ", ";
        print_meta(m->args[i], out);
      }
      out += ')';
      return;
    case MKind::MFormula: print_fpat(m->fpat, out); return;
  }
}
}  // namespace

std::string print(const Meta& m) {
  std::string out;
  print_meta(m, out);
  return out;
}

std::string print(const MetaSequent& ms) {
  return print(ms.ante) + " |- " + print(ms.succ);
}

// ------------------------------------------------------------ builtin rules

const RuleSchema* RuleSet::find(const std::string& name) const {
  for (const auto& s : schemas)
    if (s.name == name) return &s;
  return nullptr;
}

namespace {

// Sort of coordinate i of a hat/check application with the host's order type.
ConnKind arg_sort(ConnKind host, Polarity eps) {
  if (eps == Polarity::Co) return host;
  return host == ConnKind::F ? ConnKind::G : ConnKind::F;
}

RuleSchema make(std::string name, RuleKind kind, std::vector<MetaSequent> prem,
                MetaSequent concl, std::string conn = "") {
  RuleSchema r;
  r.name = std::move(name);
  r.kind = kind;
  r.premises = std::move(prem);
  r.conclusion = std::move(concl);
  r.origin = RuleOrigin::Builtin;
  r.conn = std::move(conn);
  return r;
}

void add_logical_rules(RuleSet& rs, const Connective& c) {
  const bool isF = c.kind == ConnKind::F;
  std::vector<FPat> fargs;
  std::vector<Meta> leaf_args;   // formula leaves Ā inside the structural app
  std::vector<Meta> struct_args; // metavariables Ξ̄ inside the structural app
  std::vector<MetaSequent> intro_premises;
  for (size_t i = 0; i < c.arity; ++i) {
    std::string a = "A" + std::to_string(i + 1);
    std::string x = "X" + std::to_string(i + 1);
    fargs.push_back(p_formvar(a));
    leaf_args.push_back(m_formula(p_formvar(a)));
    ConnKind xs = arg_sort(c.kind, c.order_type.coords[i]);
    struct_args.push_back(m_var(x, xs));
    // Ξᵢ ⊢^{εᵢ} Aᵢ for f; Aᵢ ⊢^{εᵢ} Ξᵢ for g.
    bool covariant = c.order_type.coords[i] == Polarity::Co;
    Meta xi = m_var(x, xs);
    Meta ai = m_formula(p_formvar(a));
    if (isF)
      intro_premises.push_back(covariant ? MetaSequent{xi, ai} : MetaSequent{ai, xi});
    else
      intro_premises.push_back(covariant ? MetaSequent{ai, xi} : MetaSequent{xi, ai});
  }
  Meta op_leaf = m_formula(p_app(c.name, fargs));
  Meta struct_app = m_app(c.name, isF, isF ? leaf_args : struct_args);
  if (isF) {
    // f_L: f̂(Ā) ⊢ Σ / f(Ā) ⊢ Σ
    rs.schemas.push_back(make(c.name + ".l", RuleKind::FL,
                              {{struct_app, m_var("S", ConnKind::G)}},
                              {op_leaf, m_var("S", ConnKind::G)}, c.name));
    // f_R: {Ξᵢ ⊢^ε Aᵢ} / f̂(Ξ̄) ⊢ f(Ā)
    rs.schemas.push_back(make(c.name + ".r", RuleKind::FR, intro_premises,
                              {m_app(c.name, true, struct_args), op_leaf}, c.name));
  } else {
    // g_L: {Aᵢ ⊢^ε Ξᵢ} / g(Ā) ⊢ ǧ(Ξ̄)
    rs.schemas.push_back(make(c.name + ".l", RuleKind::GL, intro_premises,
                              {op_leaf, m_app(c.name, false, struct_args)}, c.name));
    // g_R: Π ⊢ ǧ(Ā) / Π ⊢ g(Ā)
    rs.schemas.push_back(make(c.name + ".r", RuleKind::GR,
                              {{m_var("P", ConnKind::F), m_app(c.name, false, leaf_args)}},
                              {m_var("P", ConnKind::F), op_leaf}, c.name));
  }
}

// Structural application of `c` with metavariables Z1..Zn, coordinate k
// (1-based) replaced by `hole`.
Meta ctx_app(const Connective& c, size_t k, Meta hole) {
  std::vector<Meta> args;
  for (size_t i = 0; i < c.arity; ++i) {
    if (i + 1 == k) {
      args.push_back(std::move(hole));
    } else {
      args.push_back(m_var("Z" + std::to_string(i + 1),
                           arg_sort(c.kind, c.order_type.coords[i])));
    }
  }
  return m_app(c.name, c.kind == ConnKind::F, std::move(args));
}

void add_display_rules(RuleSet& rs, const Connective& c, const Signature& sig) {
  for (size_t k = 1; k <= c.arity; ++k) {
    const Connective* r = sig.residual_of(c.name, k);
    if (!r) continue;  // closure guarantees presence for primitives
    std::string base = "disp." + c.name + "." + std::to_string(k);
    Polarity eps = c.order_type.coords[k - 1];
    MetaSequent a, b;  // the two display-equivalent forms, a = host-headed
    if (c.kind == ConnKind::F) {
      if (eps == Polarity::Co) {
        // f̂(Ξ̄)[Π]ₖ ⊢ Σ  ⇄  Π ⊢ f̌♯ₖ(Ξ̄)[Σ]ₖ
        a = {ctx_app(c, k, m_var("X", ConnKind::F)), m_var("Y", ConnKind::G)};
        b = {m_var("X", ConnKind::F), ctx_app(*r, k, m_var("Y", ConnKind::G))};
      } else {
        // f̂(Ξ̄)[Σ]ₖ ⊢ Σ'  ⇄  f̂♯ₖ(Ξ̄)[Σ']ₖ ⊢ Σ   (dual Galois, f♯ₖ ∈ F)
        a = {ctx_app(c, k, m_var("X", ConnKind::G)), m_var("Y", ConnKind::G)};
        b = {ctx_app(*r, k, m_var("Y", ConnKind::G)), m_var("X", ConnKind::G)};
      }
    } else {
      if (eps == Polarity::Co) {
        // Π ⊢ ǧ(Ξ̄)[Σ]ₖ  ⇄  ĝ♭ₖ(Ξ̄)[Π]ₖ ⊢ Σ
        a = {m_var("X", ConnKind::F), ctx_app(c, k, m_var("Y", ConnKind::G))};
        b = {ctx_app(*r, k, m_var("X", ConnKind::F)), m_var("Y", ConnKind::G)};
      } else {
        // Π' ⊢ ǧ(Ξ̄)[Π]ₖ  ⇄  Π ⊢ ǧ♭ₖ(Ξ̄)[Π']ₖ   (Galois, g♭ₖ ∈ G)
        a = {m_var("X", ConnKind::F), ctx_app(c, k, m_var("Y", ConnKind::F))};
        b = {m_var("Y", ConnKind::F), ctx_app(*r, k, m_var("X", ConnKind::F))};
      }
    }
    bool self = r->name == c.name;
    RuleSchema fwd = make(base + ".fwd", RuleKind::Display, {b}, a, c.name);
    fwd.inverse = self ? fwd.name : base + ".inv";
    rs.schemas.push_back(fwd);
    if (!self) {
      RuleSchema inv = make(base + ".inv", RuleKind::Display, {a}, b, c.name);
      inv.inverse = base + ".fwd";
      rs.schemas.push_back(inv);
    }
  }
}

}  // namespace

RuleSet builtin_rules(const Signature& sig) {
  RuleSet rs;
  rs.sig = residual_closure(sig);
  Meta P = m_var("P", ConnKind::F);
  Meta S = m_var("S", ConnKind::G);
  auto pv = [] { return m_formula(p_atomvar("p")); };
  // Identity and zeroary axioms.
  rs.schemas.push_back(make("id", RuleKind::Axiom, {}, {pv(), pv()}));
  rs.schemas.push_back(
      make("ax.top.atom", RuleKind::Axiom, {}, {pv(), m_formula(p_top())}));
  rs.schemas.push_back(
      make("ax.bot.atom", RuleKind::Axiom, {}, {m_formula(p_bot()), pv()}));
  rs.schemas.push_back(
      make("ax.top.unit", RuleKind::Axiom, {}, {m_hat_top(), m_formula(p_top())}));
  rs.schemas.push_back(
      make("ax.bot.unit", RuleKind::Axiom, {}, {m_formula(p_bot()), m_check_bot()}));
  // Lattice rules.
  rs.schemas.push_back(
      make("top.l", RuleKind::TopL, {{m_hat_top(), S}}, {m_formula(p_top()), S}));
  rs.schemas.push_back(
      make("bot.r", RuleKind::BotR, {{P, m_check_bot()}}, {P, m_formula(p_bot())}));
  Meta A = m_formula(p_formvar("A"));
  Meta B = m_formula(p_formvar("B"));
  Meta AandB = m_formula(p_meet(p_formvar("A"), p_formvar("B")));
  Meta AorB = m_formula(p_join(p_formvar("A"), p_formvar("B")));
  rs.schemas.push_back(make("and.l1", RuleKind::AndL, {{A, S}}, {AandB, S}));
  rs.schemas.push_back(make("and.l2", RuleKind::AndL, {{B, S}}, {AandB, S}));
  rs.schemas.push_back(make("and.r", RuleKind::AndR, {{P, A}, {P, B}}, {P, AandB}));
  rs.schemas.push_back(make("or.l", RuleKind::OrL, {{A, S}, {B, S}}, {AorB, S}));
  rs.schemas.push_back(make("or.r1", RuleKind::OrR, {{P, A}}, {P, AorB}));
  rs.schemas.push_back(make("or.r2", RuleKind::OrR, {{P, B}}, {P, AorB}));
  // Weakenings.
  rs.schemas.push_back(make("top.w", RuleKind::Weakening, {{m_hat_top(), S}}, {P, S}));
  rs.schemas.push_back(make("bot.w", RuleKind::Weakening, {{P, m_check_bot()}}, {P, S}));
  // Operational introduction rules.
  for (const Connective* c : rs.sig.all())
    if (c->operational && c->arity > 0) add_logical_rules(rs, *c);
  // Display postulates for primitives.
  for (const Connective* c : rs.sig.primitives())
    add_display_rules(rs, *c, rs.sig);
  // Cut (flagged; excluded from backward search).
  {
    Meta Af = m_formula(p_formvar("A"));
    rs.schemas.push_back(make("cut", RuleKind::Cut, {{P, Af}, {Af, S}}, {P, S}));
  }
  return rs;
}

// ----------------------------------------------------------------- matching

namespace {

bool match_fpat(const FPat& p, const Formula& f, Instantiation& inst) {
  switch (p->kind) {
    case FPKind::AtomVar: {
      if (f->kind != FKind::Atom) return false;
      auto it = inst.fvars.find(p->name);
      if (it != inst.fvars.end()) return equal(it->second, f);
      inst.fvars.emplace(p->name, f);
      return true;
    }
    case FPKind::FormVar: {
      auto it = inst.fvars.find(p->name);
      if (it != inst.fvars.end()) return equal(it->second, f);
      inst.fvars.emplace(p->name, f);
      return true;
    }
    case FPKind::Top: return f->kind == FKind::Top;
    case FPKind::Bot: return f->kind == FKind::Bot;
    case FPKind::Meet:
    case FPKind::Join: {
      FKind want = p->kind == FPKind::Meet ? FKind::Meet : FKind::Join;
      if (f->kind != want) return false;
      return match_fpat(p->args[0], f->args[0], inst) &&
             match_fpat(p->args[1], f->args[1], inst);
    }
    case FPKind::App: {
      if (f->kind != FKind::App || f->name != p->name ||
          f->args.size() != p->args.size())
        return false;
      for (size_t i = 0; i < p->args.size(); ++i)
        if (!match_fpat(p->args[i], f->args[i], inst)) return false;
      return true;
    }
  }
  return false;
}

bool match_meta(const Meta& m, const Structure& s, Instantiation& inst) {
  switch (m->kind) {
    case MKind::Var: {
      auto it = inst.svars.find(m->name);
      if (it != inst.svars.end()) return equal(it->second, s);
      inst.svars.emplace(m->name, s);
      return true;
    }
    case MKind::MHatTop: return s->kind == SKind::HatTop;
    case MKind::MCheckBot: return s->kind == SKind::CheckBot;
    case MKind::MApp: {
      if (s->kind != SKind::SApp || s->conn != m->name || s->hat != m->hat ||
          s->args.size() != m->args.size())
        return false;
      for (size_t i = 0; i < m->args.size(); ++i)
        if (!match_meta(m->args[i], s->args[i], inst)) return false;
      return true;
    }
    case MKind::MFormula:
      return s->kind == SKind::Leaf && match_fpat(m->fpat, s->formula, inst);
  }
  return false;
}

Formula instantiate_fpat(const FPat& p, const Instantiation& inst) {
  switch (p->kind) {
    case FPKind::AtomVar:
    case FPKind::FormVar: {
      auto it = inst.fvars.find(p->name);
      if (it == inst.fvars.end())
        throw std::runtime_error("unbound formula metavariable " + p->name);
      return it->second;
    }
    case FPKind::Top: return ftop();
    case FPKind::Bot: return fbot();
    case FPKind::Meet:
      return fmeet(instantiate_fpat(p->args[0], inst), instantiate_fpat(p->args[1], inst));
    case FPKind::Join:
      return fjoin(instantiate_fpat(p->args[0], inst), instantiate_fpat(p->args[1], inst));
    case FPKind::App: {
      std::vector<Formula> args;
      for (const auto& a : p->args) args.push_back(instantiate_fpat(a, inst));
      return fapp(p->name, std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

Structure instantiate(const Meta& m, const Instantiation& inst) {
  switch (m->kind) {
    case MKind::Var: {
      auto it = inst.svars.find(m->name);
      if (it == inst.svars.end())
        throw std::runtime_error("unbound structure metavariable " + m->name);
      return it->second;
    }
    case MKind::MHatTop: return shat_top();
    case MKind::MCheckBot: return scheck_bot();
    case MKind::MApp: {
      std::vector<Structure> args;
      for (const auto& a : m->args) args.push_back(instantiate(a, inst));
      return sapp(m->name, m->hat, std::move(args));
    }
    case MKind::MFormula: return sleaf(instantiate_fpat(m->fpat, inst));
  }
  throw std::logic_error("unreachable");
}

Sequent instantiate(const MetaSequent& ms, const Instantiation& inst) {
  return {instantiate(ms.ante, inst), instantiate(ms.succ, inst)};
}

std::vector<Match> match_backward(const RuleSchema& schema, const Sequent& goal,
                                  const Signature& sig) {
  (void)sig;
  Instantiation inst;
  if (!match_meta(schema.conclusion.ante, goal.ante, inst)) return {};
  if (!match_meta(schema.conclusion.succ, goal.succ, inst)) return {};
  Match m;
  m.inst = std::move(inst);
  try {
    for (const auto& p : schema.premises) m.premises.push_back(instantiate(p, m.inst));
  } catch (const std::runtime_error&) {
    // Premise mentions a metavariable absent from the conclusion (Cut).
    return {};
  }
  return {std::move(m)};
}

// ----------------------------------------------------- variable occurrences

namespace {
void collect_var_occs(const Meta& m, Side side, std::vector<size_t>& path,
                      std::vector<VarOccurrence>& out) {
  if (m->kind == MKind::Var) {
    out.push_back({m->name, {side, path}});
  } else if (m->kind == MKind::MApp) {
    for (size_t i = 0; i < m->args.size(); ++i) {
      path.push_back(i);
      collect_var_occs(m->args[i], side, path, out);
      path.pop_back();
    }
  }
}
}  // namespace

std::vector<VarOccurrence> var_occurrences(const MetaSequent& ms) {
  std::vector<VarOccurrence> out;
  std::vector<size_t> path;
  collect_var_occs(ms.ante, Side::Ante, path, out);
  collect_var_occs(ms.succ, Side::Succ, path, out);
  return out;
}

// -------------------------------------------------------------- analyticity

namespace {
bool formula_free(const Meta& m) {
  if (m->kind == MKind::MFormula) return false;
  for (const auto& a : m->args)
    if (!formula_free(a)) return false;
  return true;
}
}  // namespace

std::vector<std::string> validate_analytic(const RuleSchema& schema) {
  std::vector<std::string> bad;
  if (!formula_free(schema.conclusion.ante) || !formula_free(schema.conclusion.succ))
    bad.push_back("conclusion contains logical formulas");
  for (const auto& p : schema.premises)
    if (!formula_free(p.ante) || !formula_free(p.succ))
      bad.push_back("a premise contains logical formulas");
  if (!bad.empty()) return bad;

  std::map<std::string, int> concl_count;
  for (const auto& vo : var_occurrences(schema.conclusion)) concl_count[vo.var]++;
  for (const auto& [v, n] : concl_count)
    if (n != 1)
      bad.push_back("metavariable " + v + " occurs " + std::to_string(n) +
                    " times in the conclusion");
  for (const auto& p : schema.premises)
    for (const auto& vo : var_occurrences(p))
      if (!concl_count.count(vo.var))
        bad.push_back("premise metavariable " + vo.var + " absent from the conclusion");
  return bad;
}

std::string to_string(Safety s) {
  switch (s) {
    case Safety::NotSpecial: return "not-special";
    case Safety::Special: return "special";
    case Safety::InterpolationSafe: return "interpolation-safe";
  }
  return "?";
}

namespace {
size_t count_vars(const Meta& m, const std::string* only = nullptr) {
  if (m->kind == MKind::Var) return !only || m->name == *only ? 1 : 0;
  size_t n = 0;
  for (const auto& a : m->args) n += count_vars(a, only);
  return n;
}
}  // namespace

Safety classify_safety(const RuleSchema& schema) {
  // Try both special shapes: isolated bare metavariable on one side of every
  // sequent, not occurring in any of the other sides (conclusion included).
  auto try_shape = [&](bool iso_ante) -> std::optional<Safety> {
    const Meta& iso = iso_ante ? schema.conclusion.ante : schema.conclusion.succ;
    if (iso->kind != MKind::Var) return std::nullopt;
    const std::string& pi = iso->name;
    std::vector<Meta> others;  // the Ψᵢ / Φᵢ, conclusion first
    others.push_back(iso_ante ? schema.conclusion.succ : schema.conclusion.ante);
    for (const auto& p : schema.premises) {
      const Meta& side = iso_ante ? p.ante : p.succ;
      if (side->kind != MKind::Var || side->name != pi) return std::nullopt;
      others.push_back(iso_ante ? p.succ : p.ante);
    }
    for (const Meta& o : others)
      if (count_vars(o, &pi) > 0) return std::nullopt;  // isolated var reappears
    // Special. Safe iff each premise Ψᵢ has ≤1 occurrence of ≤1 metavariable.
    bool safe = true;
    for (const auto& p : schema.premises)
      if (count_vars(iso_ante ? p.succ : p.ante) > 1) safe = false;
    return safe ? Safety::InterpolationSafe : Safety::Special;
  };
  if (auto r = try_shape(true)) return *r;
  if (auto r = try_shape(false)) return *r;
  return Safety::NotSpecial;
}

// ------------------------------------------------------------- .lrul parser

namespace {

using detail::Tok;
using detail::TokenStream;

bool uppercase_word(const std::string& w) {
  return !w.empty() && std::isupper(static_cast<unsigned char>(w[0]));
}

// expected: the sort of the current position; metavariable sorts are inferred
// from position and checked against explicit :F/:G annotations and prior uses.
Meta parse_meta_struct(TokenStream& ts, const Signature& sig, ConnKind expected,
                       std::map<std::string, ConnKind>& var_sorts) {
  const auto& t = ts.peek();
  if (t.kind == Tok::At || t.kind == Tok::Hash) {
    bool hat = t.kind == Tok::At;
    std::string name = ts.next().text;
    if (hat && name == "top") {
      if (expected != ConnKind::F) throw std::runtime_error("@top in a G position");
      return m_hat_top();
    }
    if (!hat && name == "bot") {
      if (expected != ConnKind::G) throw std::runtime_error("#bot in an F position");
      return m_check_bot();
    }
    const Connective* c = sig.find(name);
    if (!c) throw std::runtime_error("unknown connective " + name);
    if ((c->kind == ConnKind::F) != hat)
      throw std::runtime_error("wrong flavor sigil for " + name);
    if (c->kind != expected)
      throw std::runtime_error("connective " + name + " in a wrong-sort position");
    ts.expect(Tok::LPar, "(");
    std::vector<Meta> args;
    for (size_t i = 0; i < c->arity; ++i) {
      if (i) ts.expect(Tok::Comma, ",");
      ConnKind as = arg_sort(c->kind, c->order_type.coords[i]);
      args.push_back(parse_meta_struct(ts, sig, as, var_sorts));
    }
    ts.expect(Tok::RPar, ")");
    return m_app(name, hat, std::move(args));
  }
  if (t.kind == Tok::Word && uppercase_word(t.text)) {
    std::string name = ts.next().text;
    if (ts.eat(Tok::Colon)) {
      const auto& st = ts.next();
      if (st.kind != Tok::Word || (st.text != "F" && st.text != "G"))
        throw std::runtime_error("expected sort F or G after :");
      ConnKind annotated = st.text == "F" ? ConnKind::F : ConnKind::G;
      if (annotated != expected)
        throw std::runtime_error("metavariable " + name + " annotated " + st.text +
                                 " in a " + (expected == ConnKind::F ? "F" : "G") +
                                 " position");
    }
    auto [it, fresh] = var_sorts.emplace(name, expected);
    if (!fresh && it->second != expected)
      throw std::runtime_error("metavariable " + name + " used at both sorts");
    return m_var(name, expected);
  }
  throw std::runtime_error("expected metastructure at position " +
                           std::to_string(t.pos));
}

MetaSequent parse_meta_sequent(const std::string& line, const Signature& sig,
                               std::map<std::string, ConnKind>& var_sorts) {
  TokenStream ts{detail::tokenize(line)};
  Meta a = parse_meta_struct(ts, sig, ConnKind::F, var_sorts);
  ts.expect(Tok::Turnstile, "|-");
  Meta b = parse_meta_struct(ts, sig, ConnKind::G, var_sorts);
  ts.expect(Tok::End, "end of line");
  return {a, b};
}

}  // namespace

void add_user_rules(RuleSet& rules, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string name;
  std::vector<std::string> body;
  auto flush = [&]() -> void {
    if (name.empty()) return;
    if (body.size() < 2)
      throw std::runtime_error("rule " + name + ": expected premises, ----, conclusion");
    auto sep = std::find_if(body.begin(), body.end(), [](const std::string& l) {
      return l.rfind("----", 0) == 0;
    });
    if (sep == body.end() || sep + 1 == body.end() || sep + 2 != body.end())
      throw std::runtime_error("rule " + name + ": expected ---- then one conclusion line");
    RuleSchema r;
    r.name = name;
    r.origin = RuleOrigin::User;
    r.kind = RuleKind::Structural;
    std::map<std::string, ConnKind> var_sorts;
    for (auto it = body.begin(); it != sep; ++it)
      r.premises.push_back(parse_meta_sequent(*it, rules.sig, var_sorts));
    r.conclusion = parse_meta_sequent(*(sep + 1), rules.sig, var_sorts);
    auto bad = validate_analytic(r);
    if (!bad.empty())
      throw std::runtime_error("rule " + name + " is not analytic: " + bad.front());
    if (rules.find(r.name))
      throw std::runtime_error("duplicate rule name " + r.name);
    rules.schemas.push_back(std::move(r));
    name.clear();
    body.clear();
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto b = line.find_first_not_of(" \t\r");
    auto e = line.find_last_not_of(" \t\r");
    line = b == std::string::npos ? "" : line.substr(b, e - b + 1);
    // Full-line comments only: an antecedent is F-sort, so a rule line never
    // starts with the check sigil '#'.
    if (line.rfind('#', 0) == 0) continue;
    if (line.empty()) { flush(); continue; }
    if (line.rfind("rule ", 0) == 0) {
      flush();
      name = line.substr(5);
      auto nb = name.find_first_not_of(" \t");
      name = nb == std::string::npos ? "" : name.substr(nb);
      if (name.empty()) throw std::runtime_error("rule header without a name");
    } else {
      if (name.empty())
        throw std::runtime_error("line " + std::to_string(lineno) +
                                 ": content outside a rule block");
      body.push_back(line);
    }
  }
  flush();
}

}  // namespace lei
