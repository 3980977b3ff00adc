#include "lei/syntax.hpp"

#include <sstream>
#include <stdexcept>

#include "lexer.hpp"

namespace lei {

// ---------------------------------------------------------------- formulas

Formula fatom(const std::string& name) {
  return std::make_shared<FormulaNode>(FormulaNode{FKind::Atom, name, {}});
}
Formula ftop() { return std::make_shared<FormulaNode>(FormulaNode{FKind::Top, "", {}}); }
Formula fbot() { return std::make_shared<FormulaNode>(FormulaNode{FKind::Bot, "", {}}); }
Formula fmeet(Formula a, Formula b) {
  return std::make_shared<FormulaNode>(
      FormulaNode{FKind::Meet, "", {std::move(a), std::move(b)}});
}
Formula fjoin(Formula a, Formula b) {
  return std::make_shared<FormulaNode>(
      FormulaNode{FKind::Join, "", {std::move(a), std::move(b)}});
}
Formula fapp(const std::string& conn, std::vector<Formula> args) {
  return std::make_shared<FormulaNode>(FormulaNode{FKind::App, conn, std::move(args)});
}

bool equal(const Formula& a, const Formula& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

size_t weight(const Formula& f) {
  size_t w = 1;
  for (const auto& a : f->args) w += weight(a);
  return w;
}

size_t depth(const Formula& f) {
  size_t d = 0;
  for (const auto& a : f->args) d = std::max(d, depth(a) + 1);
  return d;
}

// --------------------------------------------------------------- structures

Structure sleaf(Formula f) {
  return std::make_shared<StructureNode>(
      StructureNode{SKind::Leaf, std::move(f), "", false, {}});
}
Structure shat_top() {
  return std::make_shared<StructureNode>(StructureNode{SKind::HatTop, nullptr, "", true, {}});
}
Structure scheck_bot() {
  return std::make_shared<StructureNode>(
      StructureNode{SKind::CheckBot, nullptr, "", false, {}});
}
Structure sapp(const std::string& conn, bool hat, std::vector<Structure> args) {
  return std::make_shared<StructureNode>(
      StructureNode{SKind::SApp, nullptr, conn, hat, std::move(args)});
}

bool equal(const Structure& a, const Structure& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case SKind::Leaf: return equal(a->formula, b->formula);
    case SKind::HatTop:
    case SKind::CheckBot: return true;
    case SKind::SApp: break;
  }
  if (a->conn != b->conn || a->hat != b->hat || a->args.size() != b->args.size())
    return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

size_t weight(const Structure& s) {
  switch (s->kind) {
    case SKind::Leaf: return weight(s->formula);
    case SKind::HatTop:
    case SKind::CheckBot: return 1;
    case SKind::SApp: {
      size_t w = 1;
      for (const auto& a : s->args) w += weight(a);
      return w;
    }
  }
  return 0;
}

bool equal(const Sequent& a, const Sequent& b) {
  return equal(a.ante, b.ante) && equal(a.succ, b.succ);
}

size_t weight(const Sequent& s) { return weight(s.ante) + weight(s.succ); }

// -------------------------------------------------------------- occurrences

Structure at(const Structure& s, const std::vector<size_t>& path) {
  Structure cur = s;
  for (size_t idx : path) {
    if (!cur || cur->kind != SKind::SApp || idx >= cur->args.size()) return nullptr;
    cur = cur->args[idx];
  }
  return cur;
}

Structure at(const Sequent& seq, const Occurrence& occ) {
  return at(occ.side == Side::Ante ? seq.ante : seq.succ, occ.path);
}

Structure substitute(const Structure& s, const std::vector<size_t>& path, Structure repl) {
  if (path.empty()) return repl;
  if (s->kind != SKind::SApp || path.front() >= s->args.size())
    throw std::runtime_error("invalid occurrence path");
  std::vector<Structure> args = s->args;
  args[path.front()] = substitute(args[path.front()],
                                  {path.begin() + 1, path.end()}, std::move(repl));
  return sapp(s->conn, s->hat, std::move(args));
}

Sequent substitute(const Sequent& seq, const Occurrence& occ, Structure repl) {
  if (occ.side == Side::Ante)
    return {substitute(seq.ante, occ.path, std::move(repl)), seq.succ};
  return {seq.ante, substitute(seq.succ, occ.path, std::move(repl))};
}

namespace {
void collect_occs(const Structure& s, Side side, std::vector<size_t>& path,
                  std::vector<Occurrence>& out) {
  out.push_back({side, path});
  if (s->kind == SKind::SApp) {
    for (size_t i = 0; i < s->args.size(); ++i) {
      path.push_back(i);
      collect_occs(s->args[i], side, path, out);
      path.pop_back();
    }
  }
}
}  // namespace

std::vector<Occurrence> occurrences(const Sequent& seq) {
  std::vector<Occurrence> out;
  std::vector<size_t> path;
  collect_occs(seq.ante, Side::Ante, path, out);
  collect_occs(seq.succ, Side::Succ, path, out);
  return out;
}

Polarity epsilon(const Sequent& seq, const Occurrence& occ, const Signature& sig) {
  const Structure root = occ.side == Side::Ante ? seq.ante : seq.succ;
  Structure cur = root;
  size_t contra = 0;
  for (size_t idx : occ.path) {
    if (!cur || cur->kind != SKind::SApp || idx >= cur->args.size())
      throw std::runtime_error("invalid occurrence path");
    const Connective* c = sig.find(cur->conn);
    if (!c) throw std::runtime_error("unknown connective " + cur->conn);
    if (c->order_type.coords[idx] == Polarity::Contra) ++contra;
    cur = cur->args[idx];
  }
  bool even = contra % 2 == 0;
  if (occ.side == Side::Ante) return even ? Polarity::Co : Polarity::Contra;
  return even ? Polarity::Contra : Polarity::Co;
}

// ----------------------------------------------------------------- polarity

namespace {

void signed_vars_formula(const Formula& f, const Signature& sig, bool pos, SignedVars& sv) {
  switch (f->kind) {
    case FKind::Atom:
      (pos ? sv.pos : sv.neg).insert(f->name);
      return;
    case FKind::Top:
    case FKind::Bot:
      return;
    case FKind::Meet:
    case FKind::Join:
      signed_vars_formula(f->args[0], sig, pos, sv);
      signed_vars_formula(f->args[1], sig, pos, sv);
      return;
    case FKind::App: {
      const Connective* c = sig.find(f->name);
      if (!c) throw std::runtime_error("unknown connective " + f->name);
      for (size_t i = 0; i < f->args.size(); ++i) {
        bool flip = c->order_type.coords[i] == Polarity::Contra;
        signed_vars_formula(f->args[i], sig, flip ? !pos : pos, sv);
      }
      return;
    }
  }
}

// skip: optional path (relative to s) whose subtree is omitted.
void signed_vars_structure(const Structure& s, const Signature& sig, bool pos,
                           const std::vector<size_t>* skip, size_t skip_at,
                           SignedVars& sv) {
  if (skip && skip_at == skip->size()) return;  // this node is the hole
  switch (s->kind) {
    case SKind::Leaf:
      signed_vars_formula(s->formula, sig, pos, sv);
      return;
    case SKind::HatTop:
    case SKind::CheckBot:
      return;
    case SKind::SApp: {
      const Connective* c = sig.find(s->conn);
      if (!c) throw std::runtime_error("unknown connective " + s->conn);
      for (size_t i = 0; i < s->args.size(); ++i) {
        bool flip = c->order_type.coords[i] == Polarity::Contra;
        const std::vector<size_t>* sub_skip =
            (skip && skip_at < skip->size() && (*skip)[skip_at] == i) ? skip : nullptr;
        signed_vars_structure(s->args[i], sig, flip ? !pos : pos, sub_skip,
                              sub_skip ? skip_at + 1 : 0, sv);
      }
      return;
    }
  }
}

}  // namespace

SignedVars signed_vars(const Formula& f, const Signature& sig) {
  SignedVars sv;
  signed_vars_formula(f, sig, true, sv);
  return sv;
}

SignedVars signed_vars(const Structure& s, const Signature& sig) {
  SignedVars sv;
  signed_vars_structure(s, sig, true, nullptr, 0, sv);
  return sv;
}

SignedVars context_vars(const Sequent& seq, const Occurrence& occ, const Signature& sig) {
  if (!at(seq, occ)) throw std::runtime_error("invalid occurrence");
  SignedVars sv;
  const std::vector<size_t>* ante_skip = occ.side == Side::Ante ? &occ.path : nullptr;
  const std::vector<size_t>* succ_skip = occ.side == Side::Succ ? &occ.path : nullptr;
  signed_vars_structure(seq.ante, sig, true, ante_skip, 0, sv);
  signed_vars_structure(seq.succ, sig, true, succ_skip, 0, sv);
  return sv;
}

// --------------------------------------------------------------- conversion

Formula structure_to_formula(const Structure& s, const Signature& sig, bool l_only) {
  switch (s->kind) {
    case SKind::Leaf: return s->formula;
    case SKind::HatTop: return ftop();
    case SKind::CheckBot: return fbot();
    case SKind::SApp: {
      const Connective* c = sig.find(s->conn);
      if (!c) throw std::runtime_error("unknown connective " + s->conn);
      if (l_only && !c->operational)
        throw std::runtime_error("connective " + s->conn +
                                 " has no operational counterpart in L");
      std::vector<Formula> args;
      args.reserve(s->args.size());
      for (const auto& a : s->args) args.push_back(structure_to_formula(a, sig, l_only));
      return fapp(s->conn, std::move(args));
    }
  }
  throw std::logic_error("unreachable");
}

// ----------------------------------------------------------- sort checking

std::string check_formula(const Formula& f, const Signature& sig) {
  switch (f->kind) {
    case FKind::Atom:
      if (!sig.is_atom(f->name)) return "unknown atom " + f->name;
      return "";
    case FKind::Top:
    case FKind::Bot:
      return "";
    case FKind::Meet:
    case FKind::Join: {
      for (const auto& a : f->args)
        if (auto e = check_formula(a, sig); !e.empty()) return e;
      return "";
    }
    case FKind::App: {
      const Connective* c = sig.find(f->name);
      if (!c) return "unknown connective " + f->name;
      if (!c->operational) return "connective " + f->name + " is structural-only";
      if (c->arity != f->args.size()) return "arity mismatch for " + f->name;
      for (const auto& a : f->args)
        if (auto e = check_formula(a, sig); !e.empty()) return e;
      return "";
    }
  }
  return "unreachable";
}

std::string check_structure(const Structure& s, const Signature& sig, ConnKind sort) {
  switch (s->kind) {
    case SKind::Leaf:
      return check_formula(s->formula, sig);
    case SKind::HatTop:
      return sort == ConnKind::F ? "" : "@top is an F-structure in a G position";
    case SKind::CheckBot:
      return sort == ConnKind::G ? "" : "#bot is a G-structure in an F position";
    case SKind::SApp: {
      const Connective* c = sig.find(s->conn);
      if (!c) return "unknown connective " + s->conn;
      if (c->arity != s->args.size()) return "arity mismatch for " + s->conn;
      bool want_hat = c->kind == ConnKind::F;
      if (s->hat != want_hat)
        return std::string(s->hat ? "@" : "#") + s->conn + ": " + s->conn + " is a " +
               (c->kind == ConnKind::F ? "F" : "G") + "-connective, " +
               (s->hat ? "hat" : "check") + " flavor illegal";
      if ((c->kind == ConnKind::F) != (sort == ConnKind::F))
        return std::string(s->hat ? "@" : "#") + s->conn + " in a " +
               (sort == ConnKind::F ? "F" : "G") + "-sort position";
      for (size_t i = 0; i < s->args.size(); ++i) {
        ConnKind arg_sort = c->order_type.coords[i] == Polarity::Co
                                ? sort
                                : (sort == ConnKind::F ? ConnKind::G : ConnKind::F);
        if (auto e = check_structure(s->args[i], sig, arg_sort); !e.empty()) return e;
      }
      return "";
    }
  }
  return "unreachable";
}

std::string check_sequent(const Sequent& seq, const Signature& sig) {
  if (auto e = check_structure(seq.ante, sig, ConnKind::F); !e.empty())
    return "antecedent: " + e;
  if (auto e = check_structure(seq.succ, sig, ConnKind::G); !e.empty())
    return "succedent: " + e;
  return "";
}

// ----------------------------------------------------------------- printing

namespace {
void print_formula(const Formula& f, std::string& out) {
  switch (f->kind) {
    case FKind::Atom: out += f->name; return;
    case FKind::Top: out += "top"; return;
    case FKind::Bot: out += "bot"; return;
    case FKind::Meet:
    case FKind::Join:
      out += '(';
      print_formula(f->args[0], out);
      out += f->kind == FKind::Meet ? " /\\ " : " \\/ ";
      print_formula(f->args[1], out);
      out += ')';
      return;
    case FKind::App:
      out += f->name;
      out += '(';
      for (size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ", ";
        print_formula(f->args[i], out);
      }
      out += ')';
      return;
  }
}

void print_structure(const Structure& s, std::string& out) {
  switch (s->kind) {
    case SKind::Leaf: print_formula(s->formula, out); return;
    case SKind::HatTop: out += "@top"; return;
    case SKind::CheckBot: out += "#bot"; return;
    case SKind::SApp:
      out += s->hat ? '@' : '#';
      out += s->conn;
      out += '(';
      for (size_t i = 0; i < s->args.size(); ++i) {
        if (i) out += ", ";
        print_structure(s->args[i], out);
      }
      out += ')';
      return;
  }
}
}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

std::string print(const Structure& s) {
  std::string out;
  print_structure(s, out);
  return out;
}

std::string print(const Sequent& s) {
  return print(s.ante) + " |- " + print(s.succ);
}

std::string print(const Occurrence& occ) {
  std::string out = occ.side == Side::Ante ? "ante" : "succ";
  for (size_t i : occ.path) out += "." + std::to_string(i + 1);
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

using detail::Tok;
using detail::TokenStream;

bool lowercase_word(const std::string& w) {
  return !w.empty() && std::islower(static_cast<unsigned char>(w[0]));
}

Formula parse_fexpr(TokenStream& ts, const Signature& sig);

Formula parse_fatomic(TokenStream& ts, const Signature& sig) {
  const auto& t = ts.peek();
  if (ts.eat(Tok::LPar)) {
    Formula f = parse_fexpr(ts, sig);
    ts.expect(Tok::RPar, ")");
    return f;
  }
  if (t.kind != Tok::Word || !lowercase_word(t.text))
    throw std::runtime_error("expected formula at position " + std::to_string(t.pos));
  std::string name = ts.next().text;
  if (name == "top") return ftop();
  if (name == "bot") return fbot();
  if (ts.peek().kind == Tok::LPar && sig.find(name)) {
    ts.next();
    std::vector<Formula> args;
    if (!ts.eat(Tok::RPar)) {
      do args.push_back(parse_fexpr(ts, sig)); while (ts.eat(Tok::Comma));
      ts.expect(Tok::RPar, ")");
    }
    return fapp(name, std::move(args));
  }
  return fatom(name);
}

Formula parse_fterm(TokenStream& ts, const Signature& sig) {
  Formula f = parse_fatomic(ts, sig);
  while (ts.eat(Tok::And)) f = fmeet(f, parse_fatomic(ts, sig));
  return f;
}

Formula parse_fexpr(TokenStream& ts, const Signature& sig) {
  Formula f = parse_fterm(ts, sig);
  while (ts.eat(Tok::Or)) f = fjoin(f, parse_fterm(ts, sig));
  return f;
}

Structure parse_struct(TokenStream& ts, const Signature& sig) {
  const auto& t = ts.peek();
  if (t.kind == Tok::At || t.kind == Tok::Hash) {
    bool hat = t.kind == Tok::At;
    std::string name = ts.next().text;
    if (hat && name == "top") return shat_top();
    if (!hat && name == "bot") return scheck_bot();
    ts.expect(Tok::LPar, "(");
    std::vector<Structure> args;
    if (!ts.eat(Tok::RPar)) {
      do args.push_back(parse_struct(ts, sig)); while (ts.eat(Tok::Comma));
      ts.expect(Tok::RPar, ")");
    }
    return sapp(name, hat, std::move(args));
  }
  return sleaf(parse_fexpr(ts, sig));
}

TokenStream stream(const std::string& text) { return TokenStream{detail::tokenize(text)}; }

}  // namespace

Formula parse_formula(const std::string& text, const Signature& sig) {
  TokenStream ts = stream(text);
  Formula f = parse_fexpr(ts, sig);
  ts.expect(Tok::End, "end of input");
  if (auto e = check_formula(f, sig); !e.empty()) throw std::runtime_error(e);
  return f;
}

Structure parse_structure(const std::string& text, const Signature& sig) {
  TokenStream ts = stream(text);
  Structure s = parse_struct(ts, sig);
  ts.expect(Tok::End, "end of input");
  return s;
}

Sequent parse_sequent(const std::string& text, const Signature& sig) {
  TokenStream ts = stream(text);
  Structure a = parse_struct(ts, sig);
  ts.expect(Tok::Turnstile, "|-");
  Structure b = parse_struct(ts, sig);
  ts.expect(Tok::End, "end of input");
  Sequent seq{a, b};
  if (auto e = check_sequent(seq, sig); !e.empty()) throw std::runtime_error(e);
  return seq;
}

Occurrence parse_occurrence(const std::string& text) {
  std::istringstream in(text);
  std::string part;
  Occurrence occ;
  bool first = true;
  while (std::getline(in, part, '.')) {
    if (first) {
      if (part == "ante") occ.side = Side::Ante;
      else if (part == "succ") occ.side = Side::Succ;
      else throw std::runtime_error("occurrence must start with ante or succ");
      first = false;
    } else {
      size_t idx = std::stoul(part);
      if (idx < 1) throw std::runtime_error("occurrence coordinates are 1-based");
      occ.path.push_back(idx - 1);
    }
  }
  if (first) throw std::runtime_error("empty occurrence");
  return occ;
}

}  // namespace lei
