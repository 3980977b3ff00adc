#include "lei/signature.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lei {

Polarity dual(Polarity p) {
  return p == Polarity::Co ? Polarity::Contra : Polarity::Co;
}

OrderType dual(const OrderType& ot) {
  OrderType r;
  r.coords.reserve(ot.coords.size());
  for (Polarity p : ot.coords) r.coords.push_back(dual(p));
  return r;
}

OrderType order_type_from_string(const std::string& s) {
  OrderType ot;
  for (char c : s) {
    if (c == '+') ot.coords.push_back(Polarity::Co);
    else if (c == '-') ot.coords.push_back(Polarity::Contra);
    else throw std::runtime_error("bad order-type character: " + std::string(1, c));
  }
  return ot;
}

std::string to_string(const OrderType& ot) {
  std::string s;
  for (Polarity p : ot.coords) s += (p == Polarity::Co ? '+' : '-');
  return s;
}

std::pair<ConnKind, OrderType> residual_order_type(const Connective& c, size_t i) {
  if (i < 1 || i > c.arity) throw std::out_of_range("residual coordinate out of range");
  Polarity ei = c.order_type.coords[i - 1];
  // Family flips exactly when the coordinate is covariant.
  ConnKind kind;
  if (ei == Polarity::Co)
    kind = (c.kind == ConnKind::F) ? ConnKind::G : ConnKind::F;
  else
    kind = c.kind;
  OrderType ot = c.order_type;
  // Coordinate i keeps ε_{c,i}; every j≠i becomes (ε_{c,j})^{ε_{c,i}^∂}.
  Polarity exp = dual(ei);
  for (size_t j = 0; j < ot.coords.size(); ++j) {
    if (j + 1 == i) continue;
    if (exp == Polarity::Contra) ot.coords[j] = dual(ot.coords[j]);
  }
  return {kind, ot};
}

const Connective* Signature::find(const std::string& name) const {
  auto it = connectives.find(name);
  return it == connectives.end() ? nullptr : &it->second;
}

bool Signature::is_atom(const std::string& name) const {
  return std::find(atoms.begin(), atoms.end(), name) != atoms.end();
}

const Connective* Signature::residual_of(const std::string& parent, size_t i) const {
  for (const auto& [name, c] : connectives) {
    if (c.residual_link && c.residual_link->parent == parent && c.residual_link->coord == i)
      return &c;
    if (c.self_residual && name == parent && *c.self_residual == i) return &c;
  }
  return nullptr;
}

std::vector<const Connective*> Signature::primitives() const {
  std::vector<const Connective*> out;
  for (const auto& [name, c] : connectives)
    if (!c.residual_link) out.push_back(&c);
  return out;
}

std::vector<const Connective*> Signature::all() const {
  std::vector<const Connective*> out;
  for (const auto& [name, c] : connectives) out.push_back(&c);
  return out;
}

Signature residual_closure(const Signature& sig) {
  Signature out = sig;
  for (const Connective* c : sig.primitives()) {
    for (size_t i = 1; i <= c->arity; ++i) {
      if (out.residual_of(c->name, i)) continue;
      auto [kind, ot] = residual_order_type(*c, i);
      Connective r;
      bool galois = c->order_type.coords[i - 1] == Polarity::Contra;
      r.name = c->name + (c->kind == ConnKind::F ? ".sharp." : ".flat.") + std::to_string(i);
      r.kind = kind;
      r.arity = c->arity;
      r.order_type = ot;
      r.operational = false;
      r.residual_link = ResidualLink{c->name, i, galois};
      out.connectives.emplace(r.name, r);
    }
  }
  return out;
}

std::vector<std::string> validate(const Signature& sig) {
  std::vector<std::string> bad;
  std::set<std::string> seen;
  for (const auto& [name, c] : sig.connectives) {
    if (name != c.name) bad.push_back("key/name mismatch for " + name);
    if (c.order_type.arity() != c.arity)
      bad.push_back("order-type length does not match arity of " + name);
    if (sig.is_atom(name)) bad.push_back("atom collides with connective name " + name);
    if (c.self_residual && (*c.self_residual < 1 || *c.self_residual > c.arity))
      bad.push_back("self-residual coordinate out of range for " + name);
    if (c.residual_link) {
      const Connective* parent = sig.find(c.residual_link->parent);
      if (!parent) {
        bad.push_back("unresolved residual parent of " + name);
      } else if (c.residual_link->coord < 1 || c.residual_link->coord > parent->arity) {
        bad.push_back("residual coordinate out of range for " + name);
      } else {
        auto [kind, ot] = residual_order_type(*parent, c.residual_link->coord);
        if (kind != c.kind || !(ot == c.order_type))
          bad.push_back("residual kind/order-type of " + name +
                        " disagrees with residual_order_type");
        bool galois = parent->order_type.coords[c.residual_link->coord - 1] == Polarity::Contra;
        if (galois != c.residual_link->galois)
          bad.push_back("galois flag of " + name + " disagrees with parent order type");
      }
    }
    if (c.self_residual) {
      auto [kind, ot] = residual_order_type(c, *c.self_residual);
      if (kind != c.kind || !(ot == c.order_type))
        bad.push_back("self-residual declaration inconsistent for " + name);
    }
  }
  // Two distinct connectives claiming one (parent, coordinate).
  std::set<std::pair<std::string, size_t>> claimed;
  for (const auto& [name, c] : sig.connectives) {
    if (c.residual_link) {
      auto key = std::make_pair(c.residual_link->parent, c.residual_link->coord);
      if (!claimed.insert(key).second)
        bad.push_back("conflicting residual declarations for " + key.first);
    }
    if (c.self_residual) {
      auto key = std::make_pair(name, *c.self_residual);
      if (!claimed.insert(key).second)
        bad.push_back("conflicting residual declarations for " + name);
    }
  }
  return bad;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw std::runtime_error("signature line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto words = split_ws(line);
    if (words.empty()) continue;
    const std::string& kw = words[0];
    if (kw == "logic") {
      if (words.size() != 2) fail("expected: logic <name>");
      sig.logic_name = words[1];
    } else if (kw == "atoms") {
      for (size_t i = 1; i < words.size(); ++i) sig.atoms.push_back(words[i]);
    } else if (kw == "conn") {
      if (words.size() != 5) fail("expected: conn F|G <name> <arity> <ordertype>");
      Connective c;
      if (words[1] == "F") c.kind = ConnKind::F;
      else if (words[1] == "G") c.kind = ConnKind::G;
      else fail("kind must be F or G");
      c.name = words[2];
      c.arity = std::stoul(words[3]);
      c.order_type = order_type_from_string(words[4]);
      if (c.order_type.arity() != c.arity) fail("order-type length does not match arity");
      c.operational = true;  // declared connectives are operational by default
      if (!sig.connectives.emplace(c.name, c).second) fail("duplicate connective " + c.name);
    } else if (kw == "residual") {
      // residual sharp|flat <parent> <coord> <name>
      if (words.size() != 5) fail("expected: residual sharp|flat <parent> <coord> <name>");
      if (words[1] != "sharp" && words[1] != "flat") fail("expected sharp or flat");
      const Connective* parent = sig.find(words[2]);
      if (!parent) fail("unknown parent connective " + words[2]);
      if ((words[1] == "sharp") != (parent->kind == ConnKind::F))
        fail("sharp residuals belong to F-connectives, flat to G-connectives");
      size_t coord = std::stoul(words[3]);
      if (coord < 1 || coord > parent->arity) fail("coordinate out of range");
      auto [kind, ot] = residual_order_type(*parent, coord);
      Connective r;
      r.name = words[4];
      r.kind = kind;
      r.arity = parent->arity;
      r.order_type = ot;
      r.operational = false;
      r.residual_link =
          ResidualLink{parent->name, coord,
                       parent->order_type.coords[coord - 1] == Polarity::Contra};
      if (!sig.connectives.emplace(r.name, r).second) fail("duplicate connective " + r.name);
    } else if (kw == "selfgalois") {
      if (words.size() != 3) fail("expected: selfgalois <name> <coord>");
      auto it = sig.connectives.find(words[1]);
      if (it == sig.connectives.end()) fail("unknown connective " + words[1]);
      it->second.self_residual = std::stoul(words[2]);
    } else if (kw == "operational") {
      for (size_t i = 1; i < words.size(); ++i) {
        auto it = sig.connectives.find(words[i]);
        if (it == sig.connectives.end()) fail("unknown connective " + words[i]);
        it->second.operational = true;
      }
    } else {
      fail("unknown directive " + kw);
    }
  }
  auto bad = validate(sig);
  if (!bad.empty()) throw std::runtime_error("invalid signature: " + bad.front());
  return sig;
}

}  // namespace lei
