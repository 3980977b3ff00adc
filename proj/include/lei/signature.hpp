#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lei {

// 1 = covariant, ∂ = contravariant.
enum class Polarity { Co, Contra };

Polarity dual(Polarity p);

// Per-coordinate monotonicity signature; length = arity (empty for 0-ary).
struct OrderType {
  std::vector<Polarity> coords;

  bool operator==(const OrderType&) const = default;
  size_t arity() const { return coords.size(); }
};

OrderType dual(const OrderType& ot);

// Parse/print "+-" strings, one char per coordinate.
OrderType order_type_from_string(const std::string& s);
std::string to_string(const OrderType& ot);

enum class ConnKind { F, G };

struct ResidualLink {
  std::string parent;
  size_t coord = 1;  // 1-based
  bool galois = false;  // ε_{parent,coord} = ∂
  bool operator==(const ResidualLink&) const = default;
};

struct Connective {
  std::string name;
  ConnKind kind = ConnKind::F;
  size_t arity = 0;
  OrderType order_type;
  bool operational = false;
  std::optional<ResidualLink> residual_link;
  std::optional<size_t> self_residual;  // coordinate, 1-based (e.g. ¬)
};

// ε-arithmetic: kind and order type of the i-th residual of c (i 1-based).
// Throws std::out_of_range on bad coordinate.
std::pair<ConnKind, OrderType> residual_order_type(const Connective& c, size_t i);

struct Signature {
  std::map<std::string, Connective> connectives;
  std::vector<std::string> atoms;
  std::string logic_name;  // optional human-readable tag

  const Connective* find(const std::string& name) const;
  bool is_atom(const std::string& name) const;
  // Residual of `parent` in coordinate i, if present (self_residual included).
  const Connective* residual_of(const std::string& parent, size_t i) const;
  // Declared connectives that are not residuals of anything (postulate hosts).
  std::vector<const Connective*> primitives() const;
  // All connectives in a deterministic (name) order.
  std::vector<const Connective*> all() const;
};

// Add missing residuals (one generation: primitives only); idempotent.
Signature residual_closure(const Signature& sig);

// Invariant check; empty vector = valid.
std::vector<std::string> validate(const Signature& sig);

// .lsig line format; throws std::runtime_error with line info on bad input.
Signature parse_signature(const std::string& text);

}  // namespace lei
