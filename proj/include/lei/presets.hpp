#pragma once

#include "lei/calculus.hpp"

namespace lei {

// Bundled logics: lattice, k-tense, fundamental, tense-fundamental, lambek.
std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
std::string preset_signature_text(const std::string& name);
std::string preset_rules_text(const std::string& name);  // may be empty

// Residual-closed signature + builtin rules + bundled user rules.
Signature preset_signature(const std::string& name);
RuleSet preset_rules(const std::string& name);

}  // namespace lei
