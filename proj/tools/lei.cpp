// lei — signature-parametric display-calculus kernel CLI.
//
// Subcommands: sig check, rules classify, prove, interpolate, verify, oracle,
// demo. Exit codes: 0 success/Proved/pass, 1 NotProved/fail, 2 usage/format
// error, 3 DepthExceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lei/oracle.hpp"
#include "lei/presets.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDepth = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

size_t default_depth() {
  if (const char* env = std::getenv("LEI_DEPTH_DEFAULT")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
  }
  return 64;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --sig accepts a preset name or a .lsig file path.
std::string signature_text(const std::string& sig_arg) {
  if (lei::is_preset(sig_arg)) return lei::preset_signature_text(sig_arg);
  return slurp(sig_arg);
}

lei::RuleSet load_rules(const std::string& sig_arg, const std::string& rules_arg) {
  lei::RuleSet rs = lei::builtin_rules(lei::parse_signature(signature_text(sig_arg)));
  if (lei::is_preset(sig_arg)) {
    std::string bundled = lei::preset_rules_text(sig_arg);
    if (!bundled.empty()) lei::add_user_rules(rs, bundled);
  }
  if (!rules_arg.empty()) lei::add_user_rules(rs, slurp(rules_arg));
  return rs;
}

void emit(const std::string& path, const std::string& doc) {
  if (path.empty()) {
    std::cout << doc << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << doc << "\n";
}

int cmd_sig_check(const std::string& file) {
  lei::Signature sig = lei::residual_closure(lei::parse_signature(signature_text(file)));
  std::vector<std::string> errors = lei::validate(sig);
  for (const lei::Connective* c : sig.all()) {
    std::cout << c->name << ": " << (c->kind == lei::ConnKind::F ? "F" : "G") << "/"
              << c->arity << " order-type " << lei::to_string(c->order_type)
              << (c->operational ? " operational" : " structural");
    if (c->residual_link)
      std::cout << " residual-of " << c->residual_link->parent << "."
                << c->residual_link->coord;
    if (c->self_residual) std::cout << " self-galois." << *c->self_residual;
    std::cout << "\n";
  }
  if (!errors.empty()) {
    for (const auto& e : errors) std::cerr << "error: " << e << "\n";
    return kExitFail;
  }
  std::cout << "ok\n";
  return kExitOk;
}

int cmd_rules_classify(const std::string& file, const std::string& sig_arg) {
  // Rule files reference signature connectives, so a signature is required;
  // when the file argument is itself a preset name, its bundled rules are
  // classified directly.
  lei::RuleSet rs = [&] {
    if (lei::is_preset(file)) return lei::preset_rules(file);
    if (sig_arg.empty()) throw UsageError("rules classify needs --sig for a rule file");
    lei::RuleSet base = lei::builtin_rules(lei::parse_signature(signature_text(sig_arg)));
    lei::add_user_rules(base, slurp(file));
    return base;
  }();
  for (const lei::RuleSchema& s : rs.schemas) {
    if (s.origin != lei::RuleOrigin::User) continue;
    std::cout << s.name << ": analytic, " << lei::to_string(lei::classify_safety(s))
              << "\n";
  }
  return kExitOk;
}

int cmd_prove(const std::string& sig_arg, const std::string& rules_arg,
              const std::string& seq_text, size_t depth, const std::string& emit_path) {
  lei::RuleSet rs = load_rules(sig_arg, rules_arg);
  lei::Sequent goal = lei::parse_sequent(seq_text, rs.sig);
  lei::SearchConfig cfg;
  cfg.depth = depth;
  lei::SearchResult res = lei::prove(goal, rs, cfg);
  switch (res.status) {
    case lei::SearchStatus::Proved:
      std::cout << "Proved\n";
      if (!emit_path.empty()) emit(emit_path, lei::derivation_to_json(*res.derivation));
      return kExitOk;
    case lei::SearchStatus::NotProved:
      std::cout << "NotProved\n";
      return kExitFail;
    case lei::SearchStatus::DepthExceeded:
      std::cout << "DepthExceeded\n";
      return kExitDepth;
  }
  return kExitUsage;
}

int cmd_interpolate(const std::string& sig_arg, const std::string& rules_arg,
                    const std::string& seq_text, const std::string& occ_text,
                    size_t depth, const std::string& emit_path) {
  lei::RuleSet rs = load_rules(sig_arg, rules_arg);
  lei::Sequent goal = lei::parse_sequent(seq_text, rs.sig);
  lei::SearchConfig cfg;
  cfg.depth = depth;
  lei::SearchResult res = lei::prove(goal, rs, cfg);
  if (res.status == lei::SearchStatus::DepthExceeded) {
    std::cout << "DepthExceeded\n";
    return kExitDepth;
  }
  if (res.status == lei::SearchStatus::NotProved) {
    std::cout << "NotProved\n";
    return kExitFail;
  }
  lei::InterpolationResult r =
      occ_text.empty() ? lei::lyndon(*res.derivation, rs, cfg)
                       : lei::maehara(*res.derivation, lei::parse_occurrence(occ_text),
                                      rs, cfg);
  emit(emit_path, lei::interpolation_to_json(r, rs));
  return kExitOk;
}

int cmd_verify(const std::string& sig_arg, const std::string& rules_arg,
               const std::string& seq_text, const std::string& occ_text,
               const std::string& gamma_text, size_t depth) {
  lei::RuleSet rs = load_rules(sig_arg, rules_arg);
  lei::Sequent goal = lei::parse_sequent(seq_text, rs.sig);
  lei::Formula gamma = lei::parse_formula(gamma_text, rs.sig);
  lei::Occurrence occ =
      occ_text.empty() ? lei::Occurrence{lei::Side::Ante, {}} : lei::parse_occurrence(occ_text);
  lei::SearchConfig cfg;
  cfg.depth = depth;
  lei::VerifyReport rep = lei::verify(goal, occ, gamma, rs, cfg);
  std::cout << "side " << lei::print(rep.side_sequent) << ": "
            << (rep.side_derivable ? "derivable" : "not derivable") << "\n";
  std::cout << "ctx " << lei::print(rep.ctx_sequent) << ": "
            << (rep.ctx_derivable ? "derivable" : "not derivable") << "\n";
  std::cout << "polarity: pos " << (rep.pos_ok ? "ok" : "violated") << ", neg "
            << (rep.neg_ok ? "ok" : "violated") << "\n";
  std::cout << (rep.ok ? "pass" : "fail") << "\n";
  return rep.ok ? kExitOk : kExitFail;
}

int cmd_oracle(const std::string& sig_arg, const std::string& rules_arg,
               const std::string& seq_text, const std::string& occ_text,
               size_t oracle_depth, size_t search_depth) {
  lei::RuleSet rs = load_rules(sig_arg, rules_arg);
  lei::Sequent goal = lei::parse_sequent(seq_text, rs.sig);
  lei::Occurrence occ =
      occ_text.empty() ? lei::Occurrence{lei::Side::Ante, {}} : lei::parse_occurrence(occ_text);
  lei::SearchConfig cfg;
  cfg.depth = search_depth;
  std::vector<lei::Formula> found =
      lei::find_interpolants(goal, occ, oracle_depth, rs, cfg);
  for (const auto& f : found) std::cout << lei::print(f) << "\n";
  return found.empty() ? kExitFail : kExitOk;
}

// Worked example per preset: prove, extract a Lyndon interpolant, verify.
struct DemoCase {
  std::string sequent;
};

DemoCase demo_case(const std::string& preset) {
  if (preset == "lattice") return {"(p /\\ q) |- (p \\/ r)"};
  if (preset == "k-tense") return {"dia(box(p)) |- box(dia(p))"};
  if (preset == "fundamental") return {"(p /\\ neg(p)) |- q"};
  if (preset == "tense-fundamental") return {"dia(neg(p)) |- neg(box(p))"};
  if (preset == "lambek") return {"circ(p, under(p, q)) |- q"};
  throw UsageError("unknown preset " + preset);
}

int cmd_demo(const std::string& preset) {
  DemoCase dc = demo_case(preset);
  lei::RuleSet rs = lei::preset_rules(preset);
  std::cout << "logic: " << preset << "\n";
  std::cout << "sequent: " << dc.sequent << "\n";
  lei::Sequent goal = lei::parse_sequent(dc.sequent, rs.sig);
  lei::SearchConfig cfg;
  cfg.depth = default_depth();
  lei::SearchResult res = lei::prove(goal, rs, cfg);
  if (res.status != lei::SearchStatus::Proved) {
    std::cout << "prove: NotProved\nfail\n";
    return kExitFail;
  }
  std::cout << "prove: Proved\n";
  lei::InterpolationResult r = lei::lyndon(*res.derivation, rs, cfg);
  lei::Formula gamma = lei::simplify(r.gamma);
  std::cout << "interpolant: " << lei::print(gamma) << "\n";
  lei::VerifyReport rep = lei::verify(goal, {lei::Side::Ante, {}}, gamma, rs, cfg);
  std::cout << "verify: " << (rep.ok ? "pass" : "fail") << "\n";
  std::cout << (rep.ok ? "pass" : "fail") << "\n";
  return rep.ok ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"display-calculus kernel for lattice-expansion logics"};
  app.require_subcommand(1);

  std::string sig_arg, rules_arg, seq_text, occ_text, gamma_text, emit_path, file_arg;
  size_t depth = default_depth();
  size_t oracle_depth = 2;

  auto* sig = app.add_subcommand("sig", "signature operations")->require_subcommand(1);
  auto* sig_check = sig->add_subcommand("check", "parse, close, and validate");
  sig_check->add_option("file", file_arg, "signature file or preset name")->required();

  auto* rules = app.add_subcommand("rules", "rule operations")->require_subcommand(1);
  auto* classify = rules->add_subcommand("classify", "classify structural rules");
  classify->add_option("file", file_arg, "rule file or preset name")->required();
  classify->add_option("--sig", sig_arg, "signature file or preset name");

  auto* prove = app.add_subcommand("prove", "backward proof search");
  prove->add_option("--sig", sig_arg)->required();
  prove->add_option("--rules", rules_arg);
  prove->add_option("--depth", depth);
  prove->add_option("sequent", seq_text)->required();
  prove->add_option("--emit", emit_path);

  auto* interp = app.add_subcommand("interpolate", "extract an interpolant");
  interp->add_option("--sig", sig_arg)->required();
  interp->add_option("--rules", rules_arg);
  interp->add_option("--depth", depth);
  interp->add_option("--occ", occ_text);
  interp->add_option("sequent", seq_text)->required();
  interp->add_option("--emit", emit_path);

  auto* verify = app.add_subcommand("verify", "check an interpolant candidate");
  verify->add_option("--sig", sig_arg)->required();
  verify->add_option("--rules", rules_arg);
  verify->add_option("--depth", depth);
  verify->add_option("--occ", occ_text);
  verify->add_option("--gamma", gamma_text)->required();
  verify->add_option("sequent", seq_text)->required();

  auto* oracle = app.add_subcommand("oracle", "brute-force interpolant search");
  oracle->add_option("--sig", sig_arg)->required();
  oracle->add_option("--rules", rules_arg);
  oracle->add_option("--depth", oracle_depth);
  oracle->add_option("--search-depth", depth);
  oracle->add_option("sequent", seq_text)->required();

  auto* demo = app.add_subcommand("demo", "run a preset's worked example");
  demo->add_option("preset", file_arg, "preset name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sig_check) return cmd_sig_check(file_arg);
    if (*classify) return cmd_rules_classify(file_arg, sig_arg);
    if (*prove) return cmd_prove(sig_arg, rules_arg, seq_text, depth, emit_path);
    if (*interp)
      return cmd_interpolate(sig_arg, rules_arg, seq_text, occ_text, depth, emit_path);
    if (*verify)
      return cmd_verify(sig_arg, rules_arg, seq_text, occ_text, gamma_text, depth);
    if (*oracle)
      return cmd_oracle(sig_arg, rules_arg, seq_text, occ_text, oracle_depth, depth);
    if (*demo) return cmd_demo(file_arg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
