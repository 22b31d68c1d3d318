#include "bes/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "bes/checks.hpp"

namespace bes::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("BES_SEED")) return std::strtoull(env, nullptr, 10);
  return checks::kDefaultSeed;
}

std::string valuation_text(const Valuation& v) {
  std::string out;
  for (const auto& [a, b] : v) {
    if (!out.empty()) out += ", ";
    out += a.name() + " = " + (b ? "true" : "false");
  }
  return out.empty() ? "(empty valuation)" : out;
}

int cmd_prove(std::ostream& out, const std::string& sequent_text, bool json, bool latex_fmt,
              bool cut_free_check, const std::string& verify_path) {
  Sequent s = parse_sequent(sequent_text);
  if (!verify_path.empty()) {
    Proof p = proof_from_json(read_file(verify_path));
    CheckResult cut_free = check_proof(p, false);
    CheckResult with_cut = check_proof(p, true);
    bool matches = p.conclusion == s;
    out << "conclusion: " << p.conclusion.text() << (matches ? "" : "  (MISMATCH)") << "\n";
    out << "checker (cut-free): " << (cut_free.ok ? "ok" : cut_free.error) << "\n";
    if (!cut_free.ok)
      out << "checker (with cut): " << (with_cut.ok ? "ok" : with_cut.error) << "\n";
    return matches && with_cut.ok ? 0 : 1;
  }

  Decision d = prove(s);
  if (!d.provable()) {
    out << "not provable; falsified by " << valuation_text(*d.refutation) << "\n";
    return 1;
  }
  if (cut_free_check) {
    CheckResult chk = check_proof(*d.proof, false);
    out << "checker (cut-free): " << (chk.ok ? "ok" : chk.error) << "\n";
  }
  if (json)
    out << proof_to_json(*d.proof) << "\n";
  else if (latex_fmt)
    out << to_latex(*d.proof);
  else
    out << to_text(*d.proof);
  return 0;
}

int cmd_derive(std::ostream& out, const std::string& base_path, const std::string& sequent_text,
               bool json, bool latex_fmt) {
  Base b = parse_base_file(read_file(base_path));
  AtomicSequent s = parse_atomic_sequent(sequent_text);
  DerivableSet ds = saturate(b, s.left.unite(s.right));
  if (!ds.derives(s)) {
    out << "not derivable: " << s.text() << "\n";
    return 1;
  }
  Derivation d = derivation_from(ds, s);
  CheckResult chk = check_derivation(b, d);
  if (!chk.ok) throw Error("internal: reconstructed derivation invalid: " + chk.error);
  if (json)
    out << derivation_to_json(d) << "\n";
  else if (latex_fmt)
    out << to_latex(d);
  else
    out << to_text(d);
  return 0;
}

int verdict_exit(std::ostream& out, const SupportVerdict& v, bool json) {
  if (json) {
    const char* kind = v.kind == VerdictKind::Supported     ? "supported"
                       : v.kind == VerdictKind::NotSupported ? "not_supported"
                                                              : "unknown";
    std::string facts;
    out << "{\n  \"verdict\": \"" << kind << "\"";
    if (v.failed_query) out << ",\n  \"failing_query\": \"" << v.failed_query->text() << "\"";
    if (!v.reason.empty()) out << ",\n  \"reason\": \"" << v.reason << "\"";
    out << "\n}\n";
  } else {
    out << v.text() << "\n";
  }
  switch (v.kind) {
    case VerdictKind::Supported: return 0;
    case VerdictKind::NotSupported: return 1;
    default: return 2;
  }
}

int cmd_support(std::ostream& out, const std::string& base_path, const std::string& judgment_text,
                const std::string& mode, unsigned budget, bool json) {
  Base b = parse_base_file(read_file(base_path));
  Sequent j = parse_judgment(judgment_text);
  if (mode == "exact") {
    std::optional<AtomicSequent> at = to_atomic(j);
    if (!at) throw Error("mode exact needs an atomic judgment");
    return verdict_exit(out, support_atomic(b, at->left, at->right), json);
  }
  if (mode == "oracle") {
    // The file contributes closure and extra atomic rules; the simulation
    // family for the judgment's subformulas is generated here. An st file
    // selects the full cut-closed family, an hs file the quasi family.
    FormulaSet sigma = j.left.unite(j.right);
    AtomicMapping m = atomic_mapping(sigma);
    SimulationVariant v = b.closure() == Closure::ST ? SimulationVariant::Full
                                                     : SimulationVariant::Quasi;
    Base sim = simulation_base(sigma, m, v).extend(b.ground());
    return verdict_exit(out, support_oracle(sim, j.left, j.right), json);
  }
  if (mode == "refute")
    return verdict_exit(out, support_refute(b, {j.left, j.right}, budget), json);
  throw Error("unknown mode: " + mode);
}

int cmd_extract(std::ostream& out, const std::string& sequent_text, const std::string& variant,
                const std::string& out_path, bool json, bool latex_fmt) {
  Sequent s = parse_sequent(sequent_text);
  ValidityResult v = valid(s.left, s.right, ValidityFlavor::WithCut);
  if (!v.is_valid) {
    out << "not valid; falsified by " << valuation_text(*v.certificate.refutation) << "\n";
    return 1;
  }
  SimulationVariant sv;
  if (variant == "full")
    sv = SimulationVariant::Full;
  else if (variant == "quasi")
    sv = SimulationVariant::Quasi;
  else
    throw Error("unknown variant: " + variant);
  ExtractionReport rep = extract_proof(s.left, s.right, sv);
  std::string rendered = json ? report_to_json(rep)
                         : latex_fmt ? report_to_latex(rep)
                                     : report_to_text(rep);
  if (!out_path.empty()) {
    write_file(out_path, rendered);
    out << "final proof (" << rep.stats.final_nodes << " nodes) verified; report written to "
        << out_path << "\n";
  } else {
    out << rendered;
  }
  return 0;
}

int cmd_counterexample(std::ostream& out, const std::string& which, bool json) {
  if (which != "prop6") throw Error("unknown counterexample: " + which);
  Prop6Report rep = prop6_counterexample();
  out << (json ? rep.json() + "\n" : rep.text());
  return rep.ok ? 0 : 1;
}

int cmd_check(std::ostream& out, std::optional<std::uint64_t> seed_flag, std::size_t samples) {
  std::uint64_t seed = resolve_seed(seed_flag);
  double scale = static_cast<double>(samples) / 10000.0;
  out << "seed " << seed << ", reference sample count " << samples << "\n";
  bool all = true;
  for (const checks::SuiteResult& r : checks::run_acceptance(seed, scale)) {
    all = all && r.pass;
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << std::fixed
        << std::setprecision(2) << r.seconds << "s)\n       " << r.detail << "\n";
  }
  out << (all ? "all checks passed\n" : "CHECKS FAILED\n");
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"workbench for sequent-calculus base-extension semantics"};
  app.name("bes");
  app.require_subcommand(1);

  std::string sequent_text, base_path, judgment_text, verify_path, out_path;
  std::string mode = "exact", variant = "full", which = "prop6";
  bool json = false, latex_fmt = false, cut_free_check = false;
  unsigned budget = 1;
  std::optional<std::uint64_t> seed_flag;
  std::size_t samples = 10000;

  CLI::App* prove_cmd = app.add_subcommand("prove", "decide a sequent and print the proof");
  prove_cmd->add_option("sequent", sequent_text, "sequent, e.g. \"p & q => q\"")->required();
  prove_cmd->add_flag("--json", json, "emit the proof as JSON");
  prove_cmd->add_flag("--latex", latex_fmt, "emit the proof as a LaTeX inference tree");
  prove_cmd->add_flag("--cut-free-check", cut_free_check, "re-validate the emitted proof");
  prove_cmd->add_option("--verify", verify_path, "check a proof JSON file against the sequent");

  CLI::App* derive_cmd = app.add_subcommand("derive", "decide atomic derivability in a base");
  derive_cmd->add_option("base", base_path, "base file")->required();
  derive_cmd->add_option("sequent", judgment_text, "atomic sequent, e.g. \"p => q\"")->required();
  derive_cmd->add_flag("--json", json, "emit the derivation as JSON");
  derive_cmd->add_flag("--latex", latex_fmt, "emit the derivation as LaTeX");

  CLI::App* support_cmd = app.add_subcommand("support", "evaluate a support judgment");
  support_cmd->add_option("base", base_path, "base file")->required();
  support_cmd->add_option("judgment", sequent_text, "judgment, e.g. \"p |= q\"")->required();
  support_cmd->add_option("--mode", mode, "exact | oracle | refute")->required();
  support_cmd->add_option("--budget", budget, "refuter extension budget");
  support_cmd->add_flag("--json", json, "emit the verdict as JSON");

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "run a completeness pipeline on a valid sequent");
  extract_cmd->add_option("sequent", sequent_text, "sequent")->required();
  extract_cmd->add_option("--variant", variant, "full | quasi")->required();
  extract_cmd->add_option("--out", out_path, "write the report to a file");
  extract_cmd->add_flag("--json", json, "emit the report as JSON");
  extract_cmd->add_flag("--latex", latex_fmt, "emit the proof stages as LaTeX");

  CLI::App* cx_cmd = app.add_subcommand("counterexample", "reproduce a named counterexample");
  cx_cmd->add_option("name", which, "prop6")->required();
  cx_cmd->add_flag("--json", json, "emit the report as JSON");

  CLI::App* check_cmd = app.add_subcommand("check", "run the acceptance property suites");
  check_cmd->add_option("--samples", samples, "reference sample count (default 10000)");
  check_cmd->add_option("--seed", seed_flag, "seed (overrides BES_SEED)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (app.got_subcommand(prove_cmd))
      return cmd_prove(out, sequent_text, json, latex_fmt, cut_free_check, verify_path);
    if (app.got_subcommand(derive_cmd))
      return cmd_derive(out, base_path, judgment_text, json, latex_fmt);
    if (app.got_subcommand(support_cmd))
      return cmd_support(out, base_path, sequent_text, mode, budget, json);
    if (app.got_subcommand(extract_cmd))
      return cmd_extract(out, sequent_text, variant, out_path, json, latex_fmt);
    if (app.got_subcommand(cx_cmd)) return cmd_counterexample(out, which, json);
    if (app.got_subcommand(check_cmd)) return cmd_check(out, seed_flag, samples);
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "error: no command\n";
  return 3;
}

}  // namespace bes::cli
