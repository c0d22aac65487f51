#include "rpmc/cli.hpp"

#include "rpmc/automata.hpp"
#include "rpmc/dtmc.hpp"
#include "rpmc/formula.hpp"
#include "rpmc/measures.hpp"
#include "rpmc/rpctl.hpp"
#include "rpmc/rpctlstar.hpp"
#include "rpmc/translate.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace rpmc::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised for unreadable inputs and bad flag combinations.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Dtmc load_model(const std::string& path) { return parse_dtmc(read_file(path)); }

std::size_t default_cap() {
  if (const char* env = std::getenv("RPMC_MAX_AUTOMATON_STATES")) {
    try {
      return std::stoul(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("RPMC_MAX_AUTOMATON_STATES is not a number: ") + env);
    }
  }
  return kDefaultAutomatonCap;
}

struct CheckOptions {
  std::string model;
  std::string formula;
  std::string formula_file;
  std::string logic = "rpctl";
  std::string threshold;
  bool measures = false;
  bool json = false;
  std::optional<std::size_t> cap;
};

std::string fraction(const Rational& q) { return to_fraction_string(q); }

int run_check(const CheckOptions& o, std::ostream& out) {
  auto mode = parse_logic_mode(o.logic);
  if (!mode) throw UsageError("unknown logic '" + o.logic + "'");
  if (o.formula.empty() == o.formula_file.empty()) throw UsageError("give exactly one of --formula and --formula-file");

  std::optional<TruthValue> threshold;
  if (!o.threshold.empty()) {
    if (!is_robust(*mode)) throw UsageError("--threshold only applies to robust logics");
    threshold = TruthValue::parse(o.threshold);
    if (!threshold || !threshold->canonical()) throw UsageError("bad threshold '" + o.threshold + "'");
  }

  std::string text = o.formula.empty() ? read_file(o.formula_file) : o.formula;
  TaggedFormula f = parse_formula(text, *mode);
  Dtmc m = load_model(o.model);
  std::size_t cap = o.cap.value_or(default_cap());

  Json report;
  report["logic"] = std::string(to_string(*mode));
  report["formula"] = print_formula(f.formula);
  int code = kOk;

  if (is_robust(*mode)) {
    CheckResult r = *mode == LogicMode::Rpctl ? check_rpctl(m, f) : check_rpctlstar(m, f, cap);
    report["value"] = r.initial_value.to_string();
    report["canonical"] = r.initial_value.canonical();
    Json per_state = Json::object();
    for (StateId s = 0; s < m.size(); ++s) per_state[m.name(s)] = r.per_state[s].to_string();
    report["per_state"] = per_state;
    if (o.measures) {
      Json measures = Json::object();
      for (const auto& sm : r.measures) {
        Json row = Json::array();
        for (const auto& q : sm.per_state[m.initial()]) row.push_back(fraction(q));
        measures[sm.formula] = row;
      }
      report["measures"] = measures;
    }
    if (threshold) {
      std::string verdict;
      if (!r.initial_value.canonical()) {
        verdict = "incomparable";
        code = kThresholdFailed;
      } else if (leq(*threshold, r.initial_value)) {
        verdict = "holds";
      } else {
        verdict = "fails";
        code = kThresholdFailed;
      }
      report["threshold"] = Json{{"level", threshold->to_string()}, {"result", verdict}};
    }
    if (!o.json && !r.non_canonical_subformulas.empty()) {
      report["non_canonical"] = r.non_canonical_subformulas;
    }
  } else {
    StateSet sat = *mode == LogicMode::Pctl ? check_pctl(m, f) : check_pctlstar(m, f, cap);
    report["value"] = sat.test(m.initial()) ? "true" : "false";
    report["canonical"] = true;
    Json per_state = Json::object();
    for (StateId s = 0; s < m.size(); ++s) per_state[m.name(s)] = sat.test(s) ? "true" : "false";
    report["per_state"] = per_state;
  }

  if (o.json) {
    out << report.dump(2) << '\n';
    return code;
  }

  out << "logic:   " << report["logic"].get<std::string>() << '\n';
  out << "formula: " << report["formula"].get<std::string>() << '\n';
  out << "value:   " << report["value"].get<std::string>();
  if (!report["canonical"].get<bool>()) out << "  (non-canonical)";
  out << '\n';
  out << "per state:\n";
  for (const auto& [name, v] : report["per_state"].items()) out << "  " << name << ": " << v.get<std::string>() << '\n';
  if (report.contains("non_canonical")) {
    out << "non-canonical subformulas:\n";
    for (const auto& s : report["non_canonical"]) out << "  " << s.get<std::string>() << '\n';
  }
  if (report.contains("measures")) {
    out << "measures at " << m.name(m.initial()) << " (levels 1111 0111 0011 0001):\n";
    for (const auto& [name, row] : report["measures"].items()) {
      out << "  " << name << ":";
      for (const auto& q : row) out << ' ' << q.get<std::string>();
      out << '\n';
    }
  }
  if (report.contains("threshold")) {
    out << "threshold " << report["threshold"]["level"].get<std::string>() << ": "
        << report["threshold"]["result"].get<std::string>() << '\n';
  }
  return code;
}

int run_translate(bool dot_mode, const std::string& level_text, const std::string& text, std::ostream& out) {
  if (dot_mode) {
    TaggedFormula f = parse_formula(text, LogicMode::PctlStar);
    try {
      check_well_formed(f.formula, LogicMode::Pctl);
      f.mode = LogicMode::Pctl;
    } catch (const FormulaError&) {
    }
    TaggedFormula g = dot(f);
    out << to_string(g.mode) << ": " << print_formula(g.formula) << '\n';
    return kOk;
  }
  auto level = TruthValue::parse(level_text);
  if (!level || !level->canonical()) throw UsageError("bad level '" + level_text + "'");
  TaggedFormula f = parse_formula(text, LogicMode::RpctlStar);
  out << print_formula(lower(f, *level).formula) << '\n';
  return kOk;
}

std::string set_text(const Dtmc& m, const StateSet& set) {
  std::string s = "{";
  bool first = true;
  for (StateId i = 0; i < m.size(); ++i) {
    if (!set.test(i)) continue;
    if (!first) s += ", ";
    s += m.name(i);
    first = false;
  }
  return s + "}";
}

int run_inspect(const std::string& path, std::ostream& out) {
  Dtmc m = load_model(path);
  out << "states: " << m.size() << " (initial " << m.name(m.initial()) << ")\n";
  for (StateId s = 0; s < m.size(); ++s) {
    std::string labels;
    for (const auto& a : m.labels(s)) labels += (labels.empty() ? "" : ", ") + a;
    out << "  " << m.name(s) << " {" << labels << "} row sum " << to_string(m.matrix().row_sum(s)) << '\n';
  }
  std::string bs;
  for (const auto& b : bsccs(m.matrix())) bs += (bs.empty() ? "" : " ") + set_text(m, b);
  out << "BSCCs: " << bs << '\n';
  StateSet init(m.size());
  init.set(m.initial());
  out << "reachable: " << set_text(m, reachable_from(m.matrix(), init)) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact model checker for robust probabilistic temporal logics over Markov chains", "rpmc"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a formula on a model");
  check_cmd->add_option("--model", check.model, "Model file")->required();
  check_cmd->add_option("--formula", check.formula, "Formula text");
  check_cmd->add_option("--formula-file", check.formula_file, "File holding the formula");
  check_cmd->add_option("--logic", check.logic, "rpctl, rpctl-star, pctl or pctl-star")->capture_default_str();
  check_cmd->add_option("--threshold", check.threshold, "Exit 1 unless the value dominates this level");
  check_cmd->add_flag("--measures", check.measures, "Report the per-level probabilities");
  check_cmd->add_flag("--json", check.json, "JSON output");
  std::size_t cap = 0;
  auto* cap_opt = check_cmd->add_option("--max-automaton-states", cap, "Determinization state cap");

  bool dot_mode = false;
  std::string level, translate_text;
  auto* tr_cmd = app.add_subcommand("translate", "Dot a classical formula or lower a robust one");
  auto* dot_opt = tr_cmd->add_flag("--dot", dot_mode, "Read a classical formula as robust");
  auto* lower_opt = tr_cmd->add_option("--lower", level, "Classical formula for 'value >= LEVEL'");
  dot_opt->excludes(lower_opt);
  tr_cmd->add_option("formula", translate_text, "Formula text")->required();

  std::string inspect_path;
  auto* inspect_cmd = app.add_subcommand("inspect", "Describe a model");
  inspect_cmd->add_option("model", inspect_path, "Model file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*check_cmd) {
      if (*cap_opt) check.cap = cap;
      return run_check(check, out);
    }
    if (*tr_cmd) {
      if (!dot_mode && level.empty()) throw UsageError("translate needs --dot or --lower LEVEL");
      return run_translate(dot_mode, level, translate_text, out);
    }
    return run_inspect(inspect_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ParseError& e) {
    err << "formula error: " << e.what() << '\n';
    return kUsageError;
  } catch (const FormulaError& e) {
    err << "formula error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << '\n';
    return kModelError;
  } catch (const ltl::AutomatonLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kAutomatonLimit;
  }
}

}  // namespace rpmc::cli
