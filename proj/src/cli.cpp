#include "nordgeom/cli.hpp"

#include <algorithm>
#include <cstdlib>

#include "CLI11.hpp"
#include "json.hpp"
#include "nordgeom/families.hpp"
#include "nordgeom/report.hpp"

namespace nordgeom {

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::string input;
  std::string preset;
  std::vector<std::string> binds;
  std::string format = "text";
  bool json_alias = false;
  std::string golden_dir;

  bool as_json() const { return json_alias || format == "json"; }
};

struct UsageError : Error {
  using Error::Error;
};

Assignment parse_bindings(const std::vector<std::string>& binds) {
  Assignment out;
  for (const auto& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=rational, got '" + b + "'");
    const std::string name = b.substr(0, eq);
    if (out.count(name)) throw UsageError("parameter '" + name + "' bound twice");
    try {
      out[name] = parse_rational(b.substr(eq + 1));
    } catch (const ParseError& e) {
      throw UsageError("--bind " + b + ": " + e.what());
    }
  }
  return out;
}

RawInput load(const Options& o) {
  if (o.input.empty() == o.preset.empty()) throw UsageError("give exactly one of an input file or --preset");
  RawInput in = o.preset.empty() ? load_input(o.input) : preset_input(o.preset);
  return bind_parameters(std::move(in), parse_bindings(o.binds));
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

bool all_pass(const std::vector<Verdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

// Prints the validation block and reports whether the input is usable.
bool report_invalid(const RawInput& in, const Options& o, std::ostream& out) {
  const auto verdicts = validate(in);
  if (all_pass(verdicts)) return false;
  json j = {{"validation", validation_json(verdicts)}, {"valid", false}};
  if (o.as_json()) {
    print_json(out, j);
  } else {
    for (const auto& v : verdicts) out << v.describe() << "\n";
  }
  return true;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const RawInput in = load(o);
  const auto verdicts = validate(in);
  const bool ok = all_pass(verdicts);
  if (o.as_json()) {
    print_json(out, {{"validation", validation_json(verdicts)}, {"valid", ok}});
  } else {
    for (const auto& v : verdicts) out << v.describe() << "\n";
    out << (ok ? "valid" : "invalid") << "\n";
  }
  return ok ? kOk : kMathFailure;
}

int cmd_report(const Options& o, std::ostream& out, bool classes_only) {
  const RawInput in = load(o);
  if (report_invalid(in, o, out)) return kMathFailure;
  const GeometrySetup setup = make_setup(in);
  const json j = classes_only ? build_classification(in, setup) : build_report(in, setup);
  if (o.as_json()) {
    print_json(out, j);
  } else {
    render_text(j, out);
  }
  return kOk;
}

int cmd_verify_paper(const Options& o, std::ostream& out) {
  const std::filesystem::path dir = o.golden_dir.empty() ? default_golden_dir() : std::filesystem::path(o.golden_dir);
  const auto checks = verify_paper(dir);
  int tables = 0, tables_ok = 0, theorems = 0, theorems_ok = 0;
  for (const auto& c : checks) {
    int& total = c.kind == "table" ? tables : theorems;
    int& ok = c.kind == "table" ? tables_ok : theorems_ok;
    ++total;
    ok += c.pass ? 1 : 0;
  }
  const bool pass = tables_ok == tables && theorems_ok == theorems;
  const std::string summary = std::to_string(tables_ok) + "/" + std::to_string(tables) + " tables, " +
                              std::to_string(theorems_ok) + "/" + std::to_string(theorems) +
                              " theorems: " + (pass ? "PASS" : "FAIL");
  if (o.as_json()) {
    json arr = json::array();
    for (const auto& c : checks) {
      arr.push_back({{"kind", c.kind}, {"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    }
    print_json(out, {{"checks", arr}, {"pass", pass}, {"summary", summary}});
  } else {
    for (const auto& c : checks) {
      out << (c.pass ? "PASS  " : "FAIL  ") << c.kind << " " << c.name << "\n";
      for (const auto& d : c.details) out << "        " << d << "\n";
    }
    out << summary << "\n";
  }
  return pass ? kOk : kMathFailure;
}

void apply_degree_env() {
  const char* env = std::getenv("NORDGEOM_MAX_DEGREE");
  if (!env || !*env) return;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1000) throw UsageError(std::string("bad NORDGEOM_MAX_DEGREE '") + env + "'");
  set_max_degree(static_cast<int>(v));
}

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("input", o.input, "JSON input file");
  cmd->add_option("--preset", o.preset, "built-in input: paper-family, paper-frame, paper-frame-abelian");
  cmd->add_option("--bind", o.binds, "bind a parameter, name=rational (repeatable)");
}

void add_format_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--json", o.json_alias, "same as --format json");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact curvature and classification of left-invariant Norden structures on Lie groups",
               "nordgeom"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "check antisymmetry, Jacobi and the Norden conditions");
  add_input_options(validate_cmd, o);
  add_format_options(validate_cmd, o);

  auto* report_cmd = app.add_subcommand("report", "full geometry report");
  add_input_options(report_cmd, o);
  add_format_options(report_cmd, o);

  auto* classify_cmd = app.add_subcommand("classify", "W0/W1/W2/W3 class flags with residuals");
  add_input_options(classify_cmd, o);
  add_format_options(classify_cmd, o);

  auto* verify_cmd = app.add_subcommand("verify-paper", "reproduce the reference tables and theorem checks");
  add_format_options(verify_cmd, o);
  verify_cmd->add_option("--golden-dir", o.golden_dir, "directory holding the golden JSON tables");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    apply_degree_env();
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (report_cmd->parsed()) return cmd_report(o, out, false);
    if (classify_cmd->parsed()) return cmd_report(o, out, true);
    return cmd_verify_paper(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kMathFailure;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace nordgeom
