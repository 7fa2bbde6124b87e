#include "bell/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "bell/errors.hpp"
#include "bell/io.hpp"
#include "bell/lhv.hpp"
#include "bell/polytope.hpp"
#include "bell/quantum.hpp"

namespace bell::cli {
namespace {

using io::json;

struct RunConfig {
  std::string subcommand;
  std::string path;
  std::string demo;
  std::vector<double> s_values;
  double tol = kDefaultTol;
  std::string format = "text";
  std::uint64_t seed = kDefaultSeed;

  bool as_json() const { return format == "json"; }
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

template <typename T>
std::string list(const std::vector<T>& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

quantum::DensityMatrix state_preset(const std::string& name) {
  if (name == "singlet") return quantum::singlet_state();
  if (name == "ghz3") return quantum::ghz_state(3);
  if (name == "ghz4") return quantum::ghz_state(4);
  throw InputError("unknown state preset '" + name + "' (expected singlet, ghz3, ghz4)");
}

Behavior quantum_behavior(const json& q) {
  const std::string state_name = q.at("state").get<std::string>();
  const auto state = state_preset(state_name);
  if (!q.contains("directions")) {
    if (state_name == "singlet") return quantum::behavior_from_quantum(state, quantum::chsh_optimal_assignment());
    return quantum::behavior_from_quantum(state, quantum::xy_assignment(state_name == "ghz3" ? 3 : 4));
  }
  std::vector<std::vector<quantum::Direction>> directions;
  for (const auto& party : q.at("directions")) {
    auto& row = directions.emplace_back();
    for (const auto& d : party) row.emplace_back(d.at(0).get<double>(), d.at(1).get<double>());
  }
  return quantum::behavior_from_quantum(state, quantum::qubit_assignment(directions));
}

// Behavior file, model file, joint file or quantum preset.
Behavior load_behavior(const std::string& path) {
  const json j = read_json(path);
  if (j.contains("probabilities")) return io::behavior_from_json(j);
  if (j.contains("components")) return lhv::behavior_from_model(io::model_from_json(j));
  if (j.contains("joint")) return lhv::behavior_from_joint(io::joint_from_json(j));
  if (j.contains("quantum")) return quantum_behavior(j.at("quantum"));
  throw InputError(path + ": expected one of probabilities, components, joint, quantum");
}

BellFunctional load_functional(const std::string& path_or_name) {
  if (path_or_name == "chsh") return chsh_functional();
  if (path_or_name == "mermin") return mermin_functional();
  return io::functional_from_json(read_json(path_or_name));
}

void emit(const RunConfig& cfg, std::ostream& out, json report, const std::string& text) {
  if (cfg.as_json()) {
    report["convention"] = kCanonicalOrderVersion;
    out << report.dump(2) << '\n';
  } else {
    out << "convention: " << kCanonicalOrderVersion << '\n' << text;
  }
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const Behavior b = load_behavior(cfg.path);
  const auto r = validate_behavior(b, cfg.tol);
  std::ostringstream text;
  text << "valid: " << (r.is_valid ? "yes" : "no") << '\n'
       << "max negativity: " << num(r.max_negativity) << '\n'
       << "max normalization error: " << num(r.max_normalization_error) << '\n';
  if (!r.offending_indices.empty()) text << "offending indices: " << list(r.offending_indices) << '\n';
  emit(cfg, out, io::to_json(r), text.str());
  return r.is_valid ? kExitOk : kExitNegative;
}

int cmd_nosignalling(const RunConfig& cfg, std::ostream& out) {
  const Behavior b = load_behavior(cfg.path);
  const auto r = no_signalling_check(b, cfg.tol);
  std::ostringstream text;
  text << "no-signalling: " << (r.passes ? "passes" : "fails") << '\n'
       << "max deviation: " << num(r.max_deviation) << '\n';
  if (r.witness)
    text << "witness: parties " << list(r.witness->parties) << ", joint settings " << r.witness->joint_setting_a
         << " vs " << r.witness->joint_setting_b << '\n';
  emit(cfg, out, io::to_json(r), text.str());
  return r.passes ? kExitOk : kExitNegative;
}

std::string describe(const FeasibilityResult& r) {
  std::ostringstream text;
  text << "status: " << (r.status == Feasibility::feasible ? "feasible" : "infeasible") << '\n'
       << "residual: " << num(r.residual) << '\n';
  if (r.joint) text << "joint: " << list(r.joint->table()) << '\n';
  if (r.certificate) {
    text << "certificate value: " << num(r.certificate->value) << '\n'
         << "certificate classical max: " << num(r.certificate->classical_max) << '\n'
         << "certificate margin: " << num(r.certificate->margin) << '\n'
         << "certificate coefficients: " << list(r.certificate->functional.coefficients) << '\n';
  }
  return text.str();
}

int cmd_membership(const RunConfig& cfg, std::ostream& out) {
  const Behavior b = load_behavior(cfg.path);
  const auto r = local_polytope_membership(b, cfg.tol);
  emit(cfg, out, io::to_json(r), describe(r));
  return r.status == Feasibility::feasible ? kExitOk : kExitNegative;
}

int cmd_maximize(const RunConfig& cfg, std::ostream& out) {
  const BellFunctional f = load_functional(cfg.path);
  const auto r = maximize_functional_classical(f);
  json report = {{"functional", f.name},
                 {"classical_max", r.value},
                 {"argmax", r.argmax.assignment()},
                 {"argmax_index", r.argmax.index()},
                 {"strategies", f.scenario.full_assignment_count()}};
  std::ostringstream text;
  text << "functional: " << (f.name.empty() ? "(unnamed)" : f.name) << '\n'
       << "strategies: " << f.scenario.full_assignment_count() << '\n'
       << "classical max: " << num(r.value) << '\n'
       << "argmax: " << list(r.argmax.assignment()) << " (index " << r.argmax.index() << ")\n";
  if (!cfg.s_values.empty()) {
    json bounds = json::array();
    for (double s : cfg.s_values) {
      const double v = maximize_functional_s_restricted(f, s);
      bounds.push_back({{"s", s}, {"max", v}});
      text << "s-restricted max at s=" << num(s) << ": " << num(v) << '\n';
    }
    report["s_restricted"] = std::move(bounds);
  }
  emit(cfg, out, std::move(report), text.str());
  return kExitOk;
}

std::vector<double> default_s_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 9; ++k) grid.push_back(0.05 * k);
  return grid;
}

// Table of the corner-enumerated bound against 2(1-2s)^2.
int cmd_sbound(const RunConfig& cfg, std::ostream& out) {
  const auto grid = cfg.s_values.empty() ? default_s_grid() : cfg.s_values;
  bool ok = true;
  json rows = json::array();
  std::ostringstream text;
  text << std::left << std::setw(8) << "s" << std::setw(20) << "corner max" << std::setw(20) << "2(1-2s)^2"
       << "difference\n";
  double previous = std::numeric_limits<double>::infinity();
  for (double s : grid) {
    const double v = s_stochastic_max_chsh(s);
    const double closed = 2.0 * (1.0 - 2.0 * s) * (1.0 - 2.0 * s);
    const double diff = std::abs(v - closed);
    ok = ok && diff <= 1e-12;
    if (cfg.s_values.empty()) ok = ok && v < previous;
    previous = v;
    rows.push_back({{"s", s}, {"max", v}, {"closed_form", closed}, {"difference", diff}});
    text << std::setw(8) << num(s) << std::setw(20) << num(v) << std::setw(20) << num(closed) << num(diff) << '\n';
  }
  text << "agrees with closed form: " << (ok ? "yes" : "no") << '\n';
  emit(cfg, out, {{"rows", std::move(rows)}, {"passed", ok}}, text.str());
  return ok ? kExitOk : kExitNegative;
}

int cmd_ghz(const RunConfig& cfg, std::ostream& out) {
  const auto r = ghz_contradiction_check(cfg.tol);
  const bool ok = !r.deterministic_consistent && r.parity_product == 1 && r.required_parity == -1 &&
                  r.lp_status.status == Feasibility::infeasible;
  std::ostringstream text;
  text << "deterministic strategies checked: " << r.strategies_checked << '\n'
       << "strategies meeting all four constraints: " << r.consistent_strategies << '\n'
       << "parity product of +-1 values: " << (r.parity_product > 0 ? "+1" : "-1") << '\n'
       << "parity product required by GHZ correlations: " << (r.required_parity > 0 ? "+1" : "-1") << '\n'
       << "Mermin value (quantum): " << num(r.mermin_quantum_value) << '\n'
       << "Mermin classical max: " << num(r.mermin_classical_max) << '\n'
       << describe(r.lp_status) << "contradiction confirmed: " << (ok ? "yes" : "no") << '\n';
  json report = {{"deterministic_consistent", r.deterministic_consistent},
                 {"consistent_strategies", r.consistent_strategies},
                 {"strategies_checked", r.strategies_checked},
                 {"parity_product", r.parity_product},
                 {"required_parity", r.required_parity},
                 {"mermin_quantum_value", r.mermin_quantum_value},
                 {"mermin_classical_max", r.mermin_classical_max},
                 {"lp_status", io::to_json(r.lp_status)},
                 {"passed", ok}};
  emit(cfg, out, std::move(report), text.str());
  return ok ? kExitOk : kExitNegative;
}

int demo_chsh_classical(const RunConfig& cfg, std::ostream& out) {
  const auto f = chsh_functional();
  const auto r = maximize_functional_classical(f);
  const std::size_t count = lhv::enumerate_deterministic(f.scenario).size();
  const bool ok = count == 16 && r.exact && *r.exact == 2;
  std::ostringstream text;
  text << "CHSH classical maximum over " << count << " deterministic strategies: " << num(r.value) << '\n'
       << "attained by strategy " << list(r.argmax.assignment()) << '\n'
       << "passed: " << (ok ? "yes" : "no") << '\n';
  emit(cfg, out, {{"strategies", count}, {"classical_max", r.value}, {"argmax", r.argmax.assignment()}, {"passed", ok}},
       text.str());
  return ok ? kExitOk : kExitNegative;
}

int demo_chsh_quantum(const RunConfig& cfg, std::ostream& out) {
  const Behavior b = quantum::behavior_from_quantum(quantum::singlet_state(), quantum::chsh_optimal_assignment());
  const double value = evaluate_functional(chsh_functional(), b);
  const auto r = local_polytope_membership(b, cfg.tol);
  const bool ok = std::abs(std::abs(value) - 2.0 * std::numbers::sqrt2) <= 1e-9 &&
                  r.status == Feasibility::infeasible && r.certificate && r.certificate->margin >= 0.8;
  std::ostringstream text;
  text << "singlet CHSH value: " << num(value) << " (|value| vs 2*sqrt(2) = " << num(2.0 * std::numbers::sqrt2)
       << ")\n"
       << describe(r) << "passed: " << (ok ? "yes" : "no") << '\n';
  emit(cfg, out, {{"chsh_value", value}, {"membership", io::to_json(r)}, {"passed", ok}}, text.str());
  return ok ? kExitOk : kExitNegative;
}

int demo_pr_box(const RunConfig& cfg, std::ostream& out) {
  const Behavior b = lhv::make_pr_box();
  const auto ns = no_signalling_check(b, cfg.tol);
  const double value = evaluate_functional(chsh_functional(), b);
  const auto r = local_polytope_membership(b, cfg.tol);
  const bool ok = ns.passes && std::abs(value - 4.0) <= 1e-12 && r.status == Feasibility::infeasible;
  std::ostringstream text;
  text << "PR box no-signalling: " << (ns.passes ? "passes" : "fails") << '\n'
       << "PR box CHSH value: " << num(value) << '\n'
       << describe(r) << "passed: " << (ok ? "yes" : "no") << '\n';
  emit(cfg, out,
       {{"no_signalling", io::to_json(ns)}, {"chsh_value", value}, {"membership", io::to_json(r)}, {"passed", ok}},
       text.str());
  return ok ? kExitOk : kExitNegative;
}

int demo_fine_roundtrip(const RunConfig& cfg, std::ostream& out) {
  const Scenario s = Scenario::uniform(2, 2, 2);
  Rng rng(cfg.seed);
  double model_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto m = lhv::random_model(rng, s);
    const auto direct = lhv::behavior_from_model(m);
    const auto via_joint = lhv::behavior_from_joint(lhv::joint_from_model(m));
    for (std::size_t e = 0; e < s.table_size(); ++e)
      model_err = std::max(model_err, std::abs(direct.table()[e] - via_joint.table()[e]));
  }
  double joint_err = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto j = lhv::random_joint(rng, s);
    const auto back = lhv::joint_from_model(lhv::model_from_joint(j));
    for (std::size_t k = 0; k < j.table().size(); ++k)
      joint_err = std::max(joint_err, std::abs(j.table()[k] - back.table()[k]));
  }
  const bool ok = model_err <= 1e-12 && joint_err <= 1e-12;
  std::ostringstream text;
  text << "seed: " << cfg.seed << '\n'
       << "model -> joint -> behavior vs model -> behavior, max error over 100 models: " << num(model_err) << '\n'
       << "joint -> model -> joint, max error over 100 joints: " << num(joint_err) << '\n'
       << "passed: " << (ok ? "yes" : "no") << '\n';
  emit(cfg, out, {{"seed", cfg.seed}, {"model_roundtrip_error", model_err}, {"joint_roundtrip_error", joint_err},
                  {"passed", ok}},
       text.str());
  return ok ? kExitOk : kExitNegative;
}

int cmd_demo(const RunConfig& cfg, std::ostream& out) {
  if (cfg.demo == "chsh-classical") return demo_chsh_classical(cfg, out);
  if (cfg.demo == "chsh-quantum") return demo_chsh_quantum(cfg, out);
  if (cfg.demo == "ghz") return cmd_ghz(cfg, out);
  if (cfg.demo == "sbound") return cmd_sbound(cfg, out);
  if (cfg.demo == "pr-box") return demo_pr_box(cfg, out);
  if (cfg.demo == "fine-roundtrip") return demo_fine_roundtrip(cfg, out);
  throw InputError("unknown demo '" + cfg.demo + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bell-scenario toolkit: behaviors, local models, local-polytope membership", "bellkit"};
  app.require_subcommand(1);
  app.add_option("--tol", cfg.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", cfg.seed, "seed for sampled demos");

  const auto with_path = [&](const std::string& name, const std::string& help, const std::string& what) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("path", cfg.path, what)->required();
    sub->fallthrough();
    return sub;
  };
  with_path("validate", "check nonnegativity and normalization", "behavior, model, joint or quantum preset file");
  with_path("nosignalling", "check marginal independence", "behavior, model, joint or quantum preset file");
  with_path("membership", "decide local-polytope membership by LP", "behavior, model, joint or quantum preset file");
  auto* maximize = with_path("maximize", "classical maximum of a Bell functional", "functional file, chsh or mermin");
  maximize->add_option("--s", cfg.s_values, "also report the s-restricted maximum");
  auto* sbound = app.add_subcommand("sbound", "CHSH bound for s-stochastic local models");
  sbound->add_option("--s", cfg.s_values, "stochasticity values (default grid 0, 0.05, ..., 0.45)");
  sbound->fallthrough();
  app.add_subcommand("ghz", "GHZ contradiction check")->fallthrough();
  auto* demo = app.add_subcommand("demo", "run a canned end-to-end demonstration");
  demo->add_option("name", cfg.demo, "demo name")
      ->required()
      ->check(CLI::IsMember({"chsh-classical", "chsh-quantum", "ghz", "sbound", "pr-box", "fine-roundtrip"}));
  demo->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.subcommand == "validate") return cmd_validate(cfg, out);
    if (cfg.subcommand == "nosignalling") return cmd_nosignalling(cfg, out);
    if (cfg.subcommand == "membership") return cmd_membership(cfg, out);
    if (cfg.subcommand == "maximize") return cmd_maximize(cfg, out);
    if (cfg.subcommand == "sbound") return cmd_sbound(cfg, out);
    if (cfg.subcommand == "ghz") return cmd_ghz(cfg, out);
    if (cfg.subcommand == "demo") return cmd_demo(cfg, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitError;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  err << "error: unknown subcommand\n";
  return kExitError;
}

}  // namespace bell::cli
