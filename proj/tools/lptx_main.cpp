// lptx: batch driver for the transport-estimate experiment suite.
//
// Subcommands: list, verify <experiment>, probe-log-loss, sweep-delta0,
// solve. Reports are written as CSV (one row per case) plus a JSON summary;
// identical config and seed reproduce byte-identical CSV. Exit status: 0 all
// verdicts pass, 1 input error, 2 verdict failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lptx/norms.hpp"
#include "lptx/verify.hpp"

namespace {

using lptx::EstimateReport;

struct Options {
  std::string experiment;
  int grid = 256;
  int nt = 256;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string op = "riesz(1,1)";
  std::string coeff_spec = "builtin:default-smooth";
  std::string out;
  std::string lambdas = "4,8,16,32,64,128,256,512,1024";
  std::string deltas = "0.05,0.1,0.2,0.4";
  std::string g_kind = "band-limited";
  double g_lambda = 16.0;
  int substeps = 2;
  int bank = 50;
  int n_terms = 8;
  std::string config_file;
};

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw CLI::ValidationError("empty list: " + csv);
  return out;
}

// Applies a JSON config file underneath any explicitly passed flags.
void apply_config(const CLI::App& app, Options& o) {
  if (o.config_file.empty()) return;
  std::ifstream is(o.config_file);
  if (!is) throw CLI::ValidationError("--config", "cannot open " + o.config_file);
  std::ostringstream buf;
  buf << is.rdbuf();
  std::string text = buf.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw CLI::ValidationError("--config", o.config_file + ":" + std::to_string(line) + ": " + e.what());
  }
  auto flag_given = [&](const std::string& name) {
    auto* opt = app.get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "experiment") {
      if (o.experiment.empty()) o.experiment = value.get<std::string>();
    } else if (key == "grid") {
      if (!flag_given("--grid")) o.grid = value.get<int>();
    } else if (key == "nt") {
      if (!flag_given("--nt")) o.nt = value.get<int>();
    } else if (key == "seed") {
      if (!flag_given("--seed")) o.seed = value.get<std::uint64_t>();
    } else if (key == "threads") {
      if (!flag_given("--threads")) o.threads = value.get<int>();
    } else if (key == "operator") {
      if (!flag_given("--operator")) o.op = value.get<std::string>();
    } else if (key == "coeff_spec") {
      if (!flag_given("--coeff-spec")) o.coeff_spec = value.get<std::string>();
    } else if (key == "out") {
      if (!flag_given("--out")) o.out = value.get<std::string>();
    } else if (key == "lambda") {
      if (!flag_given("--lambda")) {
        std::string s;
        for (const auto& x : value) s += (s.empty() ? "" : ",") + std::to_string(x.get<double>());
        o.lambdas = s;
      }
    } else if (key == "delta") {
      if (!flag_given("--delta")) {
        std::string s;
        for (const auto& x : value) s += (s.empty() ? "" : ",") + std::to_string(x.get<double>());
        o.deltas = s;
      }
    } else if (key == "g_kind") {
      if (!flag_given("--g-kind")) o.g_kind = value.get<std::string>();
    } else if (key == "g_lambda") {
      if (!flag_given("--g-lambda")) o.g_lambda = value.get<double>();
    } else if (key == "substeps") {
      if (!flag_given("--substeps")) o.substeps = value.get<int>();
    } else if (key == "bank") {
      if (!flag_given("--bank")) o.bank = value.get<int>();
    } else if (key == "n_terms") {
      if (!flag_given("--n-terms")) o.n_terms = value.get<int>();
    } else {
      throw CLI::ValidationError("--config", "unknown key '" + key + "' in " + o.config_file);
    }
  }
}

std::filesystem::path output_dir(const Options& o) {
  if (!o.out.empty()) return o.out;
  if (const char* env = std::getenv("LPTX_OUT"); env != nullptr && *env != '\0') return env;
  return "out";
}

lptx::VerifyOptions verify_options(const Options& o) {
  return lptx::VerifyOptions{o.seed, o.grid, o.nt, o.threads, o.op};
}

lptx::CoeffSpec resolve_coeff_spec(const Options& o) {
  const std::string builtin_prefix = "builtin:";
  if (o.coeff_spec.rfind(builtin_prefix, 0) == 0)
    return lptx::builtin_coeff_spec(o.coeff_spec.substr(builtin_prefix.size()));
  if (!std::filesystem::exists(o.coeff_spec))
    throw std::invalid_argument("coefficient spec not found: " + o.coeff_spec);
  return lptx::load_coeff_spec(o.coeff_spec);
}

lptx::SpaceTimeField make_g(const Options& o, const lptx::Grid& grid, const lptx::TimeGrid& tg) {
  return lptx::g_family(o.g_kind == "spike" ? "spike-sweep" : o.g_kind, o.g_lambda, o.seed, grid, tg);
}

EstimateReport run_experiment(const Options& o) {
  lptx::VerifyOptions v = verify_options(o);
  lptx::Grid grid = lptx::make_grid(o.grid);
  lptx::TimeGrid tg{o.nt};
  if (o.experiment == "log-l1") {
    lptx::LogL1Options lo;
    lo.bank = o.bank;
    return lptx::check_logl1(v, lo);
  }
  if (o.experiment == "commutator") {
    lptx::CommutatorOptions co;
    co.bank = o.bank;
    co.k_max = std::min(6, grid.band_max());
    return lptx::check_commutator(v, co);
  }
  if (o.experiment == "trifrequency") {
    lptx::TrifrequencyOptions to;
    to.bank = o.bank;
    return lptx::check_trifrequency(v, to);
  }
  if (o.experiment == "multilinear") {
    lptx::MultilinearOptions mo;
    return lptx::check_multilinear(v, mo);
  }
  if (o.experiment == "interpolation") {
    lptx::CoeffSpec spec = resolve_coeff_spec(o);
    lptx::CoefficientDecomposition cd = lptx::synthesize(spec, grid, tg);
    return lptx::check_interpolation(v, cd);
  }
  if (o.experiment == "simplex") {
    return lptx::check_simplex_combinatorics(v, {});
  }
  if (o.experiment == "log-loss") {
    lptx::CoeffSpec spec = resolve_coeff_spec(o);
    spec.delta0 = std::min(spec.delta0, 0.1);
    lptx::CoefficientDecomposition cd = lptx::synthesize(spec, grid, tg);
    lptx::LogLossOptions lo;
    lo.lambdas = parse_list(o.lambdas);
    lo.substeps = o.substeps;
    return lptx::probe_log_loss(v, cd, lo);
  }
  if (o.experiment == "delta0-sweep") {
    lptx::CoeffSpec spec = resolve_coeff_spec(o);
    lptx::SweepDelta0Options so;
    so.deltas = parse_list(o.deltas);
    so.n_max = o.n_terms;
    return lptx::sweep_delta0(v, spec, make_g(o, grid, tg), so);
  }
  throw std::invalid_argument("unknown experiment: " + o.experiment + " (see `lptx list`)");
}

int emit_report(const EstimateReport& rep, const Options& o) {
  auto dir = output_dir(o);
  std::filesystem::create_directories(dir);
  lptx::write_csv(rep, dir / (rep.experiment + ".csv"));
  lptx::write_json_summary(rep, dir / (rep.experiment + "_summary.json"));
  std::cout << rep.experiment << ": " << (rep.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& [name, ok] : rep.checks) std::cout << "  [" << (ok ? "ok" : "FAIL") << "] " << name << "\n";
  std::cout << "  wrote " << (dir / (rep.experiment + ".csv")).string() << "\n";
  return rep.pass ? 0 : 2;
}

int run_solve(const Options& o) {
  lptx::Grid grid = lptx::make_grid(o.grid);
  lptx::TimeGrid tg{o.nt};
  lptx::CoeffSpec spec = resolve_coeff_spec(o);
  lptx::CoefficientDecomposition cd = lptx::synthesize(spec, grid, tg);
  lptx::Multiplier m = lptx::make_multiplier(grid, o.op);
  lptx::SolveResult r = lptx::reference_solve(cd, m, make_g(o, grid, tg), o.substeps);

  auto dir = output_dir(o);
  std::filesystem::create_directories(dir);
  std::ofstream os(dir / "u.bin", std::ios::binary);
  for (int i = 0; i < r.u.nodes(); ++i) lptx::write_field_record(os, r.u.slice(i));

  nlohmann::ordered_json j;
  j["method"] = r.method;
  j["steps"] = r.steps;
  j["grid"] = o.grid;
  j["nt"] = o.nt;
  j["sup_l1"] = r.sup_l1;
  nlohmann::ordered_json norms = nlohmann::ordered_json::array();
  for (int i = 0; i < r.u.nodes(); ++i) norms.push_back(lptx::lp_norm(r.u.slice(i), 1.0));
  j["l1_per_node"] = norms;
  std::ofstream js(dir / "solve_summary.json");
  js << j.dump(2) << "\n";
  std::cout << "solve: sup_t ||u||_1 = " << r.sup_l1 << ", wrote " << (dir / "u.bin").string() << "\n";
  return 0;
}

int run_list() {
  for (const auto& e : lptx::experiment_catalog())
    std::cout << e.id << " → " << e.anchor << " — " << e.summary << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudospectral toolkit and estimate harness for singular transport equations on the 2-torus"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--grid", o.grid, "points per axis (power of two >= 8)");
    cmd->add_option("--nt", o.nt, "time intervals over [0,1]");
    cmd->add_option("--seed", o.seed, "deterministic seed");
    cmd->add_option("--threads", o.threads, "worker cap for independent cases");
    cmd->add_option("--operator", o.op, "identity | riesz(i,j) | smoothed_riesz(i,j)");
    cmd->add_option("--out", o.out, "output directory (default $LPTX_OUT or ./out)");
    cmd->add_option("--config", o.config_file, "JSON run configuration (flags win)");
    cmd->add_option("--coeff-spec", o.coeff_spec, "coefficient spec path or builtin:<name>");
    cmd->add_option("--bank", o.bank, "random cases per row");
    cmd->add_option("--substeps", o.substeps, "solver substeps per data interval");
  };

  CLI::App* list_cmd = app.add_subcommand("list", "print the experiment catalog");
  CLI::App* verify_cmd = app.add_subcommand("verify", "run one estimate experiment");
  verify_cmd->add_option("experiment", o.experiment, "experiment id (see `lptx list`)")->required();
  add_common(verify_cmd);
  verify_cmd->add_option("--lambda", o.lambdas, "comma separated spike amplitudes");
  verify_cmd->add_option("--delta", o.deltas, "comma separated delta0 values");
  verify_cmd->add_option("--n-terms", o.n_terms, "series terms for delta0-sweep");
  verify_cmd->add_option("--g-kind", o.g_kind, "source family: constant | band-limited | spike");
  verify_cmd->add_option("--g-lambda", o.g_lambda, "amplitude for --g-kind spike");

  CLI::App* probe_cmd = app.add_subcommand("probe-log-loss", "log-loss probe over a spike amplitude sweep");
  add_common(probe_cmd);
  probe_cmd->add_option("--lambda", o.lambdas, "comma separated spike amplitudes");

  CLI::App* sweep_cmd = app.add_subcommand("sweep-delta0", "series contraction rate over delta0 values");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--delta", o.deltas, "comma separated delta0 values");
  sweep_cmd->add_option("--n-terms", o.n_terms, "series terms per delta0");
  sweep_cmd->add_option("--g-kind", o.g_kind, "source family: constant | band-limited | spike");
  sweep_cmd->add_option("--g-lambda", o.g_lambda, "amplitude for --g-kind spike");

  CLI::App* solve_cmd = app.add_subcommand("solve", "integrate the transport equation and dump the solution");
  add_common(solve_cmd);
  solve_cmd->add_option("--g-kind", o.g_kind, "source family: constant | band-limited | spike");
  solve_cmd->add_option("--g-lambda", o.g_lambda, "amplitude for --g-kind spike");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list_cmd->parsed()) return run_list();
    if (probe_cmd->parsed()) {
      apply_config(*probe_cmd, o);
      o.experiment = "log-loss";
      return emit_report(run_experiment(o), o);
    }
    if (sweep_cmd->parsed()) {
      apply_config(*sweep_cmd, o);
      o.experiment = "delta0-sweep";
      return emit_report(run_experiment(o), o);
    }
    if (solve_cmd->parsed()) {
      apply_config(*solve_cmd, o);
      return run_solve(o);
    }
    apply_config(*verify_cmd, o);
    return emit_report(run_experiment(o), o);
  } catch (const lptx::blowup_error& e) {
    std::cerr << "error: " << e.what() << " (delta0 outside the contraction regime)\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
