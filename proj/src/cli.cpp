#include "cqt/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cqt/error.hpp"
#include "cqt/io.hpp"
#include "cqt/metrics.hpp"
#include "cqt/sweep.hpp"

namespace cqt {

namespace {

struct OracleFlags {
  int theta_points = OracleSettings{}.theta_points;
  int phi_points = OracleSettings{}.phi_points;

  void add(CLI::App* app) {
    app->add_option("--theta-points", theta_points, "Oracle grid points in theta")->check(CLI::Range(2, 100000));
    app->add_option("--phi-points", phi_points, "Oracle grid points in phi")->check(CLI::Range(1, 100000));
  }
  OracleSettings settings() const {
    OracleSettings s;
    s.theta_points = theta_points;
    s.phi_points = phi_points;
    return s;
  }
};

void print_error(std::ostream& err, const std::string& code, const std::string& message) {
  Json j;
  j["error"] = {{"code", code}, {"message", message}};
  err << j.dump() << "\n";
}

// Writes to `path`, or to `out` when path is "-".
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path == "-") {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("io", "cannot open output file '" + path + "'");
  write(file);
  if (!file) throw ValidationError("io", "failed writing output file '" + path + "'");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Controlled teleportation fidelities of three-qubit X states"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate one state");
  std::string state_file;
  std::string builtin;
  std::string eval_family;
  std::optional<int> eval_rank;
  std::optional<double> eval_p;
  std::optional<double> eval_gamma;
  bool eval_oracle = false;
  OracleFlags eval_flags;
  auto* state_opt = eval->add_option("--state", state_file, "JSON file with an X state or a family spec");
  auto* builtin_opt = eval->add_option("--builtin", builtin, "ghz, max-mixed or ghz-werner:v=<x>");
  auto* family_opt = eval->add_option("--family", eval_family, "mems, nmems or mems-gamma");
  eval->add_option("--rank", eval_rank, "Boundary rank");
  eval->add_option("--p", eval_p, "Boundary parameter");
  eval->add_option("--gamma", eval_gamma, "mems-gamma parameter");
  eval->add_flag("--oracle", eval_oracle, "Also run the protocol oracle");
  eval_flags.add(eval);
  state_opt->excludes(builtin_opt)->excludes(family_opt);
  builtin_opt->excludes(family_opt);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Seeded family sweep to CSV");
  std::string sweep_family = "mems";
  SweepConfig cfg;
  bool serial = false;
  std::string sweep_out = "-";
  OracleFlags sweep_flags;
  sweep->add_option("--family", sweep_family, "mems, nmems or mems-gamma");
  sweep->add_option("--ranks", cfg.ranks, "Comma-separated ranks")->delimiter(',');
  sweep->add_option("--samples", cfg.samples_per_rank, "Samples per rank");
  sweep->add_option("--seed", cfg.seed, "Sampler seed");
  sweep->add_flag("--oracle", cfg.oracle, "Fill the oracle columns");
  sweep->add_flag("--serial", serial, "Compute rows on one thread");
  sweep->add_option("--out", sweep_out, "Output CSV path, - for stdout");
  sweep_flags.add(sweep);

  // boundary
  auto* boundary = app.add_subcommand("boundary", "Boundary curve to CSV");
  std::string boundary_family = "mems";
  int boundary_rank = 2;
  int grid = 101;
  bool boundary_oracle = false;
  std::string boundary_out = "-";
  OracleFlags boundary_flags;
  boundary->add_option("--family", boundary_family, "mems, nmems or mems-gamma");
  boundary->add_option("--rank", boundary_rank, "Rank 2..8")->check(CLI::Range(2, 8));
  boundary->add_option("--grid", grid, "Number of p points");
  boundary->add_flag("--oracle", boundary_oracle, "Fill the oracle columns");
  boundary->add_option("--out", boundary_out, "Output CSV path, - for stdout");
  boundary_flags.add(boundary);

  // verify
  auto* verify = app.add_subcommand("verify", "Closed form versus protocol oracle");
  VerifyConfig vcfg;
  std::string verify_out = "-";
  OracleFlags verify_flags;
  verify->add_option("--family", vcfg.families, "Comma-separated: mems, nmems, mems-gamma, ghz-werner")
      ->delimiter(',');
  verify->add_option("--ranks", vcfg.ranks, "Comma-separated ranks")->delimiter(',');
  verify->add_option("--samples", vcfg.samples, "Samples per rank")->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed, "Sampler seed");
  verify->add_option("--tol", vcfg.tol, "Hard-check tolerance on |closed - oracle|");
  verify->add_option("--out", verify_out, "JSON report path, - for stdout");
  verify_flags.add(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what());
    return kExitValidation;
  }

  try {
    if (*eval) {
      XState x;
      if (!state_file.empty()) {
        x = read_state_file(state_file);
      } else if (!builtin.empty()) {
        x = builtin_state(builtin);
      } else if (!eval_family.empty()) {
        Json spec = {{"family", eval_family}};
        if (eval_rank) spec["rank"] = *eval_rank;
        if (eval_p) spec["p"] = *eval_p;
        if (eval_gamma) spec["gamma"] = *eval_gamma;
        x = state_from_json(spec);
      } else {
        throw ValidationError("usage", "eval needs --state, --builtin or --family");
      }
      Json j;
      j["state"] = to_json(x);
      j["metrics"] = to_json(evaluate(x));
      if (eval_oracle) j["oracle"] = to_json(oracle_f_cqt(embed_unchecked(x), eval_flags.settings()));
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    if (*sweep) {
      cfg.family = parse_family(sweep_family);
      cfg.parallel = !serial;
      cfg.oracle_settings = sweep_flags.settings();
      const auto rows = run_sweep(cfg);
      emit(sweep_out, out, [&](std::ostream& s) { write_csv(s, rows); });
      return kExitOk;
    }

    if (*boundary) {
      const auto rows =
          boundary_rows(parse_family(boundary_family), boundary_rank, grid, boundary_oracle, boundary_flags.settings());
      emit(boundary_out, out, [&](std::ostream& s) { write_csv(s, rows); });
      return kExitOk;
    }

    if (*verify) {
      for (int r : vcfg.ranks) {
        if (r < 1 || r > 8) throw ValidationError("config", "ranks must lie in 1..8");
      }
      vcfg.oracle_settings = verify_flags.settings();
      const VerifyOutcome outcome = run_verify(vcfg);
      if (verify_out == "-") {
        out << outcome.report.dump(2) << "\n";
        err << outcome.summary;
      } else {
        emit(verify_out, out, [&](std::ostream& s) { s << outcome.report.dump(2) << "\n"; });
        out << outcome.summary;
      }
      return outcome.hard_checks_passed ? kExitOk : kExitVerifyFailed;
    }
  } catch (const ValidationError& e) {
    print_error(err, e.code(), e.what());
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace cqt
