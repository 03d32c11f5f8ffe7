// Batch front end: load an instance file, run one construction or a
// verification sweep, emit a JSON report.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "nchardy/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"inner-outer factorization toolkit for truncated Fock modules"};
  app.require_subcommand(1);

  std::string instance_path, out_path;
  nch::RunFlags flags;
  long long seed_opt = -1;

  auto add_common = [&](CLI::App* cmd, bool needs_instance) {
    if (needs_instance)
      cmd->add_option("--instance", instance_path, "instance JSON file")->required();
    cmd->add_option("--out", out_path, "write the report to this path");
    cmd->add_option("--trunc", flags.trunc_override, "override the truncation degree");
    cmd->add_option("--tol-rank", flags.tol_rank, "override the rank tolerance");
    cmd->add_option("--tol-alg", flags.tol_alg, "override the algebra tolerance");
    cmd->add_option("--seed", seed_opt, "override the seed");
    cmd->add_option("--count", flags.count, "number of generated cases");
    cmd->add_option("--degree", flags.degree, "maximal polynomial degree");
    cmd->add_flag("--emit-matrices", flags.emit_matrices, "include dense payloads");
  };

  std::vector<std::string> with_instance = {"validate",       "factor-vector",
                                            "factor-commutant", "factor-element",
                                            "wold",           "dual",
                                            "beurling"};
  for (const auto& name : with_instance) add_common(app.add_subcommand(name), true);
  add_common(app.add_subcommand("classical-compare"), false);
  add_common(app.add_subcommand("verify"), false);

  CLI11_PARSE(app, argc, argv);
  if (seed_opt >= 0) {
    flags.seed = std::uint64_t(seed_opt);
    flags.seed_set = true;
  }

  std::string command = app.get_subcommands().front()->get_name();
  nlohmann::json report;
  try {
    if (command == "classical-compare" || command == "verify") {
      report = nch::dispatch_command(command, nullptr, flags);
    } else {
      nch::InstanceSpec spec = nch::parse_instance_file(instance_path);
      report = nch::dispatch_command(command, &spec, flags);
    }
  } catch (const nch::NchError& ex) {
    nch::ReportBuilder rb(command, nullptr);
    rb.set_error(nch::err_name(ex.code()), ex.what());
    report = rb.finish();
  }

  std::string text = report.dump(2);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    out << text << "\n";
  }
  std::cout << text << "\n";
  return report["verdict"] == "pass" ? 0 : 1;
}
