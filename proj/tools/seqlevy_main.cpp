// Command-line front end: subcommands validate / cf / simulate / verify.
// All experiment parameters live in one JSON config; flags only pick the
// subcommand, the config path, the output directory and the thread count.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "seqlevy/commands.hpp"

namespace {

std::string resolve_output_dir(const std::string& flag_dir,
                               const seqlevy::io::RunConfig& cfg) {
  if (!flag_dir.empty()) return flag_dir;
  if (!cfg.output_dir.empty()) return cfg.output_dir;
  if (const char* env = std::getenv("SEQLEVY_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Levy processes on truncated sequence-space duals"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "JSON run configuration")->required();
    sub->add_option("-o,--output-dir", out_dir,
                    "output directory (default: config, then $SEQLEVY_OUTPUT_DIR)");
    sub->add_option("-j,--threads", threads, "worker threads");
  };

  CLI::App* validate = app.add_subcommand("validate", "check the Levy measure");
  CLI::App* cf = app.add_subcommand("cf", "tabulate the characteristic function");
  CLI::App* simulate = app.add_subcommand("simulate", "sample replica paths");
  CLI::App* verify = app.add_subcommand("verify", "run the verification suite");
  for (CLI::App* sub : {validate, cf, simulate, verify}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : seqlevy::cmd::kExitUsage;
  }

  try {
    const seqlevy::io::RunConfig cfg = seqlevy::io::load_run_config(config_path);
    const std::string dir = resolve_output_dir(out_dir, cfg);
    if (validate->parsed()) return seqlevy::cmd::run_validate(cfg, dir);
    if (cf->parsed()) return seqlevy::cmd::run_cf(cfg, dir);
    if (simulate->parsed()) return seqlevy::cmd::run_simulate(cfg, dir, threads);
    if (verify->parsed()) return seqlevy::cmd::run_verify(cfg, dir, threads);
  } catch (const seqlevy::io::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return seqlevy::cmd::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return seqlevy::cmd::kExitFail;
  }
  return seqlevy::cmd::kExitUsage;
}
