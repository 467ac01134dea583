// Command line harness for the curveflow library: single runs, convergence
// sweeps and mesh-ratio studies, all driven by a JSON config file.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "curveflow/curveflow.hpp"

namespace cf = curveflow;

int main(int argc, char** argv) {
  CLI::App app{"Variational polygonal-curve flows: mcf, volume-preserving mcf, wetting"};
  app.require_subcommand(1);

  std::string config_path;
  std::string dump_path;
  auto* cmd_run = app.add_subcommand("run", "run one simulation and write CSV/JSON outputs");
  cmd_run->add_option("--config", config_path, "JSON config file")->required();
  cmd_run->add_option("--dump-system", dump_path,
                      "also dump the initially assembled system as CSV");

  std::string conv_config;
  std::vector<std::size_t> ns;
  std::string metric_name = "err1";
  auto* cmd_conv = app.add_subcommand("converge", "convergence sweep over node counts");
  cmd_conv->add_option("--config", conv_config, "JSON config file")->required();
  cmd_conv->add_option("--ns", ns, "node counts, e.g. --ns 5,10,20,40,80")
      ->required()
      ->delimiter(',');
  cmd_conv->add_option("--metric", metric_name, "err1 | err2 | err3");

  std::string mri_config;
  std::string penalty_flag = "on";
  auto* cmd_mri = app.add_subcommand("mri", "mesh ratio indicator time series");
  cmd_mri->add_option("--config", mri_config, "JSON config file")->required();
  cmd_mri->add_option("--penalty", penalty_flag, "on | off")
      ->check(CLI::IsMember({"on", "off"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_run->parsed()) {
      return cf::cmd_run(cf::load_config(config_path), dump_path);
    }
    if (cmd_conv->parsed()) {
      return cf::cmd_converge(cf::load_config(conv_config), ns, cf::parse_metric(metric_name));
    }
    if (cmd_mri->parsed()) {
      return cf::cmd_mri(cf::load_config(mri_config), penalty_flag == "on");
    }
  } catch (const cf::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return cf::kExitConfigError;
  } catch (const cf::CurveflowError& e) {
    std::fprintf(stderr, "numerical abort: %s\n", e.what());
    return cf::kExitNumericalAbort;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
