// Command-line front end; talks to the simulator exclusively through the
// shared-library C API.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "ifm/ifm.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitOracleMismatch = 2;

int fail(ifm_status status) {
  std::cerr << "error: " << ifm_last_error() << "\n";
  return status == IFM_ERR_ORACLE_MISMATCH ? kExitOracleMismatch : kExitValidation;
}

int run_command(const std::string& file, const std::string& canned, bool list_canned,
                const std::string& format, const std::string& out_path, bool check) {
  if (list_canned) {
    for (int i = 0; i < ifm_canned_count(); ++i) {
      std::cout << ifm_canned_name(i) << "\n";
    }
    return kExitOk;
  }
  if (file.empty() == canned.empty()) {
    std::cerr << "error: pass exactly one of a scenario file or --canned <name> "
                 "(or --list-canned)\n";
    return kExitValidation;
  }

  ifm_scenario* scenario = nullptr;
  ifm_status status = canned.empty() ? ifm_scenario_load(file.c_str(), &scenario)
                                     : ifm_scenario_canned(canned.c_str(), &scenario);
  if (status != IFM_OK) return fail(status);

  ifm_report* report = nullptr;
  status = ifm_run(scenario, &report);
  if (status != IFM_OK) {
    ifm_scenario_free(scenario);
    return fail(status);
  }

  char* text = nullptr;
  status = ifm_report_render(report, format.c_str(), &text);
  int exit_code = kExitOk;
  if (status != IFM_OK) {
    exit_code = fail(status);
  } else if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write '" << out_path << "'\n";
      exit_code = kExitValidation;
    } else {
      out << text;
    }
  }
  ifm_string_free(text);
  ifm_report_free(report);

  if (exit_code == kExitOk && check) {
    status = ifm_check(scenario, 1e-12);
    if (status != IFM_OK) exit_code = fail(status);
  }
  ifm_scenario_free(scenario);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-photon interferometer simulator with polarization-selective absorbers"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario and print its report");
  std::string file, canned, format = "table", out_path;
  bool list_canned = false, check = false;
  run->add_option("scenario", file, "Scenario config file (JSON)");
  run->add_option("--canned", canned, "Run a built-in scenario by name");
  run->add_flag("--list-canned", list_canned, "List built-in scenario names and exit");
  run->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"table", "machine"}));
  run->add_option("--out", out_path, "Write the report to this file instead of stdout");
  run->add_flag("--check", check,
                "Cross-check the run against the dense reference evolution "
                "(exit 2 on mismatch beyond 1e-12)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  return run_command(file, canned, list_canned, format, out_path, check);
}
