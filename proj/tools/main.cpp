#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace sshrabi::cli;

  CLI::App app{"Dimerized-chain quasiparticles, ground-state double well, multichain Rabi waves and Raman checks"};
  app.require_subcommand(1, 1);

  RunConfig config;
  std::string params;
  std::string format = "csv";

  for (const char* name : {"band", "stability", "ground-state", "rabi", "spectra-check"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--params", params, "key = value parameter file");
    sub->add_option("--out", config.out_dir, "output directory")->capture_default_str();
    sub->add_option("--format", format, "tabular output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_flag("--print-config", config.print_config, "print the effective parameters and exit");
    sub->add_flag_function("-v,--verbose", [&config](std::int64_t count) { config.verbosity = static_cast<int>(count); },
                           "progress messages on stderr");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (!params.empty()) config.params = params;
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
  return run(config, std::cout, std::cerr);
}
