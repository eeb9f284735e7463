#include <string>

#include "CLI11.hpp"
#include "bec/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Simulator and verification lab for the regularized condensation equation"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  for (const char* name : {"run", "verify", "continuation", "steady", "sweep"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "Config file (INI sections, key = value)")->required();
    sub->add_option("--out", out_dir, "Output directory, overrides [output] dir");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : bec::kExitConfig;
  }
  return bec::run_command_file(app.get_subcommands().front()->get_name(), config_path, out_dir);
}
