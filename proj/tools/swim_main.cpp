#include <CLI11.hpp>

#include <cstdint>
#include <optional>
#include <string>

#include "swim/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"planar swimmer simulator and controllability toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::string chosen;
  for (const char* name : {"simulate", "phase", "rank", "sweep"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the rank-scan seed");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return swim::run_command(chosen, config_path, out_dir, seed);
}
