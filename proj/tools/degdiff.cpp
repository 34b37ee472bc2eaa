// Command-line front end: degdiff solve|evaluate|validate|continuum --config <path> [--out <prefix>]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "degdiff/cli.hpp"

namespace {

unsigned thread_count() {
  const char* env = std::getenv("DEGDIFF_THREADS");
  if (env == nullptr) return 1;
  try {
    const long n = std::stol(env);
    return n > 0 ? static_cast<unsigned>(n) : 1u;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar Riemann solutions for piecewise-constant degenerate diffusion"};
  app.require_subcommand(1);

  std::string config_path;
  std::string prefix = "./";
  for (const char* name : {"solve", "evaluate", "validate", "continuum"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "configuration file")->required();
    sub->add_option("--out", prefix, "output path prefix");
  }
  CLI11_PARSE(app, argc, argv);

  const auto command = degdiff::cli::parse_command(app.get_subcommands().front()->get_name());
  std::ifstream in(config_path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << config_path << '\n';
    return 2;
  }
  std::ostringstream text;
  text << in.rdbuf();

  degdiff::cli::RunConfig config;
  try {
    config = degdiff::cli::parse_config(text.str());
    config.command = *command;
    degdiff::cli::check_command(config);
  } catch (const degdiff::cli::ConfigError& e) {
    std::cerr << config_path << ": " << e.what() << '\n';
    return 2;
  }
  return degdiff::cli::run(config, prefix, std::cout, thread_count());
}
