#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ustat/bench/commands.hpp"
#include "ustat/bench/config.hpp"
#include "ustat/errors.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 0;
  bool seed_set = false;
  bool out_set = false;
  bool threads_set = false;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ubench: high-dimensional U-statistic inference and Monte Carlo studies"};
  app.require_subcommand(1);

  std::map<std::string, CliOptions> options;
  for (const std::string& name : ustat::bench::command_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " command");
    CliOptions& opt = options[name];
    sub->add_option("--config", opt.config_path, "flat key = value config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", opt.seed, "override the config master seed")
        ->each([&opt](const std::string&) { opt.seed_set = true; });
    sub->add_option("--out", opt.out, "override the report output path")
        ->each([&opt](const std::string&) { opt.out_set = true; });
    sub->add_option("--threads", opt.threads, "worker threads (0 = all cores); never changes results")
        ->each([&opt](const std::string&) { opt.threads_set = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const CliOptions& opt = options[command];

  try {
    ustat::bench::KVConfig cfg = ustat::bench::KVConfig::from_file(opt.config_path);
    if (opt.seed_set) cfg.set("seed", std::to_string(opt.seed));
    if (opt.out_set) cfg.set("out", opt.out);
    if (opt.threads_set) cfg.set("threads", std::to_string(opt.threads));

    const ustat::bench::CommandResult result = ustat::bench::run_command(command, cfg);
    std::cout << result.summary;
    return 0;
  } catch (const ustat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ustat::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const ustat::DegeneracyError& e) {
    std::cerr << "numerical degeneracy: " << e.what() << '\n';
    return 4;
  } catch (const ustat::InputError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
