#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <map>

#include "bwm/config.hpp"
#include "bwm/suites.hpp"

int main(int argc, char** argv) {
  const std::map<std::string, bwm::Suite> commands{
      {"simulate", bwm::Suite::conservation}, {"picard", bwm::Suite::picard},
      {"verify-identity", bwm::Suite::identity}, {"norms", bwm::Suite::norms},
      {"linear-test", bwm::Suite::linear},     {"rescale-check", bwm::Suite::scaling},
  };

  CLI::App app{"Pseudo-spectral biharmonic wave map simulator and diagnostics"};
  app.require_subcommand(1);
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  for (const auto& [name, suite] : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config, "Experiment file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "Output directory (overrides the config)");
    sub->add_option("--seed", seed, "Seed (overrides the config)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  bwm::Experiment e;
  try {
    e = bwm::load_experiment(config);
  } catch (const bwm::Error& err) {
    std::cerr << "bwm: " << err.what() << "\n";
    return 1;
  }
  e.suite = commands.at(name);
  if (!out.empty()) e.output = out;
  if (app.get_subcommands().front()->count("--seed") > 0) {
    e.seed = seed;
    e.run.data.seed = seed;
  }

  try {
    const bwm::Report rep = bwm::run_suite(e);
    for (const auto& c : rep.checks()) {
      std::printf("%-4s %-40s %s\n", c.passed ? "ok" : "FAIL", c.name.c_str(), bwm::format_double(c.measured).c_str());
    }
    for (const auto& f : rep.flags()) std::printf("flag %s\n", f.c_str());
    std::printf("report %s/report.json\n", e.output.c_str());
    return rep.exit_code();
  } catch (const bwm::InvalidArgument& err) {
    std::cerr << "bwm: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "bwm: " << err.what() << "\n";
    return 2;
  }
}
