#include "lmom/commands.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

namespace {

struct Leaf {
  const lmom::Command* command;
  CLI::App* app;
  std::map<std::string, std::string> values;
};

bool config_sets_threads(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto key = lmom::detail::trim(line.substr(0, line.find('=')));
    if (key == "threads") return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moments of L(1, chi) over subgroup characters, Dedekind sums and lattice tools"};
  app.require_subcommand(0, 1);
  bool csv = false;
  long long threads = 0;
  std::string config_path;
  app.add_flag("--csv", csv, "CSV output instead of JSON lines");
  app.add_option("--threads", threads, "worker count (default: LMOM_THREADS or hardware)")->check(CLI::PositiveNumber);
  app.add_option("--config", config_path, "key=value configuration file; flags override it")->check(CLI::ExistingFile);

  std::map<std::string, CLI::App*> groups;
  std::vector<Leaf> leaves;
  leaves.reserve(lmom::commands().size() + 1);
  for (const lmom::Command& cmd : lmom::commands()) {
    const auto space = cmd.path.find(' ');
    CLI::App* parent = &app;
    std::string leaf_name = cmd.path;
    if (space != std::string::npos) {
      const std::string group = cmd.path.substr(0, space);
      leaf_name = cmd.path.substr(space + 1);
      auto it = groups.find(group);
      if (it == groups.end()) {
        static const std::map<std::string, std::string> about = {
            {"ded", "Dedekind sums and correlations"},
            {"lattice", "rho_2, sigma_s, census and exceptional primes"},
            {"moments", "moments of |L(1, chi)| and constants"},
            {"disc", "star discrepancy and bounds"},
            {"farey", "Farey sets and subgroup fraction counts"}};
        CLI::App* g = app.add_subcommand(group, about.at(group));
        g->require_subcommand(group == "moments" ? 0 : 1, 1);
        g->fallthrough();
        it = groups.emplace(group, g).first;
      }
      parent = it->second;
    }
    CLI::App* sub = parent->add_subcommand(leaf_name, cmd.help);
    sub->fallthrough();
    leaves.push_back({&cmd, sub, {}});
    Leaf& leaf = leaves.back();
    for (const lmom::ParamSpec& p : cmd.params) {
      if (cmd.path == "verify" && p.name == "group") {
        sub->add_option("group", leaf.values[p.name], p.help);
      } else {
        sub->add_option("--" + p.name, leaf.values[p.name], p.help);
      }
    }
  }
  // `moments` alone runs `moments compute`.
  leaves.push_back({lmom::find_command("moments compute"), groups.at("moments"), {}});
  for (const lmom::ParamSpec& p : leaves.back().command->params) {
    groups.at("moments")->add_option("--" + p.name, leaves.back().values[p.name], p.help);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lmom::kExitUsage;
  }

  lmom::ExperimentConfig config;
  config.threads = lmom::par::thread_count();
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      const std::size_t env_threads = config.threads;
      config = lmom::parse_config(ss.str());
      if (!config_sets_threads(ss.str())) config.threads = env_threads;
    }
  } catch (const lmom::usage_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return lmom::kExitUsage;
  }

  Leaf* chosen = nullptr;
  for (Leaf& leaf : leaves) {
    if (!leaf.app->parsed()) continue;
    const bool is_group_default = leaf.app == groups.at("moments");
    if (is_group_default && !leaf.app->get_subcommands().empty()) continue;
    chosen = &leaf;
  }
  if (chosen) {
    if (config.command != chosen->command->path) {
      // parameters from a file written for another command do not apply
      if (!config.command.empty()) config.params.clear();
      config.command = chosen->command->path;
    }
    for (const lmom::ParamSpec& p : chosen->command->params) {
      const std::string flag = chosen->command->path == "verify" && p.name == "group" ? "group" : "--" + p.name;
      if (chosen->app->count(flag) > 0) config.params[p.name] = chosen->values[p.name];
    }
  } else if (config.command.empty()) {
    std::cerr << app.help();
    return lmom::kExitUsage;
  }
  if (csv) config.output = lmom::OutputFormat::csv;
  if (threads > 0) config.threads = static_cast<std::size_t>(threads);
  return lmom::run(config, std::cout, std::cerr);
}
