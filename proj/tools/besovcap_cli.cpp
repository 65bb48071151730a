#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "besovcap/harness.hpp"

using namespace besovcap;

namespace {

struct Options {
  std::string config;
  std::string out;
  std::optional<unsigned> workers;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;
};

void add_common(CLI::App* cmd, Options& o, const std::vector<std::pair<std::string, std::string>>& shortcuts) {
  cmd->add_option("--config", o.config, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  cmd->add_option("--set", o.sets, "override, key=value (repeatable)");
  for (const auto& [key, help] : shortcuts) {
    cmd->add_option_function<std::string>(
        "--" + key, [&o, key](const std::string& v) { o.flags[key] = v; }, help);
  }
}

int run(const std::string& name, const Options& o, const std::function<SweepResult(const SweepConfig&)>& fn) {
  KeyValues kv;
  if (!o.config.empty()) kv = read_config_file(o.config);
  if (!kv.count("experiment")) kv["experiment"] = name;
  for (const auto& [k, v] : o.flags) kv[k] = v;
  for (const std::string& s : o.sets) apply_override(kv, s);
  if (!o.out.empty()) kv["out"] = o.out;
  if (o.workers) kv["workers"] = std::to_string(*o.workers);
  const SweepConfig cfg = SweepConfig::from_key_values(kv);
  const SweepResult res = fn(cfg);
  const EmittedFiles files = emit(res, cfg);
  std::printf("wrote %s\n", files.csv.c_str());
  if (!files.svg.empty()) std::printf("wrote %s\n", files.svg.c_str());
  std::printf("wrote %s\n", files.summary.c_str());
  for (const std::string& line : res.summary) std::printf("%s\n", line.c_str());
  return res.failures > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Besov-space capacities of finite point sets: norms, bounds and growth sweeps"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    std::function<SweepResult(const SweepConfig&)> fn;
    std::vector<std::pair<std::string, std::string>> shortcuts;
  };
  const std::vector<std::pair<std::string, std::string>> sweep_keys{
      {"n-min", "smallest sigma-star level"}, {"n-max", "largest sigma-star level"}, {"pairs", "p:q list"},
      {"N", "N list"},                        {"seed", "random seed"}};
  const std::vector<std::pair<std::string, std::string>> point_keys{
      {"points", "sigma_star:<n> | interp:<N> | random:<N> | monomial:<N> | zeros:<z1>;<z2>;..."},
      {"pairs", "p:q list"},
      {"seed", "random seed"}};
  const std::vector<Command> commands{
      {"besov-norm", "Besov norms of one function", run_besov_norm, point_keys},
      {"sigma-star-sweep", "seminorm and capacity bounds for sigma-star over n", run_sigma_star_sweep, sweep_keys},
      {"region-table", "capacity bounds over the witness families", run_region_table, sweep_keys},
      {"capacity-bounds", "upper and duality lower bounds for one point set", run_capacity_bounds, point_keys},
      {"wiener-cap", "Wiener capacity with a certified lower bound", run_wiener_cap,
       {{"points", "point set"}, {"degree", "LP degree"}, {"seed", "random seed"}}},
      {"wiener-schaffer", "Wiener capacities and Schaffer ratios for sigma-star", run_wiener_schaffer, sweep_keys},
      {"schaffer", "Schaffer ratio of the companion matrix", run_schaffer, point_keys},
  };

  std::vector<Options> opts(commands.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = app.add_subcommand(commands[i].name, commands[i].help);
    add_common(sub, opts[i], commands[i].shortcuts);
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    // flag names use dashes, config keys use underscores
    Options o = opts[i];
    std::map<std::string, std::string> keyed;
    for (const auto& [k, v] : o.flags) {
      std::string key = k;
      for (char& ch : key) {
        if (ch == '-') ch = '_';
      }
      keyed[key] = v;
    }
    o.flags = keyed;
    try {
      return run(commands[i].name, o, commands[i].fn);
    } catch (const CostGuardError& e) {
      std::fprintf(stderr, "cost guard: %s\n", e.what());
      return 2;
    } catch (const CertificateError& e) {
      std::fprintf(stderr, "certificate: %s\n", e.what());
      return 3;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
