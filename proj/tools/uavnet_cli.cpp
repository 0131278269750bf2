#include <uavnet/uavnet.h>

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Failure : std::runtime_error {
  int code;
  Failure(int c, const std::string& what) : std::runtime_error(what), code(c) {}
};

void check(uavnet_status st, const std::string& context) {
  if (st != UAVNET_OK) throw Failure(static_cast<int>(st), context + ": " + uavnet_last_error());
}

struct ScenarioDeleter {
  void operator()(uavnet_scenario* s) const { uavnet_scenario_destroy(s); }
};
struct RunDeleter {
  void operator()(uavnet_run* r) const { uavnet_run_destroy(r); }
};
struct GridDeleter {
  void operator()(uavnet_grid* g) const { uavnet_grid_destroy(g); }
};
using ScenarioPtr = std::unique_ptr<uavnet_scenario, ScenarioDeleter>;
using RunPtr = std::unique_ptr<uavnet_run, RunDeleter>;
using GridPtr = std::unique_ptr<uavnet_grid, GridDeleter>;

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

ScenarioPtr load(const std::string& config, std::optional<std::uint64_t> seed) {
  uavnet_scenario* raw = nullptr;
  if (config.empty())
    check(uavnet_scenario_create(&raw), "default scenario");
  else
    check(uavnet_scenario_load(config.c_str(), &raw), "config");
  ScenarioPtr s(raw);
  if (seed) check(uavnet_scenario_set_seed(s.get(), *seed), "seed");
  return s;
}

std::uint64_t seed_of(const uavnet_scenario* s) {
  std::uint64_t seed = 0;
  check(uavnet_scenario_get_seed(s, &seed), "seed");
  return seed;
}

std::vector<RunPtr> compare_runs(const uavnet_scenario* s, const std::string& algorithms) {
  const auto names = split(algorithms, ',');
  std::vector<uavnet_run*> raw(names.size(), nullptr);
  size_t count = 0;
  check(uavnet_compare(s, algorithms.c_str(), raw.data(), raw.size(), &count), "compare");
  std::vector<RunPtr> runs;
  for (size_t i = 0; i < count; ++i) runs.emplace_back(raw[i]);
  return runs;
}

std::vector<const uavnet_run*> views(const std::vector<RunPtr>& runs) {
  std::vector<const uavnet_run*> out;
  for (const auto& r : runs) out.push_back(r.get());
  return out;
}

std::string algorithm_of(const uavnet_run* r) {
  const char* name = nullptr;
  check(uavnet_run_algorithm(r, &name), "run");
  return name;
}

void write_summary_header(std::ostream& out, const std::string& prefix) {
  out << prefix
      << "seed,algorithm,mean_unserved_pct,final_delay_sd_s,total_bits,energy_j,ee_bits_per_j\n";
}

void write_summary_row(std::ostream& out, const std::string& prefix, std::uint64_t seed,
                       const uavnet_run* r) {
  uavnet_summary sum{};
  check(uavnet_run_summary(r, &sum), "summary");
  out << prefix << seed << ',' << algorithm_of(r) << ',' << num(sum.mean_unserved_pct) << ','
      << num(sum.final_delay_sd_s) << ',' << num(sum.total_bits) << ',' << num(sum.energy_j)
      << ',' << (sum.ee_defined ? num(sum.ee_bits_per_j) : std::string("undefined")) << '\n';
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure(UAVNET_ERR_IO, "cannot write " + path.string());
  return out;
}

void save_grid(const uavnet_scenario* s, const fs::path& path) {
  uavnet_grid* raw = nullptr;
  check(uavnet_grid_generate(s, &raw), "grid");
  GridPtr g(raw);
  check(uavnet_grid_save(g.get(), path.string().c_str()), "grid");
}

struct Common {
  std::string config;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
};

int simulate(const Common& c, const std::string& algorithm, bool dump_assignments,
             bool grid) {
  auto s = load(c.config, c.seed);
  fs::create_directories(c.out);
  const fs::path dir(c.out);
  uavnet_run* raw = nullptr;
  check(uavnet_simulate(s.get(), algorithm.empty() ? nullptr : algorithm.c_str(), &raw),
        "simulate");
  RunPtr run(raw);
  const uavnet_run* one = run.get();
  check(uavnet_run_write_metrics(one, (dir / "metrics.csv").string().c_str(), 0), "metrics");
  check(uavnet_write_relocations(&one, 1, (dir / "relocations.csv").string().c_str()),
        "relocations");
  if (dump_assignments)
    check(uavnet_write_assignments(&one, 1, (dir / "assignments.csv").string().c_str()),
          "assignments");
  if (grid) save_grid(s.get(), dir / "grid.txt");

  uavnet_summary sum{};
  check(uavnet_run_summary(one, &sum), "summary");
  std::cout << algorithm_of(one) << ": mean unserved " << num(sum.mean_unserved_pct)
            << " %, final delay SD " << num(sum.final_delay_sd_s) << " s, energy efficiency "
            << (sum.ee_defined ? num(sum.ee_bits_per_j) : std::string("undefined"))
            << " bits/J\n";
  return 0;
}

int compare(const Common& c, const std::string& algorithms, int seeds, bool dump_assignments,
            bool grid) {
  if (seeds < 1) throw Failure(UAVNET_ERR_INVALID_ARGUMENT, "--seeds must be at least 1");
  auto base = load(c.config, c.seed);
  const std::uint64_t first = seed_of(base.get());
  fs::create_directories(c.out);
  const fs::path dir(c.out);
  auto summary = open_out(dir / "summary.csv");
  write_summary_header(summary, "");

  for (int i = 0; i < seeds; ++i) {
    const std::uint64_t seed = first + static_cast<std::uint64_t>(i);
    check(uavnet_scenario_set_seed(base.get(), seed), "seed");
    const auto runs = compare_runs(base.get(), algorithms);
    const auto v = views(runs);
    const std::string tag = "seed" + std::to_string(seed);
    for (const auto* r : v) {
      const auto path = dir / ("metrics_" + algorithm_of(r) + "_" + tag + ".csv");
      check(uavnet_run_write_metrics(r, path.string().c_str(), 0), "metrics");
      write_summary_row(summary, "", seed, r);
    }
    check(uavnet_write_relocations(v.data(), v.size(),
                                   (dir / ("relocations_" + tag + ".csv")).string().c_str()),
          "relocations");
    if (dump_assignments)
      check(uavnet_write_assignments(v.data(), v.size(),
                                     (dir / ("assignments_" + tag + ".csv")).string().c_str()),
            "assignments");
    if (grid) save_grid(base.get(), dir / ("grid_" + tag + ".txt"));
    std::cerr << "seed " << seed << " done\n";
  }
  return 0;
}

int sweep(const Common& c, const std::string& param, const std::string& values,
          const std::string& algorithms, int seeds) {
  if (seeds < 1) throw Failure(UAVNET_ERR_INVALID_ARGUMENT, "--seeds must be at least 1");
  auto base = load(c.config, c.seed);
  const std::uint64_t first = seed_of(base.get());
  fs::create_directories(c.out);
  auto out = open_out(fs::path(c.out) / "sweep.csv");
  write_summary_header(out, "param,value,");

  for (const auto& value : split(values, ',')) {
    uavnet_scenario* raw = nullptr;
    check(uavnet_scenario_clone(base.get(), &raw), "clone");
    ScenarioPtr s(raw);
    check(uavnet_scenario_set(s.get(), param.c_str(), value.c_str()), param);
    for (int i = 0; i < seeds; ++i) {
      const std::uint64_t seed = first + static_cast<std::uint64_t>(i);
      check(uavnet_scenario_set_seed(s.get(), seed), "seed");
      const auto runs = compare_runs(s.get(), algorithms);
      for (const auto& r : runs) write_summary_row(out, param + ',' + value + ',', seed, r.get());
    }
    std::cerr << param << '=' << value << " done\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV base station placement and user assignment simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(uavnet_version()));

  Common c;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "Scenario config (JSON); defaults when omitted")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--seed", seed, "Override the config seed");
  };

  auto* sim = app.add_subcommand("simulate", "Run one algorithm");
  add_common(sim);
  std::string algorithm;
  bool dump = false;
  bool grid = false;
  sim->add_option("--algorithm", algorithm, "proposed, bt or balanced (default: from config)");
  sim->add_flag("--dump-assignments", dump, "Write the per-slot user to UAV assignment");
  sim->add_flag("--save-grid", grid, "Write the city grid");

  auto* cmp = app.add_subcommand("compare", "Run several algorithms over consecutive seeds");
  add_common(cmp);
  std::string algorithms = "proposed,bt,balanced";
  int seeds = 1;
  cmp->add_option("--algorithms", algorithms, "Comma-separated algorithm list");
  cmp->add_option("--seeds", seeds, "Number of consecutive seeds starting at the config seed");
  cmp->add_flag("--dump-assignments", dump, "Write the per-slot user to UAV assignment");
  cmp->add_flag("--save-grid", grid, "Write the city grid per seed");

  auto* swp = app.add_subcommand("sweep", "Vary one config parameter");
  add_common(swp);
  std::string param;
  std::string values;
  swp->add_option("--param", param, "Dotted config key, e.g. users.count")->required();
  swp->add_option("--values", values, "Comma-separated values")->required();
  swp->add_option("--algorithms", algorithms, "Comma-separated algorithm list");
  swp->add_option("--seeds", seeds, "Number of consecutive seeds per value");

  CLI11_PARSE(app, argc, argv);
  c.seed = seed;

  try {
    if (*sim) return simulate(c, algorithm, dump, grid);
    if (*cmp) return compare(c, algorithms, seeds, dump, grid);
    if (*swp) return sweep(c, param, values, algorithms, seeds);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 10 + e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
