#include "uavnet/uavnet.h"

#include <cmath>
#include <fstream>
#include <memory>
#include <new>
#include <string>

#include "uavnet/environment.hpp"
#include "uavnet/errors.hpp"
#include "uavnet/matching.hpp"
#include "uavnet/scenario.hpp"
#include "uavnet/simulation.hpp"

struct uavnet_scenario {
  uavnet::Scenario value;
};

struct uavnet_run {
  uavnet::RunResult value;
};

struct uavnet_grid {
  uavnet::BuildingGrid value;
};

namespace {

thread_local std::string last_error;

uavnet_status fail(uavnet_status code, const char* what) {
  last_error = what;
  return code;
}

// Maps exceptions from the C++ core onto status codes.
template <class F>
uavnet_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return UAVNET_OK;
  } catch (const uavnet::ConfigError& e) {
    return fail(UAVNET_ERR_CONFIG, e.what());
  } catch (const uavnet::IoError& e) {
    return fail(UAVNET_ERR_IO, e.what());
  } catch (const uavnet::InfeasibleError& e) {
    return fail(UAVNET_ERR_INFEASIBLE, e.what());
  } catch (const uavnet::InvalidArgument& e) {
    return fail(UAVNET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UAVNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UAVNET_ERR_INTERNAL, e.what());
  }
}

template <class T>
T& deref(T* p) {
  if (!p) throw uavnet::InvalidArgument("null handle or pointer argument");
  return *p;
}

const char* cstr(const char* p) {
  if (!p) throw uavnet::InvalidArgument("null string argument");
  return p;
}

void fill(uavnet_metrics& out, const uavnet::MetricsRecord& m) {
  out.slot = m.slot;
  out.unserved_pct = m.unserved_pct;
  out.delay_sd_s = m.delay_sd;
  out.total_bits = m.total_bits;
  out.energy_j = m.movement_energy;
  out.ee_defined = m.energy_efficiency.has_value();
  out.ee_bits_per_j = m.energy_efficiency.value_or(0.0);
}

std::ofstream open_out(const char* path, bool append) {
  std::ofstream out(cstr(path), append ? std::ios::binary | std::ios::app : std::ios::binary);
  if (!out) throw uavnet::IoError(std::string("cannot open ") + path + " for writing");
  return out;
}

std::vector<uavnet::RunResult> collect(const uavnet_run* const* runs, size_t count) {
  std::vector<uavnet::RunResult> out;
  for (size_t i = 0; i < count; ++i) out.push_back(deref(runs[i]).value);
  return out;
}

}  // namespace

extern "C" {

const char* uavnet_last_error(void) { return last_error.c_str(); }

const char* uavnet_version(void) { return "1.0.0"; }

uavnet_status uavnet_scenario_create(uavnet_scenario** out) {
  return guarded([&] { deref(out) = new uavnet_scenario{}; });
}

uavnet_status uavnet_scenario_load(const char* path, uavnet_scenario** out) {
  return guarded([&] { deref(out) = new uavnet_scenario{uavnet::load_scenario(cstr(path))}; });
}

uavnet_status uavnet_scenario_parse(const char* json_text, uavnet_scenario** out) {
  return guarded(
      [&] { deref(out) = new uavnet_scenario{uavnet::scenario_from_string(cstr(json_text))}; });
}

uavnet_status uavnet_scenario_clone(const uavnet_scenario* s, uavnet_scenario** out) {
  return guarded([&] { deref(out) = new uavnet_scenario{deref(s).value}; });
}

void uavnet_scenario_destroy(uavnet_scenario* s) { delete s; }

uavnet_status uavnet_scenario_set(uavnet_scenario* s, const char* key, const char* value) {
  return guarded([&] { uavnet::set_parameter(deref(s).value, cstr(key), cstr(value)); });
}

uavnet_status uavnet_scenario_set_seed(uavnet_scenario* s, uint64_t seed) {
  return guarded([&] { deref(s).value.seed = seed; });
}

uavnet_status uavnet_scenario_get_seed(const uavnet_scenario* s, uint64_t* seed) {
  return guarded([&] { deref(seed) = deref(s).value.seed; });
}

uavnet_status uavnet_scenario_save(const uavnet_scenario* s, const char* path) {
  return guarded([&] { uavnet::save_scenario(cstr(path), deref(s).value); });
}

uavnet_status uavnet_simulate(const uavnet_scenario* s, const char* algorithm, uavnet_run** out) {
  return guarded([&] {
    auto& scenario = deref(s).value;
    deref(out) = nullptr;
    const auto algo = algorithm ? uavnet::parse_algorithm(algorithm) : scenario.algorithm;
    const auto world = uavnet::make_world(scenario);
    *out = new uavnet_run{uavnet::run(scenario, algo, world)};
  });
}

uavnet_status uavnet_compare(const uavnet_scenario* s, const char* algorithms, uavnet_run** runs,
                             size_t capacity, size_t* count) {
  return guarded([&] {
    const auto algos = uavnet::parse_algorithm_list(cstr(algorithms));
    deref(count) = 0;
    if (algos.size() > capacity)
      throw uavnet::InvalidArgument("output array too small for the algorithm list");
    if (!runs) throw uavnet::InvalidArgument("null output array");
    auto results = uavnet::compare(deref(s).value, algos);
    for (auto& r : results) runs[(*count)++] = new uavnet_run{std::move(r)};
  });
}

void uavnet_run_destroy(uavnet_run* r) { delete r; }

uavnet_status uavnet_run_algorithm(const uavnet_run* r, const char** name) {
  return guarded([&] { deref(name) = uavnet::algorithm_name(deref(r).value.algorithm).data(); });
}

uavnet_status uavnet_run_slot_count(const uavnet_run* r, size_t* count) {
  return guarded([&] { deref(count) = deref(r).value.metrics.size(); });
}

uavnet_status uavnet_run_metrics(const uavnet_run* r, size_t index, uavnet_metrics* out) {
  return guarded([&] {
    const auto& metrics = deref(r).value.metrics;
    if (index >= metrics.size()) throw uavnet::InvalidArgument("slot index out of range");
    fill(deref(out), metrics[index]);
  });
}

uavnet_status uavnet_run_summary(const uavnet_run* r, uavnet_summary* out) {
  return guarded([&] {
    const auto sum = uavnet::summarize(deref(r).value);
    auto& o = deref(out);
    o.mean_unserved_pct = sum.mean_unserved_pct;
    o.final_delay_sd_s = sum.final_delay_sd;
    o.total_bits = sum.total_bits;
    o.energy_j = sum.total_energy;
    o.ee_defined = sum.energy_efficiency.has_value();
    o.ee_bits_per_j = sum.energy_efficiency.value_or(0.0);
  });
}

uavnet_status uavnet_run_write_metrics(const uavnet_run* r, const char* path, int append) {
  return guarded([&] {
    const auto& run = deref(r).value;
    auto out = open_out(path, append != 0);
    if (!append) uavnet::write_metrics_header(out);
    uavnet::write_metrics_rows(out, run);
    if (!out) throw uavnet::IoError(std::string("failed writing ") + path);
  });
}

uavnet_status uavnet_write_relocations(const uavnet_run* const* runs, size_t count,
                                       const char* path) {
  return guarded([&] {
    const auto all = collect(runs, count);
    auto out = open_out(path, false);
    uavnet::write_relocations(out, all);
  });
}

uavnet_status uavnet_write_assignments(const uavnet_run* const* runs, size_t count,
                                       const char* path) {
  return guarded([&] {
    const auto all = collect(runs, count);
    auto out = open_out(path, false);
    uavnet::write_assignments(out, all);
  });
}

uavnet_status uavnet_grid_generate(const uavnet_scenario* s, uavnet_grid** out) {
  return guarded([&] {
    const auto& scenario = deref(s).value;
    auto rng = uavnet::make_rng(scenario.seed, uavnet::Stream::kCity);
    deref(out) = new uavnet_grid{uavnet::generate_city(scenario.region, scenario.city, rng)};
  });
}

uavnet_status uavnet_grid_load(const char* path, uavnet_grid** out) {
  return guarded([&] { deref(out) = new uavnet_grid{uavnet::load_grid(cstr(path))}; });
}

uavnet_status uavnet_grid_save(const uavnet_grid* g, const char* path) {
  return guarded([&] { uavnet::save_grid(cstr(path), deref(g).value); });
}

void uavnet_grid_destroy(uavnet_grid* g) { delete g; }

uavnet_status uavnet_grid_dims(const uavnet_grid* g, size_t* cols, size_t* rows,
                               double* cell_size) {
  return guarded([&] {
    const auto& grid = deref(g).value;
    deref(cols) = grid.cols();
    deref(rows) = grid.rows();
    deref(cell_size) = grid.cell_size();
  });
}

uavnet_status uavnet_grid_los(const uavnet_grid* g, const double uav[3], const double user[3],
                              int* los) {
  return guarded([&] {
    if (!uav || !user) throw uavnet::InvalidArgument("null coordinate array");
    const double* a = uav;
    const double* b = user;
    deref(los) = uavnet::los_link({a[0], a[1], a[2]}, {b[0], b[1], b[2]}, deref(g).value) ? 1 : 0;
  });
}

uavnet_status uavnet_min_cost_matching(const double* cost, size_t n, size_t* col_of_row,
                                       double* total) {
  return guarded([&] {
    if (n > 0) {
      deref(cost);
      deref(col_of_row);
    }
    uavnet::CostMatrix c(n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const double v = cost[i * n + j];
        if (std::isnan(v) || std::isinf(v))
          c.set_unreachable(i, j);
        else
          c.set(i, j, v);
      }
    }
    const auto m = uavnet::hungarian(c);
    if (!m) throw uavnet::InfeasibleError("no perfect matching over reachable entries");
    for (size_t i = 0; i < n; ++i) col_of_row[i] = m->col_of_row[i];
    deref(total) = m->total;
  });
}

}  // extern "C"
