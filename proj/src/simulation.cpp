#include "uavnet/simulation.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <string>

#include "uavnet/assignment.hpp"
#include "uavnet/errors.hpp"
#include "uavnet/matching.hpp"

namespace uavnet {
namespace {

std::string num(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

BuildingGrid city_for(const Scenario& s) {
  if (!s.grid_file.empty()) {
    auto grid = load_grid(s.grid_file);
    if (grid.region().width != s.region.width || grid.region().height != s.region.height)
      throw ConfigError("grid file " + s.grid_file + " does not match the scenario region");
    return grid;
  }
  auto rng = make_rng(s.seed, Stream::kCity);
  return generate_city(s.region, s.city, rng);
}

// Rejection-samples an open-ground position; users start outdoors.
Point3 outdoor_point(const BuildingGrid& grid, double z, Rng& rng) {
  Point3 p;
  for (int attempt = 0; attempt < 1000; ++attempt) {
    p = {uniform(rng, 0.0, grid.region().width), uniform(rng, 0.0, grid.region().height), z};
    if (grid.height(grid.col_of(p.x), grid.row_of(p.y)) < z) break;
  }
  return p;
}

void load_slot(std::vector<UserState>& users, const TrajectoryTape& tape, int slot) {
  for (std::size_t k = 0; k < users.size(); ++k) {
    users[k].position = tape.positions[slot][k];
    users[k].speed = tape.speeds[slot][k];
  }
}

// Random starting centroids for one macro slot, each over a cell whose roof
// is below that UAV's altitude.
std::vector<UavState> random_start(const std::vector<UavState>& uavs, const BuildingGrid& grid,
                                   Rng& rng) {
  std::vector<UavState> out = uavs;
  for (auto& u : out) {
    Point3 p = u.position;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      p.x = uniform(rng, 0.0, grid.region().width);
      p.y = uniform(rng, 0.0, grid.region().height);
      if (grid.height(grid.col_of(p.x), grid.row_of(p.y)) < p.z) break;
    }
    u.position = p;
  }
  return out;
}

std::vector<Point3> positions_of(const std::vector<UavState>& uavs) {
  std::vector<Point3> out;
  for (const auto& u : uavs) out.push_back(u.position);
  return out;
}

}  // namespace

World make_world(const Scenario& s) {
  validate(s);
  World w{city_for(s), {}, {}, {}};

  auto user_rng = make_rng(s.seed, Stream::kUsers);
  w.users.resize(static_cast<std::size_t>(s.num_users));
  for (std::size_t k = 0; k < w.users.size(); ++k) {
    auto& u = w.users[k];
    u.id = k;
    u.position = outdoor_point(w.grid, s.user_altitude, user_rng);
    u.max_speed = s.user_max_speed;
    u.speed = uniform(user_rng, 0.0, s.user_max_speed);
    u.deadline = uniform(user_rng, s.deadline_min, s.deadline_max);
  }

  auto uav_rng = make_rng(s.seed, Stream::kUavs);
  const double speed = s.optimize_cruise_speed ? min_energy_speed(s.energy) : s.cruise_speed;
  w.uavs.resize(static_cast<std::size_t>(s.num_uavs));
  for (std::size_t m = 0; m < w.uavs.size(); ++m) {
    auto& u = w.uavs[m];
    u.id = m;
    u.capacity = s.uav_capacity;
    u.cruise_speed = speed;
    const double z = uniform(uav_rng, s.uav_altitude_min, s.uav_altitude_max);
    u.position = {uniform(uav_rng, 0.0, s.region.width), uniform(uav_rng, 0.0, s.region.height), z};
  }

  auto traj_rng = make_rng(s.seed, Stream::kTrajectory);
  std::vector<UserState> moving = w.users;
  const int slots = s.total_slots();
  for (int t = 0; t <= slots; ++t) {
    std::vector<Point3> pos;
    std::vector<double> spd;
    for (const auto& u : moving) {
      pos.push_back(u.position);
      spd.push_back(u.speed);
    }
    w.tape.positions.push_back(std::move(pos));
    w.tape.speeds.push_back(std::move(spd));
    if (t < slots) advance_users(moving, s.region, s.slot_duration, s.search, traj_rng);
  }
  return w;
}

MetricsRecord compute_metrics(int slot, std::span<const UserState> users,
                              const AssignmentMatrix& assignment, double cumulative_bits,
                              double cumulative_energy) {
  MetricsRecord r;
  r.slot = slot;
  const std::size_t n = users.size();
  std::size_t unserved = 0;
  for (std::size_t k = 0; k < n; ++k) unserved += assignment.links(k) == 0;
  r.unserved_pct = n ? 100.0 * static_cast<double>(unserved) / static_cast<double>(n) : 0.0;

  double mean = 0.0;
  for (const auto& u : users) mean += u.total_delay;
  mean = n ? mean / static_cast<double>(n) : 0.0;
  double var = 0.0;
  for (const auto& u : users) var += (u.total_delay - mean) * (u.total_delay - mean);
  r.delay_sd = n ? std::sqrt(var / static_cast<double>(n)) : 0.0;

  r.total_bits = cumulative_bits;
  r.movement_energy = cumulative_energy;
  if (cumulative_energy > 0.0) r.energy_efficiency = cumulative_bits / cumulative_energy;
  return r;
}

RunResult run(const Scenario& s, Algorithm algorithm, const World& world, const RunHooks& hooks) {
  RunResult result;
  result.algorithm = algorithm;
  result.seed = s.seed;

  std::vector<UserState> users = world.users;
  std::vector<UavState> uavs = world.uavs;
  std::vector<int> caps;
  std::vector<double> speeds;
  for (const auto& u : uavs) {
    caps.push_back(u.capacity);
    speeds.push_back(u.cruise_speed);
  }
  const SlotModel model{LinkBudget(s.channel), s.slot_duration, s.handover, s.search, s.region};
  auto fading_rng = make_rng(s.seed, Stream::kFading);
  auto init_rng = make_rng(s.seed, Stream::kClusterInit);

  double bits = 0.0;
  double energy = 0.0;
  for (int macro = 0; macro < s.macro_slots; ++macro) {
    const int first = macro * s.slots_per_macro;
    load_slot(users, world.tape, first);

    // Relocate at the macro-slot boundary.
    const auto old_pos = positions_of(uavs);
    std::vector<Point3> targets;
    std::vector<std::size_t> target_of(uavs.size());
    std::vector<double> joules(uavs.size(), 0.0);
    const auto start = random_start(uavs, world.grid, init_rng);
    if (algorithm == Algorithm::kProposed) {
      const auto state = cluster(users, start, world.grid, model, s.clustering);
      if (hooks.on_cluster) hooks.on_cluster(macro, state);
      targets = state.centroids;
      try {
        const auto plan = plan_relocation(old_pos, targets, s.relocation_deadline, speeds, s.energy);
        target_of = plan.target_of_uav;
        joules = plan.energy_of_uav;
      } catch (const InfeasibleError& ex) {
        throw InfeasibleError("macro slot " + std::to_string(macro) + ": " + ex.what());
      }
    } else {
      const auto km = algorithm == Algorithm::kBalanced
                          ? baseline_balanced_kmeans(users, start, s.clustering)
                          : best_metric_kmeans(users, start, world.grid, model, s.bt_metric,
                                               s.clustering);
      targets = km.centroids;
      for (std::size_t m = 0; m < uavs.size(); ++m) {
        target_of[m] = m;
        joules[m] = relocation_cost(distance(old_pos[m], targets[m]), speeds[m], s.energy);
      }
    }
    for (std::size_t m = 0; m < uavs.size(); ++m) {
      RelocationRecord rec{macro, m, old_pos[m], targets[target_of[m]], joules[m]};
      uavs[m].position = rec.to;
      energy += joules[m];
      if (hooks.on_relocation) hooks.on_relocation(macro, rec);
      result.relocations.push_back(rec);
    }
    const auto uav_pos = positions_of(uavs);

    for (int i = 0; i < s.slots_per_macro; ++i) {
      const int slot = first + i;
      load_slot(users, world.tape, slot);
      const auto sets = search_point_sets(users, model);
      const auto rates = compute_rates(users, sets, uav_pos, world.grid, model);

      AssignmentMatrix assignment;
      switch (algorithm) {
        case Algorithm::kProposed:
          assignment = greedy_assign(rates, users, caps);
          break;
        case Algorithm::kBestThroughput:
          assignment = baseline_best_metric(rates, users, uav_pos, caps, s.channel, s.bt_metric,
                                            CapacityMode::kTruncate);
          break;
        case Algorithm::kBalanced:
          assignment = balanced_assign(users, uav_pos, caps);
          drop_dead_links(assignment, rates);
          break;
      }
      if (hooks.on_assignment) hooks.on_assignment(slot, assignment);

      std::vector<int> serving(users.size(), -1);
      for (std::size_t k = 0; k < users.size(); ++k) {
        const auto m = assignment.serving(k);
        if (!m) continue;
        serving[k] = static_cast<int>(*m);
        if (s.sample_fading) {
          // Realized data at the user's end-of-slot position.
          const Point3& end = world.tape.positions[slot + 1][k];
          if (los_link(uav_pos[*m], end, world.grid)) {
            const double g2 = sample_gain_sq(true, s.channel.rician_k, fading_rng);
            const double rate = model.link.throughput_bps(distance(uav_pos[*m], end), g2);
            bits += expected_data(*m, rate, users[k], s.slot_duration, s.handover);
          }
        } else {
          bits += rates.at(k, *m);
        }
      }

      bump_priorities(users, assignment, s.slot_duration, s.reset_wait_on_service);
      for (std::size_t k = 0; k < users.size(); ++k) {
        users[k].prev_uav = serving[k] >= 0 ? std::optional<std::size_t>(serving[k]) : std::nullopt;
      }
      result.metrics.push_back(compute_metrics(slot + 1, users, assignment, bits, energy));
      result.serving.push_back(std::move(serving));
    }
  }
  return result;
}

RunResult run(const Scenario& s) {
  const World world = make_world(s);
  return run(s, s.algorithm, world);
}

std::vector<RunResult> compare(const Scenario& s, std::span<const Algorithm> algorithms) {
  const World world = make_world(s);
  std::vector<RunResult> out;
  for (Algorithm a : algorithms) out.push_back(run(s, a, world));
  return out;
}

RunSummary summarize(const RunResult& r) {
  RunSummary sum;
  if (r.metrics.empty()) return sum;
  for (const auto& m : r.metrics) sum.mean_unserved_pct += m.unserved_pct;
  sum.mean_unserved_pct /= static_cast<double>(r.metrics.size());
  const auto& last = r.metrics.back();
  sum.final_delay_sd = last.delay_sd;
  sum.total_bits = last.total_bits;
  sum.total_energy = last.movement_energy;
  sum.energy_efficiency = last.energy_efficiency;
  return sum;
}

void write_metrics_header(std::ostream& out) {
  out << "slot,algorithm,unserved_pct,delay_sd_s,total_bits,energy_j,ee_bits_per_j\n";
}

void write_metrics_rows(std::ostream& out, const RunResult& r) {
  const auto name = algorithm_name(r.algorithm);
  for (const auto& m : r.metrics) {
    out << m.slot << ',' << name << ',' << num(m.unserved_pct) << ',' << num(m.delay_sd) << ','
        << num(m.total_bits) << ',' << num(m.movement_energy) << ','
        << (m.energy_efficiency ? num(*m.energy_efficiency) : std::string("undefined")) << '\n';
  }
}

void write_relocations(std::ostream& out, std::span<const RunResult> runs) {
  out << "macro_slot,algorithm,uav,from_x,from_y,from_z,to_x,to_y,to_z,energy_j\n";
  for (const auto& r : runs) {
    for (const auto& rec : r.relocations) {
      out << rec.macro_slot << ',' << algorithm_name(r.algorithm) << ',' << rec.uav << ','
          << num(rec.from.x) << ',' << num(rec.from.y) << ',' << num(rec.from.z) << ','
          << num(rec.to.x) << ',' << num(rec.to.y) << ',' << num(rec.to.z) << ','
          << num(rec.joules) << '\n';
    }
  }
}

void write_assignments(std::ostream& out, std::span<const RunResult> runs) {
  out << "slot,algorithm,user,uav\n";
  for (const auto& r : runs) {
    for (std::size_t t = 0; t < r.serving.size(); ++t)
      for (std::size_t k = 0; k < r.serving[t].size(); ++k)
        out << t + 1 << ',' << algorithm_name(r.algorithm) << ',' << k << ',' << r.serving[t][k]
            << '\n';
  }
}

}  // namespace uavnet
