#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/assignment_matrix.hpp"
#include "uavnet/clustering.hpp"
#include "uavnet/environment.hpp"
#include "uavnet/mobility.hpp"
#include "uavnet/scenario.hpp"

namespace uavnet {

/// User positions and speeds at the start of every slot, plus the final
/// end-of-run state. Shared by every algorithm compared on one seed.
struct TrajectoryTape {
  std::vector<std::vector<Point3>> positions;
  std::vector<std::vector<double>> speeds;
};

/// Immutable inputs of one seeded replica.
struct World {
  BuildingGrid grid;
  std::vector<UserState> users;
  std::vector<UavState> uavs;
  TrajectoryTape tape;
};

World make_world(const Scenario& s);

struct MetricsRecord {
  int slot = 0;  // 1-based, counted across macro slots
  double unserved_pct = 0.0;
  double delay_sd = 0.0;          // population SD of cumulative unserved time
  double total_bits = 0.0;        // cumulative
  double movement_energy = 0.0;   // cumulative joules
  std::optional<double> energy_efficiency;  // empty while no energy was spent
};

struct RelocationRecord {
  int macro_slot = 0;
  std::size_t uav = 0;
  Point3 from;
  Point3 to;
  double joules = 0.0;
};

struct RunResult {
  Algorithm algorithm = Algorithm::kProposed;
  std::uint64_t seed = 0;
  std::vector<MetricsRecord> metrics;
  std::vector<RelocationRecord> relocations;
  std::vector<std::vector<int>> serving;  // per slot, per user; -1 = unserved
};

struct RunHooks {
  std::function<void(int macro_slot, const ClusterState&)> on_cluster;
  std::function<void(int slot, const AssignmentMatrix&)> on_assignment;
  std::function<void(int macro_slot, const RelocationRecord&)> on_relocation;
};

MetricsRecord compute_metrics(int slot, std::span<const UserState> users,
                              const AssignmentMatrix& assignment, double cumulative_bits,
                              double cumulative_energy);

/// One deterministic replica. Throws InfeasibleError naming the macro slot
/// when the UAVs cannot be relocated within the deadline.
RunResult run(const Scenario& s, Algorithm algorithm, const World& world,
              const RunHooks& hooks = {});
RunResult run(const Scenario& s);

/// Runs every algorithm on the same world (city, initial state, trajectories).
std::vector<RunResult> compare(const Scenario& s, std::span<const Algorithm> algorithms);

struct RunSummary {
  double mean_unserved_pct = 0.0;
  double final_delay_sd = 0.0;
  double total_bits = 0.0;
  double total_energy = 0.0;
  std::optional<double> energy_efficiency;
};

RunSummary summarize(const RunResult& r);

// CSV writers. Numbers use the shortest round-trip representation.
void write_metrics_header(std::ostream& out);
void write_metrics_rows(std::ostream& out, const RunResult& r);
void write_relocations(std::ostream& out, std::span<const RunResult> runs);
void write_assignments(std::ostream& out, std::span<const RunResult> runs);

}  // namespace uavnet
