#pragma once

#include <qzeno/types.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qzeno {

enum class ScenarioKind {
  zeno,
  antizeno,
  steering,
  spin_series,
  swept_window,
  closure,
};

std::string scenario_name(ScenarioKind kind);
std::optional<ScenarioKind> scenario_from_name(const std::string& name);

// Sorted breakpoints (t, value); constant outside the range, linear inside.
struct PiecewiseLinear {
  std::vector<std::pair<double, double>> points;
  double operator()(double t) const;
};

struct ScheduleConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  std::vector<int> n_values = {16, 64, 256};  // "n" in the JSON collapses to one entry
};

struct ZenoConfig {
  Eigen::Index dim = 4;
  double hamiltonian_scale = 1.0;
};

struct AntizenoConfig {
  std::string family = "seeded";  // "seeded" | "qubit-rotation"
  Eigen::Index dim = 4;
  Eigen::Index rank = 2;
  double omega = 1.0;
  int step_count = 1000;
};

struct SteeringConfig {
  Eigen::Index dim = 2;
  std::vector<int> k_values = {2, 10, 100};
};

struct SpinSeriesConfig {
  double alpha = 0.3;
  double omega = 0.7;
  std::vector<double> epsilon_values = {0.4, 0.2, 0.1, 0.05};
  int max_order = 4;
  int quadrature_points = 2048;
};

struct SweptWindowConfig {
  Eigen::Index dim = 8;
  PiecewiseLinear left{{{0.0, 2.0}}};
  PiecewiseLinear right{{{0.0, 4.0}}};
};

struct ClosureConfig {
  Eigen::Index dim = 3;
  int n = 8;
  int num_seeds = 10;
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::zeno;
  std::uint64_t seed = 1;
  ScheduleConfig schedule;
  ZenoConfig zeno;
  AntizenoConfig antizeno;
  SteeringConfig steering;
  SpinSeriesConfig spin_series;
  SweptWindowConfig swept_window;
  ClosureConfig closure;
};

ScenarioConfig default_config(ScenarioKind kind);

// Strict parse: unknown keys (at any level) are rejected, types and ranges
// are checked, and every violation is reported in one ValidationError.
// `forced` pins the scenario (CLI subcommand); a conflicting "scenario" key
// is a violation.
ScenarioConfig parse_config(const std::string& json_text,
                            std::optional<ScenarioKind> forced = std::nullopt);

// Canonical serialization (sorted keys, defaults materialized, only the
// active scenario block) and its FNV-1a 64-bit hash in hex.
std::string canonical_json(const ScenarioConfig& config);
std::string config_hash(const ScenarioConfig& config);

}  // namespace qzeno
