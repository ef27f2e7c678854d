#include <qzeno/config.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <limits>
#include <string>

namespace qzeno {

namespace {

using nlohmann::json;

struct ParseState {
  const json& root;
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& what) {
    errors.push_back(path + ": " + what);
  }
};

void check_keys(ParseState& st, const json& obj, const std::string& prefix,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) st.fail(prefix + it.key(), "unknown key");
  }
}

const json* get_object(ParseState& st, const json& parent, const char* key,
                       const std::string& path) {
  auto it = parent.find(key);
  if (it == parent.end()) return nullptr;
  if (!it->is_object()) {
    st.fail(path, "must be an object");
    return nullptr;
  }
  return &*it;
}

bool take_double(ParseState& st, const json& parent, const char* key,
                 const std::string& path, double& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (!it->is_number()) {
    st.fail(path, "must be a number");
    return false;
  }
  const double v = it->get<double>();
  if (!std::isfinite(v)) {
    st.fail(path, "must be finite");
    return false;
  }
  out = v;
  return true;
}

template <typename Int>
bool take_int(ParseState& st, const json& parent, const char* key,
              const std::string& path, long long lo, long long hi, Int& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (!it->is_number_integer() && !it->is_number_unsigned()) {
    st.fail(path, "must be an integer");
    return false;
  }
  const long long v = it->get<long long>();
  if (v < lo || v > hi) {
    st.fail(path, "must be in [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
    return false;
  }
  out = static_cast<Int>(v);
  return true;
}

bool take_seed(ParseState& st, const json& parent, const char* key,
               const std::string& path, std::uint64_t& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (it->is_number_unsigned()) {
    out = it->get<std::uint64_t>();
    return true;
  }
  if (it->is_number_integer() && it->get<long long>() >= 0) {
    out = static_cast<std::uint64_t>(it->get<long long>());
    return true;
  }
  st.fail(path, "must be a non-negative integer");
  return false;
}

bool take_int_list(ParseState& st, const json& parent, const char* key,
                   const std::string& path, long long lo, long long hi,
                   std::vector<int>& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (!it->is_array() || it->empty()) {
    st.fail(path, "must be a nonempty array of integers");
    return false;
  }
  std::vector<int> values;
  for (const json& el : *it) {
    if (!el.is_number_integer() && !el.is_number_unsigned()) {
      st.fail(path, "must contain only integers");
      return false;
    }
    const long long v = el.get<long long>();
    if (v < lo || v > hi) {
      st.fail(path, "entries must be in [" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
      return false;
    }
    values.push_back(static_cast<int>(v));
  }
  out = std::move(values);
  return true;
}

bool take_double_list(ParseState& st, const json& parent, const char* key,
                      const std::string& path, double lo, double hi,
                      std::vector<double>& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (!it->is_array() || it->empty()) {
    st.fail(path, "must be a nonempty array of numbers");
    return false;
  }
  std::vector<double> values;
  for (const json& el : *it) {
    if (!el.is_number()) {
      st.fail(path, "must contain only numbers");
      return false;
    }
    const double v = el.get<double>();
    if (!std::isfinite(v) || v <= lo || v > hi) {
      st.fail(path, "entries must be in (" + std::to_string(lo) + ", " +
                        std::to_string(hi) + "]");
      return false;
    }
    values.push_back(v);
  }
  out = std::move(values);
  return true;
}

bool take_breakpoints(ParseState& st, const json& parent, const char* key,
                      const std::string& path, PiecewiseLinear& out) {
  auto it = parent.find(key);
  if (it == parent.end()) return false;
  if (!it->is_array() || it->empty()) {
    st.fail(path, "must be a nonempty array of [t, value] pairs");
    return false;
  }
  std::vector<std::pair<double, double>> points;
  double prev_t = -std::numeric_limits<double>::infinity();
  for (const json& el : *it) {
    if (!el.is_array() || el.size() != 2 || !el[0].is_number() ||
        !el[1].is_number()) {
      st.fail(path, "each breakpoint must be a [t, value] number pair");
      return false;
    }
    const double t = el[0].get<double>();
    const double v = el[1].get<double>();
    if (!std::isfinite(t) || !std::isfinite(v)) {
      st.fail(path, "breakpoints must be finite");
      return false;
    }
    if (t <= prev_t) {
      st.fail(path, "breakpoint times must be strictly increasing");
      return false;
    }
    prev_t = t;
    points.emplace_back(t, v);
  }
  out.points = std::move(points);
  return true;
}

void parse_schedule(ParseState& st, const json& obj, ScheduleConfig& out) {
  check_keys(st, obj, "schedule.", {"t_start", "t_end", "n", "n_values"});
  take_double(st, obj, "t_start", "schedule.t_start", out.t_start);
  take_double(st, obj, "t_end", "schedule.t_end", out.t_end);
  if (out.t_end <= out.t_start)
    st.fail("schedule.t_end", "must exceed schedule.t_start");
  const bool has_n = obj.contains("n");
  const bool has_sweep = obj.contains("n_values");
  if (has_n && has_sweep) {
    st.fail("schedule", "give either n or n_values, not both");
    return;
  }
  if (has_n) {
    int n = 0;
    if (take_int(st, obj, "n", "schedule.n", 1, 1 << 20, n))
      out.n_values = {n};
  } else if (has_sweep) {
    take_int_list(st, obj, "n_values", "schedule.n_values", 1, 1 << 20,
                  out.n_values);
  }
}

}  // namespace

std::string scenario_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::zeno: return "zeno";
    case ScenarioKind::antizeno: return "antizeno";
    case ScenarioKind::steering: return "steering";
    case ScenarioKind::spin_series: return "spin-series";
    case ScenarioKind::swept_window: return "swept-window";
    case ScenarioKind::closure: return "closure";
  }
  return "zeno";
}

std::optional<ScenarioKind> scenario_from_name(const std::string& name) {
  if (name == "zeno") return ScenarioKind::zeno;
  if (name == "antizeno") return ScenarioKind::antizeno;
  if (name == "steering") return ScenarioKind::steering;
  if (name == "spin-series") return ScenarioKind::spin_series;
  if (name == "swept-window") return ScenarioKind::swept_window;
  if (name == "closure") return ScenarioKind::closure;
  return std::nullopt;
}

double PiecewiseLinear::operator()(double t) const {
  require(!points.empty(), "piecewise-linear curve has no breakpoints");
  if (t <= points.front().first) return points.front().second;
  if (t >= points.back().first) return points.back().second;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (t <= points[i].first) {
      const double t0 = points[i - 1].first;
      const double v0 = points[i - 1].second;
      const double w = (t - t0) / (points[i].first - t0);
      return v0 + w * (points[i].second - v0);
    }
  }
  return points.back().second;
}

ScenarioConfig default_config(ScenarioKind kind) {
  ScenarioConfig config;
  config.scenario = kind;
  return config;
}

ScenarioConfig parse_config(const std::string& json_text,
                            std::optional<ScenarioKind> forced) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw ValidationError("config root must be a JSON object");

  ParseState st{root, {}};

  std::optional<ScenarioKind> kind = forced;
  if (auto it = root.find("scenario"); it != root.end()) {
    if (!it->is_string()) {
      st.fail("scenario", "must be a string");
    } else {
      const auto named = scenario_from_name(it->get<std::string>());
      if (!named) {
        st.fail("scenario", "unknown scenario \"" + it->get<std::string>() +
                                "\"");
      } else if (forced && *named != *forced) {
        st.fail("scenario", "conflicts with the requested subcommand");
      } else {
        kind = named;
      }
    }
  }
  if (!kind && st.errors.empty())
    st.fail("scenario", "required when no subcommand names it");

  ScenarioConfig config = default_config(kind.value_or(ScenarioKind::zeno));

  const std::string block = kind ? scenario_name(*kind) : std::string();
  for (auto it = root.begin(); it != root.end(); ++it) {
    const std::string& key = it.key();
    if (key == "scenario" || key == "seed" || key == "schedule") continue;
    if (!block.empty() && key == block) continue;
    st.fail(key, "unknown key");
  }

  take_seed(st, root, "seed", "seed", config.seed);
  if (const json* sched = get_object(st, root, "schedule", "schedule"))
    parse_schedule(st, *sched, config.schedule);

  const json* body =
      block.empty() ? nullptr : get_object(st, root, block.c_str(), block);
  if (body && kind) {
    switch (*kind) {
      case ScenarioKind::zeno: {
        check_keys(st, *body, block + ".", {"dim", "hamiltonian_scale"});
        take_int(st, *body, "dim", block + ".dim", 2, 64, config.zeno.dim);
        double scale = config.zeno.hamiltonian_scale;
        if (take_double(st, *body, "hamiltonian_scale",
                        block + ".hamiltonian_scale", scale)) {
          if (scale <= 0.0)
            st.fail(block + ".hamiltonian_scale", "must be positive");
          else
            config.zeno.hamiltonian_scale = scale;
        }
        break;
      }
      case ScenarioKind::antizeno: {
        check_keys(st, *body, block + ".",
                   {"family", "dim", "rank", "omega", "step_count"});
        if (auto f = body->find("family"); f != body->end()) {
          if (!f->is_string()) {
            st.fail(block + ".family", "must be a string");
          } else {
            const std::string name = f->get<std::string>();
            if (name != "seeded" && name != "qubit-rotation")
              st.fail(block + ".family",
                      "must be \"seeded\" or \"qubit-rotation\"");
            else
              config.antizeno.family = name;
          }
        }
        take_int(st, *body, "dim", block + ".dim", 2, 64,
                 config.antizeno.dim);
        take_int(st, *body, "rank", block + ".rank", 1, 63,
                 config.antizeno.rank);
        if (config.antizeno.rank >= config.antizeno.dim)
          st.fail(block + ".rank", "must be smaller than dim");
        double omega = config.antizeno.omega;
        if (take_double(st, *body, "omega", block + ".omega", omega)) {
          if (omega == 0.0)
            st.fail(block + ".omega", "must be nonzero");
          else
            config.antizeno.omega = omega;
        }
        take_int(st, *body, "step_count", block + ".step_count", 16, 1 << 22,
                 config.antizeno.step_count);
        break;
      }
      case ScenarioKind::steering: {
        check_keys(st, *body, block + ".", {"dim", "k_values"});
        take_int(st, *body, "dim", block + ".dim", 2, 64,
                 config.steering.dim);
        take_int_list(st, *body, "k_values", block + ".k_values", 1, 100000,
                      config.steering.k_values);
        break;
      }
      case ScenarioKind::spin_series: {
        check_keys(st, *body, block + ".",
                   {"alpha", "omega", "epsilon_values", "max_order",
                    "quadrature_points"});
        take_double(st, *body, "alpha", block + ".alpha",
                    config.spin_series.alpha);
        take_double(st, *body, "omega", block + ".omega",
                    config.spin_series.omega);
        if (config.spin_series.omega + config.spin_series.alpha <= 0.0)
          st.fail(block, "omega + alpha must be positive");
        take_double_list(st, *body, "epsilon_values",
                         block + ".epsilon_values", 0.0, 50.0,
                         config.spin_series.epsilon_values);
        take_int(st, *body, "max_order", block + ".max_order", 1, 4,
                 config.spin_series.max_order);
        take_int(st, *body, "quadrature_points",
                 block + ".quadrature_points", 2, 1 << 20,
                 config.spin_series.quadrature_points);
        break;
      }
      case ScenarioKind::swept_window: {
        check_keys(st, *body, block + ".", {"dim", "left", "right"});
        take_int(st, *body, "dim", block + ".dim", 1, 64,
                 config.swept_window.dim);
        take_breakpoints(st, *body, "left", block + ".left",
                         config.swept_window.left);
        take_breakpoints(st, *body, "right", block + ".right",
                         config.swept_window.right);
        break;
      }
      case ScenarioKind::closure: {
        check_keys(st, *body, block + ".", {"dim", "n", "num_seeds"});
        take_int(st, *body, "dim", block + ".dim", 2, 6, config.closure.dim);
        take_int(st, *body, "n", block + ".n", 1, 12, config.closure.n);
        take_int(st, *body, "num_seeds", block + ".num_seeds", 1, 10000,
                 config.closure.num_seeds);
        break;
      }
    }
  }

  if (!st.errors.empty()) {
    std::string message = "config invalid:";
    for (const std::string& err : st.errors) message += "\n  - " + err;
    throw ValidationError(message);
  }
  return config;
}

std::string canonical_json(const ScenarioConfig& config) {
  json doc;  // std::map-backed: keys serialize sorted
  doc["scenario"] = scenario_name(config.scenario);
  doc["seed"] = config.seed;
  doc["schedule"] = {{"t_start", config.schedule.t_start},
                     {"t_end", config.schedule.t_end},
                     {"n_values", config.schedule.n_values}};
  switch (config.scenario) {
    case ScenarioKind::zeno:
      doc["zeno"] = {{"dim", config.zeno.dim},
                     {"hamiltonian_scale", config.zeno.hamiltonian_scale}};
      break;
    case ScenarioKind::antizeno:
      doc["antizeno"] = {{"family", config.antizeno.family},
                         {"dim", config.antizeno.dim},
                         {"rank", config.antizeno.rank},
                         {"omega", config.antizeno.omega},
                         {"step_count", config.antizeno.step_count}};
      break;
    case ScenarioKind::steering:
      doc["steering"] = {{"dim", config.steering.dim},
                         {"k_values", config.steering.k_values}};
      break;
    case ScenarioKind::spin_series:
      doc["spin-series"] = {
          {"alpha", config.spin_series.alpha},
          {"omega", config.spin_series.omega},
          {"epsilon_values", config.spin_series.epsilon_values},
          {"max_order", config.spin_series.max_order},
          {"quadrature_points", config.spin_series.quadrature_points}};
      break;
    case ScenarioKind::swept_window: {
      json left = json::array();
      for (const auto& [t, v] : config.swept_window.left.points)
        left.push_back({t, v});
      json right = json::array();
      for (const auto& [t, v] : config.swept_window.right.points)
        right.push_back({t, v});
      doc["swept-window"] = {{"dim", config.swept_window.dim},
                             {"left", std::move(left)},
                             {"right", std::move(right)}};
      break;
    }
    case ScenarioKind::closure:
      doc["closure"] = {{"dim", config.closure.dim},
                        {"n", config.closure.n},
                        {"num_seeds", config.closure.num_seeds}};
      break;
  }
  return doc.dump();
}

std::string config_hash(const ScenarioConfig& config) {
  const std::string canon = canonical_json(config);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace qzeno
