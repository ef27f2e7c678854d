#include <CLI11.hpp>

#include <qzeno/runner.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

struct CliOptions {
  std::string config_path;
  std::string csv_path;
  std::string json_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config_path,
                  "JSON config file (strict schema)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", opts.csv_path, "CSV report path");
  cmd->add_option("--json", opts.json_path, "JSON report path");
  cmd->add_option("--seed", opts.seed, "override the config seed")
      ->each([&opts](const std::string&) { opts.seed_given = true; });
}

int run(qzeno::ScenarioKind kind, const CliOptions& opts) {
  qzeno::ScenarioConfig config;
  if (opts.config_path.empty()) {
    config = qzeno::default_config(kind);
  } else {
    std::ifstream in(opts.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "cannot open config: " << opts.config_path << "\n";
      return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    config = qzeno::parse_config(buffer.str(), kind);
  }
  if (opts.seed_given) config.seed = opts.seed;

  const qzeno::RunReport report = qzeno::run_scenario(config);
  if (!opts.csv_path.empty()) qzeno::emit_csv(report, opts.csv_path);
  if (!opts.json_path.empty()) qzeno::emit_json(report, opts.json_path);

  for (const qzeno::ReportRow& row : report.rows) {
    std::printf("[%s] %-24s %-12s % .10e", row.pass ? " ok " : "FAIL",
                row.label.c_str(), row.param.c_str(), row.value);
    if (row.reference) std::printf("  ref % .10e", *row.reference);
    if (row.tolerance) std::printf("  tol %.3e", *row.tolerance);
    std::printf("\n");
  }
  std::printf("%s: %s (%zu rows, seed %llu, hash %s)\n",
              report.scenario.c_str(),
              report.all_passed() ? "all rows pass" : "FAILED rows present",
              report.rows.size(),
              static_cast<unsigned long long>(report.seed),
              report.config_hash.c_str());
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-dependent continuous measurement chains on finite dimensions"};
  app.require_subcommand(1);

  CliOptions opts;
  struct SubEntry {
    const char* name;
    const char* help;
    qzeno::ScenarioKind kind;
  };
  const SubEntry entries[] = {
      {"zeno", "static watched state, discrete chains vs frozen limit",
       qzeno::ScenarioKind::zeno},
      {"antizeno", "steered projector with certain continuum probability",
       qzeno::ScenarioKind::antizeno},
      {"steer", "von Neumann steering between orthogonal states",
       qzeno::ScenarioKind::steering},
      {"spin-series", "spin-1/2 complement-branch series vs closed forms",
       qzeno::ScenarioKind::spin_series},
      {"sweep-window", "commuting spectral window chains vs exact limit",
       qzeno::ScenarioKind::swept_window},
      {"closure", "sum of history probabilities over all outcomes",
       qzeno::ScenarioKind::closure},
  };

  for (const SubEntry& entry : entries) {
    CLI::App* cmd = app.add_subcommand(entry.name, entry.help);
    add_common_options(cmd, opts);
    const qzeno::ScenarioKind kind = entry.kind;
    cmd->callback([kind, &opts]() {
      const int rc = run(kind, opts);
      if (rc != 0) throw CLI::RuntimeError(rc);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const qzeno::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
