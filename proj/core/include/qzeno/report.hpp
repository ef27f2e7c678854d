#pragma once

#include <qzeno/types.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qzeno {

// How a row's value is judged against its reference.
enum class RowCheck { none, abs_error, lower_bound, upper_bound };

struct ReportRow {
  std::string label;                  // quantity name, e.g. "one_minus_p"
  std::string param;                  // run point, e.g. "n=16" (may be empty)
  double value = 0.0;
  std::optional<double> reference;    // target for the check, if any
  std::optional<double> tolerance;    // acceptance slack, if any
  RowCheck check = RowCheck::none;
  bool pass = true;
};

// Informational row; always passes.
ReportRow info_row(std::string label, std::string param, double value);
// |value - reference| <= tolerance.
ReportRow abs_row(std::string label, std::string param, double value,
                  double reference, double tolerance);
// value >= bound (minus optional slack).
ReportRow lower_row(std::string label, std::string param, double value,
                    double bound, double slack = 0.0);
// value <= bound (plus optional slack).
ReportRow upper_row(std::string label, std::string param, double value,
                    double bound, double slack = 0.0);

struct RunReport {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string config_hash;      // canonical-config FNV-1a, hex
  double wall_time_ms = 0.0;    // JSON-only metadata; never written to CSV
  std::vector<ReportRow> rows;

  bool all_passed() const;
};

std::string to_csv(const RunReport& report);
std::string to_json(const RunReport& report);

// Atomic file emission: write to <path>.tmp in full, then rename onto path.
void emit_csv(const RunReport& report, const std::string& path);
void emit_json(const RunReport& report, const std::string& path);

}  // namespace qzeno
