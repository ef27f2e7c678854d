#include <qzeno/report.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <utility>

namespace qzeno {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// RFC 4180: quote fields containing comma, quote, or newline; double quotes.
std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

const char* check_name(RowCheck check) {
  switch (check) {
    case RowCheck::none: return "none";
    case RowCheck::abs_error: return "abs_error";
    case RowCheck::lower_bound: return "lower_bound";
    case RowCheck::upper_bound: return "upper_bound";
  }
  return "none";
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(out.good(), "cannot open output file: " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    require(out.good(), "failed writing output file: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

ReportRow info_row(std::string label, std::string param, double value) {
  return ReportRow{std::move(label), std::move(param), value, std::nullopt,
                   std::nullopt, RowCheck::none, true};
}

ReportRow abs_row(std::string label, std::string param, double value,
                  double reference, double tolerance) {
  const bool ok = std::isfinite(value) &&
                  std::abs(value - reference) <= tolerance;
  return ReportRow{std::move(label), std::move(param), value, reference,
                   tolerance, RowCheck::abs_error, ok};
}

ReportRow lower_row(std::string label, std::string param, double value,
                    double bound, double slack) {
  const bool ok = std::isfinite(value) && value >= bound - slack;
  return ReportRow{std::move(label), std::move(param), value, bound,
                   slack > 0.0 ? std::optional<double>(slack) : std::nullopt,
                   RowCheck::lower_bound, ok};
}

ReportRow upper_row(std::string label, std::string param, double value,
                    double bound, double slack) {
  const bool ok = std::isfinite(value) && value <= bound + slack;
  return ReportRow{std::move(label), std::move(param), value, bound,
                   slack > 0.0 ? std::optional<double>(slack) : std::nullopt,
                   RowCheck::upper_bound, ok};
}

bool RunReport::all_passed() const {
  for (const ReportRow& row : rows)
    if (!row.pass) return false;
  return true;
}

std::string to_csv(const RunReport& report) {
  std::string out = "label,param,value,reference,abs_error,cmp,tol,pass\n";
  for (const ReportRow& row : report.rows) {
    out += csv_field(row.label);
    out += ',';
    out += csv_field(row.param);
    out += ',';
    out += format_double(row.value);
    out += ',';
    if (row.reference) out += format_double(*row.reference);
    out += ',';
    if (row.reference && row.check == RowCheck::abs_error)
      out += format_double(std::abs(row.value - *row.reference));
    out += ',';
    out += check_name(row.check);
    out += ',';
    if (row.tolerance) out += format_double(*row.tolerance);
    out += ',';
    out += row.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string to_json(const RunReport& report) {
  nlohmann::ordered_json doc;
  doc["scenario"] = report.scenario;
  doc["seed"] = report.seed;
  doc["config_hash"] = report.config_hash;
  doc["wall_time_ms"] = report.wall_time_ms;
  doc["all_passed"] = report.all_passed();
  doc["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::ordered_json j;
    j["label"] = row.label;
    j["param"] = row.param;
    j["value"] = row.value;
    if (row.reference) j["reference"] = *row.reference;
    if (row.tolerance) j["tol"] = *row.tolerance;
    j["cmp"] = check_name(row.check);
    j["pass"] = row.pass;
    doc["rows"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

void emit_csv(const RunReport& report, const std::string& path) {
  atomic_write(path, to_csv(report));
}

void emit_json(const RunReport& report, const std::string& path) {
  atomic_write(path, to_json(report));
}

}  // namespace qzeno
