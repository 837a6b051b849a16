#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>

#include <json.hpp>

#include "zeno_ent/scenario.hpp"

namespace zeno_ent {

/// Output file could not be written.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest text that holds every bit of x: 17 significant digits.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write_csv(const Table& table, std::ostream& os) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const double* v = std::get_if<double>(&row[i]))
        os << format_number(*v);
      else
        os << std::get<std::string>(row[i]);
    }
    os << '\n';
  }
}

inline nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(cfg.scenario);
  j["bigR"] = cfg.bigR;
  j["r1"] = cfg.r1_grid();
  j["s"] = cfg.s_grid();
  j["phi"] = cfg.phi;
  j["tauMax"] = cfg.tauMax;
  j["tauSteps"] = cfg.tauSteps;
  j["measIntervals"] = cfg.measIntervals;
  j["solver"] = to_string(cfg.solver);
  j["dt"] = cfg.dt;
  j["nModes"] = cfg.nModes;
  j["freqWindow"] = cfg.freqWindow;
  j["withBath"] = cfg.withBath;
  j["objective"] = to_string(cfg.objective);
  return j;
}

/// JSON envelope: the full config next to the table, so a file documents how it was made.
inline void write_json(const Table& table, const ScenarioConfig& cfg, std::ostream& os) {
  nlohmann::ordered_json j;
  j["config"] = config_to_json(cfg);
  j["columns"] = table.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) std::visit([&](const auto& v) { r.push_back(v); }, cell);
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["notes"] = table.notes;
  os << j.dump(2) << '\n';
}

inline void write_table(const Table& table, const ScenarioConfig& cfg, std::ostream& os) {
  if (cfg.format == OutputFormat::Json)
    write_json(table, cfg, os);
  else
    write_csv(table, os);
}

/// Writes to "<path>.tmp" and renames over path, so a failed run never leaves a partial file.
inline void write_table_atomic(const Table& table, const ScenarioConfig& cfg,
                               const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    write_table(table, cfg, os);
    os.flush();
    if (!os) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot move output into " + path.string() + ": " + ec.message());
  }
}

}  // namespace zeno_ent
