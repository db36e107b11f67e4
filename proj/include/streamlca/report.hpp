#ifndef STREAMLCA_REPORT_HPP
#define STREAMLCA_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace streamlca {

// FNV-1a 64-bit over a file's bytes, rendered as hex.
std::string file_hash(const std::string& path);
std::uint64_t fnv1a64(const std::string& bytes);

// Fixed 6-decimal rendering so golden files stay byte-stable.
std::string fixed6(double v);

struct RunManifest {
  std::string tool_version;
  std::string command_line;
  std::vector<std::pair<std::string, std::string>> input_hashes;  // label, hash
  std::string seed;       // empty when the command draws no randomness
  std::string timestamp;  // from SOURCE_DATE_EPOCH, else "unset"

  // '#'-prefixed header lines embedded at the top of every report.
  std::string header() const;
};

RunManifest make_manifest(const std::string& command_line);

enum class ReportFormat { table, delimited };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::string render(ReportFormat fmt) const;
};

// Writes manifest header + table; throws Error on I/O failure.
void write_report(const std::string& path, const RunManifest& manifest,
                  const Table& table, ReportFormat fmt);

// Minimal self-contained SVG bar chart (one bar per row; value column is
// numeric). Companion file for figure-shaped reports.
void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<std::pair<std::string, double>>& bars,
                         const std::string& unit);

}  // namespace streamlca

#endif
