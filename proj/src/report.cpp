#include "streamlca/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "streamlca/error.hpp"

namespace streamlca {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file for hashing: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(ss.str())));
  return buf;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  // avoid the two representations of zero
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string RunManifest::header() const {
  std::ostringstream out;
  out << "# tool: streamlca " << tool_version << "\n";
  out << "# command: " << command_line << "\n";
  for (const auto& [label, hash] : input_hashes)
    out << "# input " << label << ": " << hash << "\n";
  if (!seed.empty()) out << "# seed: " << seed << "\n";
  out << "# timestamp: " << timestamp << "\n";
  return out.str();
}

RunManifest make_manifest(const std::string& command_line) {
  RunManifest m;
  m.tool_version = STREAMLCA_VERSION;
  m.command_line = command_line;
  // wall-clock time would break byte-identical reruns; only an explicit
  // SOURCE_DATE_EPOCH is recorded
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  m.timestamp = epoch ? epoch : "unset";
  return m;
}

std::string Table::render(ReportFormat fmt) const {
  std::ostringstream out;
  if (fmt == ReportFormat::delimited) {
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "\t" : "") << columns[i];
    out << "\n";
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << (i ? "\t" : "") << row[i];
      out << "\n";
    }
    return out.str();
  }
  std::vector<std::size_t> widths(columns.size(), 0);
  for (std::size_t i = 0; i < columns.size(); ++i)
    widths[i] = columns[i].size();
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i)
      widths[i] = std::max(widths[i], row[i].size());
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size())
        out << std::string(widths[i] - row[i].size() + 2, ' ');
    }
    out << "\n";
  };
  emit(columns);
  emit(std::vector<std::string>(1, std::string(
      std::accumulate(widths.begin(), widths.end(), std::size_t{0}) +
          2 * (widths.empty() ? 0 : widths.size() - 1),
      '-')));
  for (const auto& row : rows) emit(row);
  return out.str();
}

void write_report(const std::string& path, const RunManifest& manifest,
                  const Table& table, ReportFormat fmt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write report: " + path);
  out << manifest.header() << table.render(fmt);
}

void write_bar_chart_svg(const std::string& path, const std::string& title,
                         const std::vector<std::pair<std::string, double>>& bars,
                         const std::string& unit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write chart: " + path);
  const int bar_h = 28, gap = 12, left = 180, width = 640, top = 48;
  const int height = top + static_cast<int>(bars.size()) * (bar_h + gap) + 24;
  double vmax = 1e-12;
  for (const auto& [label, v] : bars) vmax = std::max(vmax, v);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n";
  out << "<text x=\"12\" y=\"24\" font-size=\"16\">" << title << "</text>\n";
  int y = top;
  for (const auto& [label, v] : bars) {
    const int w = static_cast<int>((width - left - 90) * (v / vmax));
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + bar_h / 2 + 5
        << "\" font-size=\"13\" text-anchor=\"end\">" << label << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << w
        << "\" height=\"" << bar_h << "\" fill=\"#4878a8\"/>\n";
    out << "<text x=\"" << left + w + 6 << "\" y=\"" << y + bar_h / 2 + 5
        << "\" font-size=\"12\">" << fixed6(v) << " " << unit << "</text>\n";
    y += bar_h + gap;
  }
  out << "</svg>\n";
}

}  // namespace streamlca
