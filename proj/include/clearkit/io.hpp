#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "clearkit/cavity.hpp"
#include "clearkit/ramsey.hpp"

namespace clearkit::io {

/// Column-major-free numeric table; each row has columns.size() values.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row);
};

/// %.17g, enough to round-trip any double.
std::string format_double(double v);

/// CSV text: `# ` prefixed comment lines, the header row, then rows.
std::string to_csv(const Table& t, const std::vector<std::string>& comments = {});

/// `t_us,re_g,im_g,re_e,im_e,n_g,n_e`
Table trajectory_table(const cavity::Trajectory& tr);
/// `t_r_us,signal`
Table trace_table(const ramsey::RamseyTrace& tr);

struct TraceSamples {
  std::vector<double> t_R;
  std::vector<double> signal;
};

/// Reads a `t_r_us,signal` CSV, skipping `#` comment lines.
TraceSamples parse_trace_csv(std::string_view text);
TraceSamples read_trace_csv(const std::filesystem::path& path);

nlohmann::json fit_to_json(const ramsey::FitResult& f);

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t v);

void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace clearkit::io
