#include "clearkit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "clearkit/error.hpp"

namespace clearkit::io {

void Table::add(std::vector<double> row) {
  if (row.size() != columns.size()) throw Error("table row width does not match header");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& t, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table trajectory_table(const cavity::Trajectory& tr) {
  Table t{{"t_us", "re_g", "im_g", "re_e", "im_e", "n_g", "n_e"}, {}};
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const auto g = tr.ground[i], e = tr.excited[i];
    t.add({tr.times[i], g.real(), g.imag(), e.real(), e.imag(), std::norm(g), std::norm(e)});
  }
  return t;
}

Table trace_table(const ramsey::RamseyTrace& tr) {
  Table t{{"t_r_us", "signal"}, {}};
  for (std::size_t i = 0; i < tr.t_R.size(); ++i) t.add({tr.t_R[i], tr.signal[i]});
  return t;
}

TraceSamples parse_trace_csv(std::string_view text) {
  TraceSamples out;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "t_r_us,signal")
        throw ConfigError("trace CSV header must be 't_r_us,signal', got '" + line + "'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError("trace CSV line " + std::to_string(lineno) + " needs two columns");
    try {
      const double t = std::stod(line.substr(0, comma));
      const double s = std::stod(line.substr(comma + 1));
      out.t_R.push_back(t);
      out.signal.push_back(s);
    } catch (const std::exception&) {
      throw ConfigError("trace CSV line " + std::to_string(lineno) + " is not numeric");
    }
  }
  if (!header) throw ConfigError("trace CSV has no header row");
  return out;
}

TraceSamples read_trace_csv(const std::filesystem::path& path) {
  return parse_trace_csv(read_text(path));
}

nlohmann::json fit_to_json(const ramsey::FitResult& f) {
  return {{"n0", f.n0},
          {"phi0", f.phi0},
          {"residual_norm", f.residual_norm},
          {"iterations", f.iterations},
          {"converged", f.converged}};
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
  if (!out) throw ConfigError("failed writing " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace clearkit::io
