#include "fracgrid/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fracgrid {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_kernel_csv(std::ostream& out, const TriKernel& kernel) {
  for (int n = 1; n <= kernel.rows(); ++n) {
    bool first = true;
    for (double v : kernel.row(n)) {
      if (!first) out << ',';
      out << fmt17(v);
      first = false;
    }
    out << '\n';
  }
}

TriKernel read_kernel_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != rows.size() + 1) {
      throw std::runtime_error("kernel CSV row " + std::to_string(rows.size() + 1) +
                               " must hold exactly " +
                               std::to_string(rows.size() + 1) + " entries");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("kernel CSV is empty");
  TriKernel kernel(static_cast<int>(rows.size()));
  for (int n = 1; n <= kernel.rows(); ++n) {
    auto dst = kernel.row(n);
    const auto& src = rows[static_cast<std::size_t>(n - 1)];
    for (int j = 0; j < n; ++j) dst[static_cast<std::size_t>(j)] = src[static_cast<std::size_t>(j)];
  }
  return kernel;
}

void write_kernel_csv_file(const std::string& path, const TriKernel& kernel) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open kernel file for writing: " + path);
  write_kernel_csv(out, kernel);
}

TriKernel read_kernel_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open kernel file: " + path);
  return read_kernel_csv(in);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::map<std::string, std::string> cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) cfg[key] = value;
  }
  return cfg;
}

double config_number(const std::map<std::string, std::string>& cfg,
                     const std::string& key, double fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : std::stod(it->second);
}

std::string config_string(const std::map<std::string, std::string>& cfg,
                          const std::string& key, const std::string& fallback) {
  const auto it = cfg.find(key);
  return it == cfg.end() ? fallback : it->second;
}

TrajectoryCsv read_trajectory_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open trajectory file: " + path);
  TrajectoryCsv traj;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < 3) throw std::runtime_error("trajectory CSV needs n,t,u columns");
    traj.t.push_back(std::stod(cells[1]));
    traj.u.push_back(std::stod(cells[2]));
  }
  if (traj.t.size() < 2) throw std::runtime_error("trajectory CSV holds fewer than two rows");
  return traj;
}

}  // namespace fracgrid
