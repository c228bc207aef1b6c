#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fracgrid/tri_kernel.hpp"

namespace fracgrid {

/// 17 significant digits: enough to round-trip a double exactly.
std::string fmt17(double v);

/// Kernel CSV interchange: one row per n, columns a_{n-1}^n ... a_0^n.
void write_kernel_csv(std::ostream& out, const TriKernel& kernel);
TriKernel read_kernel_csv(std::istream& in);
void write_kernel_csv_file(const std::string& path, const TriKernel& kernel);
TriKernel read_kernel_csv_file(const std::string& path);

/// Flat key=value config text with '#' comments.
std::map<std::string, std::string> read_config_file(const std::string& path);
double config_number(const std::map<std::string, std::string>& cfg,
                     const std::string& key, double fallback);
std::string config_string(const std::map<std::string, std::string>& cfg,
                          const std::string& key, const std::string& fallback);

struct TrajectoryCsv {
  std::vector<double> t;
  std::vector<double> u;
};

/// Reads the `n,t,u,...` trajectory format emitted by the solve subcommand.
TrajectoryCsv read_trajectory_csv_file(const std::string& path);

}  // namespace fracgrid
