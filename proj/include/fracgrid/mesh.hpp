#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fracgrid {

/// Strictly increasing time grid t_0 = 0 < t_1 < ... < t_N with cached steps
/// tau_n = t_n - t_{n-1}. Immutable after construction and safe to share
/// across threads; downstream kernels copy the mesh so coefficients cannot
/// desynchronize from the grid.
class Mesh {
 public:
  /// Degenerate single-point grid {0}; a placeholder until a real mesh is
  /// assigned.
  Mesh() : points_{0.0} {}

  static Mesh from_points(std::vector<double> points);

  int segments() const { return static_cast<int>(steps_.size()); }  // N
  double total_time() const { return points_.back(); }

  double t(int n) const;    // n in [0, N]
  double tau(int n) const;  // n in [1, N]

  std::span<const double> points() const { return points_; }
  std::span<const double> steps() const { return steps_; }

  double max_step() const;

  bool operator==(const Mesh&) const = default;

 private:
  std::vector<double> points_;
  std::vector<double> steps_;
};

/// t_n = n T / N.
Mesh uniform_mesh(double T, int N);

/// t_n = T (n/N)^r with grading exponent r >= 1. r = 1 reproduces
/// uniform_mesh bit for bit. r < 1 is rejected: coarsening near t = 0
/// defeats the purpose of grading.
Mesh graded_mesh(double T, int N, double r);

/// Deterministic pseudo-random mesh whose consecutive step ratios
/// tau_{n+1}/tau_n stay within [1/ratio_bound, ratio_bound]. Steps are
/// normalized so that t_N = T exactly, then the ratio bound is re-validated.
Mesh random_mesh(double T, int N, double ratio_bound, unsigned long long seed);

/// Plain text interchange format: one time per line, 17 significant digits.
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);
void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace fracgrid
