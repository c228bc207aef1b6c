#include "fracgrid/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fracgrid {

Mesh Mesh::from_points(std::vector<double> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("mesh needs at least two points");
  }
  if (points.front() != 0.0) {
    throw std::invalid_argument("mesh must start at t_0 = 0");
  }
  Mesh m;
  m.steps_.resize(points.size() - 1);
  for (std::size_t n = 1; n < points.size(); ++n) {
    const double tau = points[n] - points[n - 1];
    if (!(tau > 0.0)) {
      throw std::invalid_argument("mesh points must be strictly increasing (segment " +
                                  std::to_string(n) + ")");
    }
    m.steps_[n - 1] = tau;
  }
  m.points_ = std::move(points);
  return m;
}

double Mesh::t(int n) const {
  if (n < 0 || n >= static_cast<int>(points_.size())) {
    throw std::out_of_range("mesh time index " + std::to_string(n));
  }
  return points_[static_cast<std::size_t>(n)];
}

double Mesh::tau(int n) const {
  if (n < 1 || n > segments()) {
    throw std::out_of_range("mesh step index " + std::to_string(n));
  }
  return steps_[static_cast<std::size_t>(n - 1)];
}

double Mesh::max_step() const {
  double m = 0.0;
  for (double s : steps_) m = std::max(m, s);
  return m;
}

namespace {

void require_horizon(double T, int N) {
  if (!(T > 0.0)) throw std::invalid_argument("final time T must be positive");
  if (N < 1) throw std::invalid_argument("mesh needs N >= 1 segments");
}

}  // namespace

Mesh uniform_mesh(double T, int N) {
  require_horizon(T, N);
  std::vector<double> pts(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    pts[static_cast<std::size_t>(n)] = T * (static_cast<double>(n) / N);
  }
  return Mesh::from_points(std::move(pts));
}

Mesh graded_mesh(double T, int N, double r) {
  require_horizon(T, N);
  if (!(r >= 1.0)) {
    throw std::invalid_argument("grading exponent r must be >= 1");
  }
  // Closed form, not step accumulation, so the grid carries no drift.
  std::vector<double> pts(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    pts[static_cast<std::size_t>(n)] = T * std::pow(static_cast<double>(n) / N, r);
  }
  return Mesh::from_points(std::move(pts));
}

Mesh random_mesh(double T, int N, double ratio_bound, unsigned long long seed) {
  require_horizon(T, N);
  if (!(ratio_bound >= 1.0)) {
    throw std::invalid_argument("ratio bound must be >= 1");
  }
  // Raw engine bits -> uniforms, so the mesh is reproducible across platforms.
  std::mt19937_64 eng(seed);
  auto uniform01 = [&eng]() {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
  };
  const double log_bound = std::log(ratio_bound);
  // Random walk on log tau, clamped to a window so adjacent grid points stay
  // representable; clamping never widens a move, so the ratio bound survives.
  const double window = 10.0;
  std::vector<double> steps(static_cast<std::size_t>(N));
  double log_s = 0.0;
  steps[0] = 1.0;
  for (int n = 1; n < N; ++n) {
    log_s += (2.0 * uniform01() - 1.0) * log_bound;
    log_s = std::clamp(log_s, -window, window);
    steps[static_cast<std::size_t>(n)] = std::exp(log_s);
  }
  std::vector<double> prefix(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 1; n <= N; ++n) {
    prefix[static_cast<std::size_t>(n)] =
        prefix[static_cast<std::size_t>(n - 1)] + steps[static_cast<std::size_t>(n - 1)];
  }
  const double total = prefix.back();
  std::vector<double> pts(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    pts[static_cast<std::size_t>(n)] = T * (prefix[static_cast<std::size_t>(n)] / total);
  }
  Mesh mesh = Mesh::from_points(std::move(pts));
  // Normalization preserves ratios up to roundoff; re-validate the bound.
  const double slack = ratio_bound * (1.0 + 1e-12);
  for (int n = 1; n < N; ++n) {
    const double ratio = mesh.tau(n + 1) / mesh.tau(n);
    if (ratio > slack || ratio < 1.0 / slack) {
      throw std::logic_error("random mesh violated its own ratio bound");
    }
  }
  return mesh;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
  char buf[64];
  for (double t : mesh.points()) {
    std::snprintf(buf, sizeof(buf), "%.17g", t);
    out << buf << '\n';
  }
}

Mesh read_mesh(std::istream& in) {
  std::vector<double> pts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    pts.push_back(std::stod(line));
  }
  return Mesh::from_points(std::move(pts));
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open mesh file for writing: " + path);
  write_mesh(out, mesh);
}

Mesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open mesh file: " + path);
  return read_mesh(in);
}

}  // namespace fracgrid
