#pragma once

#include <span>
#include <vector>

#include "fracgrid/mesh.hpp"

namespace fracgrid {

/// 1D subdiffusion D_c^alpha u = Delta u + f(x) on (0, X), homogeneous
/// Dirichlet data, L1 in time and centered differences in space. Samples
/// live on the full grid x_i = i h, i = 0..m, with zero boundary entries.
struct SubdiffusionConfig {
  double alpha;
  double X;
  double h;
  std::vector<double> f;   // m+1 samples
  std::vector<double> u0;  // m+1 samples, zero at both ends
  Mesh mesh;
};

struct SubdiffusionResult {
  std::vector<std::vector<double>> u;   // (N+1) x (m+1)
  std::vector<double> norm;             // l2 norm per step
  std::vector<double> dist_to_steady;   // ||u_n - u_inf^h|| per step
  std::vector<double> steady;           // u_inf^h = -Delta_h^{-1} f
  double kappa;                         // smallest eigenvalue of -Delta_h
};

/// Smallest eigenvalue of the Dirichlet -Delta_h: 4/h^2 sin^2(pi h / (2X)).
double smallest_laplacian_eigenvalue(double X, double h);

SubdiffusionResult solve_subdiffusion(const SubdiffusionConfig& cfg);

/// Time-fractional Allen-Cahn D_c^alpha u = kappa2 u_xx + u - u^3 on the
/// 2*pi torus, Fourier spectral in space, L1 implicit in time. u0 is sampled
/// at x_k = -pi + 2 pi k / M and must be odd with zero mean.
struct AllenCahnConfig {
  double alpha;
  double kappa2;  // > 1
  int modes;      // even
  std::vector<double> u0;
  Mesh mesh;
};

struct AllenCahnResult {
  std::vector<std::vector<double>> u;  // (N+1) x M
  std::vector<double> norm;            // l2 norm per step
  std::vector<double> zero_mode;       // |mean| per step
};

AllenCahnResult solve_allen_cahn(const AllenCahnConfig& cfg);

enum class RefineMode { Temporal, Spatial };

struct StudyConfig {
  double alpha = 0.5;
  double X = 1.0;
  double T = 1.0;
  double grading_r = 1.0;        // 1 = uniform
  RefineMode mode = RefineMode::Temporal;
  std::vector<int> levels;       // N values (Temporal) or interior counts m (Spatial)
  int fixed_m = 8;               // spatial resolution during temporal studies
  int fixed_steps = 2048;        // time resolution during spatial studies
  bool error_at_final_time = false;  // measure |u_N - u(T)| instead of sup_n
};

struct ConvergenceRow {
  int level;      // N or m
  double spacing; // max tau or h
  double error;   // sup_n l2 error
  double order;   // log2(e_prev / e_this); NaN on the first row
};

/// Eigenmode-reducible study: u0 = sin(pi x / X), f = 0. Temporal errors are
/// measured against the semidiscrete solution E_alpha(-kappa_h t^alpha) so the
/// fitted order isolates the time discretization; spatial errors are measured
/// against the continuous solution.
std::vector<ConvergenceRow> truncation_and_error_study(const StudyConfig& cfg);

struct DecayReport {
  double fitted_rate = 0.0;      // log-log tail slope
  bool step_condition_ok = false;  // kappa tau_n^alpha <= 1 on every step
  bool envelope_checked = false;
  bool envelope_pass = false;
  double max_violation = 0.0;
};

/// Tail-slope fit of a decaying positive sequence plus, when the step
/// condition holds, the sigma-envelope check
/// values_n <= values_0 E_alpha(-kappa t_n^alpha / sigma).
DecayReport decay_report(std::span<const double> values, const Mesh& mesh,
                         double alpha, double kappa);

}  // namespace fracgrid
