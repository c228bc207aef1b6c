#pragma once

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracgrid/schemes.hpp"

namespace fracgrid {

/// Which combination the theta rule applies, with theta weighting the current
/// time level in both cases (theta = 1 implicit, theta = 0 explicit):
///   ConvexComboOfF:  f_n^theta = theta f(t_n, u_n) + (1-theta) f(t_{n-1}, u_{n-1})
///   FAtComboPoint:   f_n^theta = f(t_n^theta, u_n^theta) at the combined point
enum class ThetaVariant { ConvexComboOfF, FAtComboPoint };

struct FodeProblem {
  std::function<double(double, double)> f;  // (t, u)
  std::optional<double> lipschitz_bound;    // M, enables solvability checks
  double u0 = 0.0;
  double theta = 1.0;
  ThetaVariant variant = ThetaVariant::ConvexComboOfF;
  /// When set, f(t, u) = beta * u + c and every step is an exact division.
  std::optional<std::pair<double, double>> affine;
};

FodeProblem affine_problem(double beta, double c, double u0, double theta = 1.0,
                           ThetaVariant variant = ThetaVariant::ConvexComboOfF);

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(double residual, int step);
  double residual() const { return residual_; }
  int step() const { return step_; }

 private:
  double residual_;
  int step_;
};

class SolvabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class SolvabilityStatus { Ok, Near, Violated };

/// theta M < c_0^n for every row (chi_0^n > M/2 for Crank-Nicolson kernels),
/// with a 1e-12 strictness margin; Near flags rows within a factor 1e-6.
SolvabilityStatus check_solvability(const SchemeKernel& kernel, double lipschitz_bound,
                                    double theta);

/// One step of the differential-form scheme sum c_{n-j}^n (u_j - u_{j-1}) =
/// f_n^theta, where history = (u_0, ..., u_{n-1}). Affine problems divide
/// exactly; otherwise damped Newton with a fixed-point fallback, residual
/// below 1e-12 (1 + |u_n|).
double step_implicit(const SchemeKernel& kernel, const FodeProblem& problem,
                     std::span<const double> history);

/// Crank-Nicolson split step chi_0^n (u_n - u_{n-1}) + history = f_n^{1/2}.
double step_cn(const SchemeKernel& kernel, const FodeProblem& problem,
               std::span<const double> history);

/// Full trajectory (u_0, ..., u_N); dispatches per kernel family.
std::vector<double> solve(const SchemeKernel& kernel, const FodeProblem& problem,
                          const Mesh& mesh);

/// Integral-form stepping u_n = u_0 + sum a_{n-j}^n f_j^theta.
std::vector<double> solve_integral(const TriKernel& a, const FodeProblem& problem,
                                   const Mesh& mesh);

/// D_tau^alpha applied to sampled values (v_0..v_N), evaluated at step n.
double apply_dalpha(const SchemeKernel& kernel, std::span<const double> values, int n);

}  // namespace fracgrid
