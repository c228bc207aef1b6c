#include "fracgrid/solver.hpp"

#include <cmath>
#include <string>

namespace fracgrid {

FodeProblem affine_problem(double beta, double c, double u0, double theta,
                           ThetaVariant variant) {
  FodeProblem p;
  p.f = [beta, c](double, double u) { return beta * u + c; };
  p.lipschitz_bound = std::abs(beta);
  p.u0 = u0;
  p.theta = theta;
  p.variant = variant;
  p.affine = std::make_pair(beta, c);
  return p;
}

NonConvergenceError::NonConvergenceError(double residual, int step)
    : std::runtime_error("nonlinear step did not converge (residual " +
                         std::to_string(residual) + ", step " +
                         std::to_string(step) + ")"),
      residual_(residual),
      step_(step) {}

SolvabilityStatus check_solvability(const SchemeKernel& kernel, double lipschitz_bound,
                                    double theta) {
  const bool cn = kernel.family == SchemeFamily::CrankNicolsonL1Plus;
  SolvabilityStatus status = SolvabilityStatus::Ok;
  for (int n = 1; n <= kernel.C.rows(); ++n) {
    // For CN the implicit weight is chi_0^n = c_0^n / 2 against M/2.
    const double lhs = cn ? 0.5 * lipschitz_bound : theta * lipschitz_bound;
    const double rhs = cn ? 0.5 * kernel.C.diagonal(n) : kernel.C.diagonal(n);
    if (!(lhs < rhs * (1.0 - 1e-12))) return SolvabilityStatus::Violated;
    if (lhs > rhs * (1.0 - 1e-6)) status = SolvabilityStatus::Near;
  }
  return status;
}

namespace {

struct ThetaRule {
  const FodeProblem& problem;
  double t_curr, t_prev, u_prev;

  double operator()(double u_curr) const {
    const double theta = problem.theta;
    if (problem.variant == ThetaVariant::ConvexComboOfF) {
      double v = theta != 0.0 ? theta * problem.f(t_curr, u_curr) : 0.0;
      if (theta != 1.0) v += (1.0 - theta) * problem.f(t_prev, u_prev);
      return v;
    }
    const double t_c = theta * t_curr + (1.0 - theta) * t_prev;
    const double u_c = theta * u_curr + (1.0 - theta) * u_prev;
    return problem.f(t_c, u_c);
  }
};

/// Solves w * (u - u_prev) + known = rule(u). Exact for affine f; damped
/// Newton with numerical Jacobian and a fixed-point fallback otherwise.
double solve_step_equation(double w, double known, const ThetaRule& rule,
                           const FodeProblem& problem) {
  const double u_prev = rule.u_prev;
  if (problem.affine) {
    const auto [beta, c] = *problem.affine;
    // Both theta variants make the step affine in u_n with slope theta*beta,
    // so solvability is the exact condition c_0^n - theta*beta > 0 rather
    // than the generic Lipschitz bound.
    const double theta = problem.theta;
    double rhs_const;
    if (problem.variant == ThetaVariant::ConvexComboOfF) {
      rhs_const = theta * c + (1.0 - theta) * (beta * u_prev + c);
    } else {
      rhs_const = beta * (1.0 - theta) * u_prev + c;
    }
    const double denom = w - theta * beta;
    if (!(denom > 0.0)) {
      throw SolvabilityError("affine step is unsolvable: c_0^n <= theta*beta");
    }
    return (w * u_prev - known + rhs_const) / denom;
  }

  auto g = [&](double u) { return w * (u - u_prev) + known - rule(u); };
  double u = u_prev;
  double gu = g(u);
  const auto tol = [&](double v) { return 1e-12 * (1.0 + std::abs(v)); };
  for (int it = 0; it < 100; ++it) {
    if (std::abs(gu) <= tol(u)) return u;
    const double e = 1e-7 * (1.0 + std::abs(u));
    const double deriv = (g(u + e) - g(u - e)) / (2.0 * e);
    bool moved = false;
    if (deriv != 0.0 && std::isfinite(deriv)) {
      double du = -gu / deriv;
      for (int damp = 0; damp < 40; ++damp) {
        const double cand = u + du;
        const double gc = g(cand);
        if (std::abs(gc) < std::abs(gu)) {
          u = cand;
          gu = gc;
          moved = true;
          break;
        }
        du *= 0.5;
      }
    }
    if (!moved) {
      // Fixed point: u = u_prev + (rule(u) - known)/w.
      const double cand = u_prev + (rule(u) - known) / w;
      const double gc = g(cand);
      if (!(std::abs(gc) < std::abs(gu))) throw NonConvergenceError(std::abs(gu), -1);
      u = cand;
      gu = gc;
    }
  }
  if (std::abs(gu) <= tol(u)) return u;
  throw NonConvergenceError(std::abs(gu), -1);
}

double history_sum(const TriKernel& c, std::span<const double> history, int n) {
  double h = 0.0;
  for (int j = 1; j < n; ++j) {
    h += c.coef(n, j) * (history[static_cast<std::size_t>(j)] -
                         history[static_cast<std::size_t>(j - 1)]);
  }
  return h;
}

}  // namespace

double step_implicit(const SchemeKernel& kernel, const FodeProblem& problem,
                     std::span<const double> history) {
  const int n = static_cast<int>(history.size());
  if (n < 1 || n > kernel.C.rows()) {
    throw std::invalid_argument("step history must hold u_0..u_{n-1}");
  }
  if (!problem.affine && problem.lipschitz_bound &&
      check_solvability(kernel, *problem.lipschitz_bound, problem.theta) ==
          SolvabilityStatus::Violated) {
    throw SolvabilityError("solvability condition theta*M < c_0^n violated");
  }
  const ThetaRule rule{problem, kernel.mesh.t(n), kernel.mesh.t(n - 1),
                       history[static_cast<std::size_t>(n - 1)]};
  return solve_step_equation(kernel.C.diagonal(n), history_sum(kernel.C, history, n),
                             rule, problem);
}

double step_cn(const SchemeKernel& kernel, const FodeProblem& problem,
               std::span<const double> history) {
  if (kernel.family != SchemeFamily::CrankNicolsonL1Plus) {
    throw std::invalid_argument("step_cn needs a Crank-Nicolson L1+ kernel");
  }
  const int n = static_cast<int>(history.size());
  if (n < 1 || n > kernel.C.rows()) {
    throw std::invalid_argument("step history must hold u_0..u_{n-1}");
  }
  const double chi0 = 0.5 * kernel.C.diagonal(n);
  if (!problem.affine && problem.lipschitz_bound &&
      !(*problem.lipschitz_bound * 0.5 < chi0)) {
    throw SolvabilityError("Crank-Nicolson solvability chi_0^n > M/2 violated");
  }
  FodeProblem half = problem;
  half.theta = 0.5;
  half.variant = ThetaVariant::ConvexComboOfF;
  if (problem.affine) half.affine = problem.affine;
  const ThetaRule rule{half, kernel.mesh.t(n), kernel.mesh.t(n - 1),
                       history[static_cast<std::size_t>(n - 1)]};
  // chi_0^n (u_n - u_{n-1}) + sum_{j<n} chi_{n-j}^n grad u_j = f_n^{1/2}.
  return solve_step_equation(chi0, history_sum(kernel.C, history, n), rule, half);
}

std::vector<double> solve(const SchemeKernel& kernel, const FodeProblem& problem,
                          const Mesh& mesh) {
  if (!(mesh == kernel.mesh)) {
    throw std::invalid_argument("solve mesh does not match the kernel mesh");
  }
  const int N = mesh.segments();
  std::vector<double> u;
  u.reserve(static_cast<std::size_t>(N) + 1);
  u.push_back(problem.u0);
  const bool cn = kernel.family == SchemeFamily::CrankNicolsonL1Plus;
  for (int n = 1; n <= N; ++n) {
    try {
      u.push_back(cn ? step_cn(kernel, problem, u) : step_implicit(kernel, problem, u));
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError(e.residual(), n);
    }
  }
  return u;
}

std::vector<double> solve_integral(const TriKernel& a, const FodeProblem& problem,
                                   const Mesh& mesh) {
  const int N = mesh.segments();
  if (a.rows() != N) {
    throw std::invalid_argument("integral kernel does not match the mesh size");
  }
  std::vector<double> u{problem.u0};
  std::vector<double> f_rules;  // f_j^theta for j < n, frozen as steps complete
  for (int n = 1; n <= N; ++n) {
    double known = problem.u0;
    for (int j = 1; j < n; ++j) known += a.coef(n, j) * f_rules[static_cast<std::size_t>(j - 1)];
    const ThetaRule rule{problem, mesh.t(n), mesh.t(n - 1),
                         u[static_cast<std::size_t>(n - 1)]};
    // u_n = known + a_0^n f_n^theta(u_n): same scalar form as the
    // differential step with w = 1/a_0^n.
    const double w = 1.0 / a.diagonal(n);
    double value;
    try {
      value = solve_step_equation(
          w, w * (u[static_cast<std::size_t>(n - 1)] - known), rule, problem);
    } catch (const NonConvergenceError& e) {
      throw NonConvergenceError(e.residual(), n);
    }
    u.push_back(value);
    f_rules.push_back(rule(value));
  }
  return u;
}

double apply_dalpha(const SchemeKernel& kernel, std::span<const double> values, int n) {
  if (n < 1 || n > kernel.C.rows() || static_cast<int>(values.size()) < n + 1) {
    throw std::invalid_argument("apply_dalpha needs values v_0..v_n");
  }
  double s = 0.0;
  for (int j = 1; j <= n; ++j) {
    s += kernel.C.coef(n, j) * (values[static_cast<std::size_t>(j)] -
                                values[static_cast<std::size_t>(j - 1)]);
  }
  return s;
}

}  // namespace fracgrid
