#include "fracgrid/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracgrid {

namespace {

void require_order(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::invalid_argument("scheme order alpha must lie in (0, 1), got " +
                                std::to_string(alpha));
  }
}

/// (x + tau)^p - x^p without cancellation: x^p expm1(p log1p(tau/x)).
double pow_difference(double x, double tau, double p) {
  if (x <= 0.0) return std::pow(tau, p);
  return std::pow(x, p) * std::expm1(p * std::log1p(tau / x));
}

/// Cell average of g_{1-alpha}(t_n - .) over (t_{j-1}, t_j]; coincides with
/// the L1 weight.
double g_average(double alpha, const Mesh& mesh, int n, int j) {
  const double right = mesh.t(n) - mesh.t(j);
  return pow_difference(right, mesh.tau(j), 1.0 - alpha) /
         (mesh.tau(j) * std::tgamma(2.0 - alpha));
}

}  // namespace

SchemeKernel l1_kernel(double alpha, const Mesh& mesh) {
  require_order(alpha);
  const int N = mesh.segments();
  TriKernel c(N);
  for (int n = 1; n <= N; ++n) {
    for (int j = 1; j <= n; ++j) c.coef(n, j) = g_average(alpha, mesh, n, j);
  }
  return {alpha, mesh, SchemeFamily::L1, std::move(c), 1.0};
}

TriKernel integral_form_kernel(double alpha, const Mesh& mesh) {
  require_order(alpha);
  const int N = mesh.segments();
  const double rg = 1.0 / std::tgamma(1.0 + alpha);
  TriKernel a(N);
  for (int n = 1; n <= N; ++n) {
    const double tn = mesh.t(n);
    for (int j = 1; j <= n; ++j) {
      a.coef(n, j) = pow_difference(tn - mesh.t(j), mesh.tau(j), alpha) * rg;
    }
  }
  return a;
}

namespace {

/// chi_{n-j}^n = 1/(tau_n tau_j) int_{t_{n-1}}^{t_n} int_{t_{j-1}}^{min(t,t_j)}
/// g_{1-alpha}(t-s) ds dt, via the repeated antiderivative of s^{-alpha}.
double cn_chi(double alpha, const Mesh& mesh, int n, int j) {
  const double g3 = std::tgamma(3.0 - alpha);
  const double scale = 1.0 / (mesh.tau(n) * mesh.tau(j) * g3);
  if (j == n) {
    // Triangular part of the diagonal cell: min(t, t_n) = t.
    return std::pow(mesh.tau(n), 2.0 - alpha) * scale;
  }
  // Second mixed difference of x^{2-alpha}, grouped as two forward
  // differences over tau_j to limit cancellation.
  const double x = mesh.t(n - 1) - mesh.t(j);
  const double p = 2.0 - alpha;
  const double upper = pow_difference(x + mesh.tau(n), mesh.tau(j), p);
  const double lower = pow_difference(x, mesh.tau(j), p);
  return (upper - lower) * scale;
}

}  // namespace

SchemeKernel cn_l1plus_kernel(double alpha, const Mesh& mesh) {
  require_order(alpha);
  const int N = mesh.segments();
  TriKernel c(N);
  for (int n = 1; n <= N; ++n) {
    for (int j = 1; j <= n; ++j) {
      const double chi = cn_chi(alpha, mesh, n, j);
      c.coef(n, j) = (j == n) ? 2.0 * chi : chi;
    }
  }
  return {alpha, mesh, SchemeFamily::CrankNicolsonL1Plus, std::move(c), 0.5};
}

SchemeKernel scheme_from_integral(double alpha, const Mesh& mesh, const TriKernel& a) {
  require_order(alpha);
  if (a.rows() != mesh.segments()) {
    throw std::invalid_argument("integral kernel does not match the mesh size");
  }
  TriKernel c = right_complementary(a);
  return {alpha, mesh, SchemeFamily::IntegralForm, std::move(c), 1.0};
}

TriKernel differential_to_inverse_kernel(const TriKernel& c) {
  const int N = c.rows();
  TriKernel b(N);
  for (int n = 1; n <= N; ++n) {
    b.coef(n, n) = c.coef(n, n);
    for (int j = 1; j < n; ++j) b.coef(n, j) = c.coef(n, j) - c.coef(n, j + 1);
  }
  return b;
}

namespace {

CertificationReport certify_from_b(const TriKernel& b, const TriKernel& a,
                                   std::span<const double> lambdas) {
  CertificationReport report;
  const int N = b.rows();

  double diag_min = std::numeric_limits<double>::infinity();
  double offdiag_max = -std::numeric_limits<double>::infinity();
  double row_sum_min = std::numeric_limits<double>::infinity();
  bool sign_pass = true;
  for (int n = 1; n <= N; ++n) {
    double row_max = 0.0;
    for (double v : b.row(n)) row_max = std::max(row_max, std::abs(v));
    // Exact-arithmetic sign conditions, degraded by roundoff: the zero
    // boundary sits at 1e-13 of the row magnitude.
    const double tol = 1e-13 * row_max;
    diag_min = std::min(diag_min, b.diagonal(n));
    if (!(b.diagonal(n) > 0.0)) sign_pass = false;
    double row_sum = 0.0;
    for (int j = 1; j <= n; ++j) {
      row_sum += b.coef(n, j);
      if (j < n) {
        offdiag_max = std::max(offdiag_max, b.coef(n, j));
        if (b.coef(n, j) > tol) sign_pass = false;
      }
    }
    row_sum_min = std::min(row_sum_min, row_sum);
    if (row_sum < -tol) sign_pass = false;
  }
  report.b_diagonal_min = diag_min;
  report.b_offdiag_max = offdiag_max;
  report.row_sum_min = row_sum_min;
  report.is_completely_positive = sign_pass;

  bool resolvent_pass_all = true;
  for (double lambda : lambdas) {
    bool pass = true;
    try {
      const TriKernel r = resolvent(a, lambda);
      for (int n = 1; n <= N && pass; ++n) {
        double row_sum = 0.0;
        for (int j = 1; j <= n; ++j) {
          const double v = r.coef(n, j);
          row_sum += v;
          if (v < -1e-12) pass = false;
        }
        const double d = r.diagonal(n);
        if (!(d > 0.0) || d > 1.0 + 1e-14) pass = false;
        if (row_sum > 1.0 + 1e-12) pass = false;
      }
    } catch (const std::invalid_argument&) {
      pass = false;  // nonpositive diagonal: no resolvent
    }
    report.resolvent_checks.emplace_back(lambda, pass);
    resolvent_pass_all = resolvent_pass_all && pass;
  }
  report.tests_agree = (resolvent_pass_all == sign_pass);
  return report;
}

}  // namespace

CertificationReport certify(const TriKernel& a, std::span<const double> lambdas) {
  return certify_from_b(invert(a), a, lambdas);
}

CertificationReport certify(const TriKernel& a, double alpha, const Mesh& mesh,
                            std::span<const double> lambdas) {
  CertificationReport report = certify(a, lambdas);
  const auto [nu, rho1] = estimate_nu_rho1(scheme_from_integral(alpha, mesh, a));
  report.nu = nu;
  report.rho1 = rho1;
  return report;
}

CertificationReport certify(const SchemeKernel& kernel, std::span<const double> lambdas) {
  const TriKernel b = differential_to_inverse_kernel(kernel.C);
  CertificationReport report = certify_from_b(b, invert(b), lambdas);
  const auto [nu, rho1] = estimate_nu_rho1(kernel);
  report.nu = nu;
  report.rho1 = rho1;
  return report;
}

std::pair<double, double> estimate_nu_rho1(const SchemeKernel& kernel) {
  const int N = kernel.mesh.segments();
  double nu = std::numeric_limits<double>::infinity();
  double rho1 = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= N; ++n) {
    for (int j = 1; j <= n; ++j) {
      const double ratio =
          kernel.C.coef(n, j) / g_average(kernel.alpha, kernel.mesh, n, j);
      nu = std::min(nu, ratio);
      rho1 = std::max(rho1, ratio);
    }
  }
  return {nu, rho1};
}

bool cn_chi_monotone(double alpha, const Mesh& mesh) {
  require_order(alpha);
  for (int n = 2; n <= mesh.segments(); ++n) {
    if (!(cn_chi(alpha, mesh, n, n) > cn_chi(alpha, mesh, n, n - 1))) return false;
  }
  return mesh.segments() >= 2;
}

double estimate_alpha_c(const Mesh& mesh, double tol) {
  if (mesh.segments() < 2) {
    throw std::invalid_argument("alpha_c needs a mesh with at least two steps");
  }
  double lo = 1e-6, hi = 1.0 - 1e-6;
  if (cn_chi_monotone(lo, mesh)) return lo;
  if (!cn_chi_monotone(hi, mesh)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (cn_chi_monotone(mid, mesh) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace fracgrid
