#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "fracgrid/mesh.hpp"
#include "fracgrid/tri_kernel.hpp"

namespace fracgrid {

enum class SchemeFamily { L1, IntegralForm, CrankNicolsonL1Plus };

/// Differential-form discretization kernel: D_tau^alpha u_n =
/// sum_{j=1}^n c_{n-j}^n (u_j - u_{j-1}). theta is the weight the f-rule puts
/// on the current time level (theta = 1: implicit).
struct SchemeKernel {
  double alpha;
  Mesh mesh;
  SchemeFamily family;
  TriKernel C;
  double theta;
};

/// L1 weights: exact averages of g_{1-alpha}(t_n - .) per cell,
/// c_{n-j}^n = [(t_n - t_{j-1})^{1-alpha} - (t_n - t_j)^{1-alpha}]
///             / (tau_j Gamma(2-alpha)).
SchemeKernel l1_kernel(double alpha, const Mesh& mesh);

/// Integral-form kernel: exact integrals of g_alpha(t_n - .) per cell,
/// a_{n-j}^n = [(t_n - t_{j-1})^alpha - (t_n - t_j)^alpha] / Gamma(1+alpha).
TriKernel integral_form_kernel(double alpha, const Mesh& mesh);

/// Crank-Nicolson L1+ kernel: chi_{n-j}^n from the exact double integral of
/// g_{1-alpha} over the step rectangle (triangle on the diagonal cell), with
/// the diagonal doubled: c_0^n = 2 chi_0^n, c_j^n = chi_j^n.
SchemeKernel cn_l1plus_kernel(double alpha, const Mesh& mesh);

/// Equivalent differential kernel of an integral-form kernel: C = A^{(-1)} ̄* L.
SchemeKernel scheme_from_integral(double alpha, const Mesh& mesh, const TriKernel& a);

/// B = C ̄* L^{(-1)} through the closed formula b_0^n = c_0^n,
/// b_{n-j}^n = c_{n-j}^n - c_{n-j-1}^n.
TriKernel differential_to_inverse_kernel(const TriKernel& c);

struct CertificationReport {
  bool is_completely_positive = false;
  double b_diagonal_min = std::numeric_limits<double>::quiet_NaN();
  double b_offdiag_max = std::numeric_limits<double>::quiet_NaN();
  double row_sum_min = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::pair<double, bool>> resolvent_checks;
  double nu = std::numeric_limits<double>::quiet_NaN();
  double rho1 = std::numeric_limits<double>::quiet_NaN();
  /// False when the sign test and the resolvent test disagree beyond
  /// tolerance; the two are equivalent in exact arithmetic.
  bool tests_agree = true;
};

inline constexpr double kDefaultCertifyLambdas[] = {0.01, 1.0, 100.0};

CertificationReport certify(
    const TriKernel& a,
    std::span<const double> lambdas = kDefaultCertifyLambdas);
CertificationReport certify(
    const TriKernel& a, double alpha, const Mesh& mesh,
    std::span<const double> lambdas = kDefaultCertifyLambdas);
CertificationReport certify(
    const SchemeKernel& kernel,
    std::span<const double> lambdas = kDefaultCertifyLambdas);

/// Extremes over all (n, j) of c_{n-j}^n divided by the cell average of
/// g_{1-alpha}(t_n - .): (nu, rho1). Exactly (1, 1) for L1.
std::pair<double, double> estimate_nu_rho1(const SchemeKernel& kernel);

/// Whether chi_0^n > chi_1^n holds on every row of the CN L1+ kernel.
bool cn_chi_monotone(double alpha, const Mesh& mesh);
/// Empirical critical order above which cn_chi_monotone holds, by bisection.
double estimate_alpha_c(const Mesh& mesh, double tol = 1e-6);

}  // namespace fracgrid
