#pragma once

namespace fracgrid {

/// Parameter pair for E_{alpha,beta}. Valid range: 0 < alpha <= 1, beta > 0.
struct MLParams {
  double alpha;
  double beta = 1.0;
};

/// Mittag-Leffler function E_{alpha,beta}(z) for real z.
///
/// Dispatch: power series near the origin, a real-line integral form of the
/// Hankel contour representation on the intermediate negative band, and the
/// algebraic asymptotic expansion for z < -100. For positive arguments the
/// series has no cancellation and is used until e^{z^{1/alpha}} overflows.
/// Relative accuracy target 1e-10 on z in [-1e6, 50].
double ml(const MLParams& params, double z);
inline double ml(double alpha, double z) { return ml({alpha, 1.0}, z); }

/// Exact solution of D_c^alpha v = lambda_signed v + c, v(0) = v0, at time t:
/// (v0 + c/lambda) E_alpha(lambda t^alpha) - c/lambda. The lambda = 0 branch
/// returns v0 + c t^alpha / Gamma(1+alpha).
double linear_fode_exact(double alpha, double lambda_signed, double c, double v0,
                         double t);

/// Extremes of alpha^{-1} E_{alpha,alpha}(-z) over alpha in [1/2, 1-1e-3],
/// z in [0, 3], and sigma = 2 c2 / c1 > 1.
struct SigmaConstants {
  double c1;
  double c2;
  double sigma;
};
SigmaConstants estimate_sigma_constants(double alpha_step = 1e-3,
                                        double z_step = 1e-3);
const SigmaConstants& default_sigma_constants();

/// Grid for the mu_1 estimator: w(t) = d/dt E_alpha(lambda t^alpha) with
/// lambda > 0 scaled out, the transition point t_* located by the sign change
/// of w', and the ratio w(s)/w(s+tau') scanned over s >= t_*, tau'^alpha <= 1.
struct Mu1Grid {
  double alpha_min = 0.25;
  double alpha_max = 0.999;
  int alpha_count = 24;
  int transition_scan = 4000;  // log-spaced samples used to bracket t_*
  double scan_t_max = 500.0;
  int s_count = 600;
  double s_span = 40.0;
  int tau_count = 4;
};
double estimate_mu1(const Mu1Grid& grid = {});
double default_mu1();

namespace ml_detail {
// Branch internals, exposed for the cross-validation tests.
double series(double alpha, double beta, double z);
double series_checked(double alpha, double beta, double z, bool& converged);
double integral_negative(double alpha, double beta, double z);
double asymptotic_negative(double alpha, double beta, double z);
double rgamma(double x);  // 1/Gamma(x); exactly zero at the poles
double sinpi(double x);
double cospi(double x);
}  // namespace ml_detail

}  // namespace fracgrid
