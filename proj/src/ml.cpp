#include "fracgrid/ml.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracgrid {

namespace {

constexpr double kSeriesZSwitch = 5.0;    // series / intermediate boundary
constexpr double kAsymZSwitch = 100.0;    // intermediate / asymptotic boundary
constexpr double kSeriesCancelLimit = 9.0;  // max |z|^{1/alpha} the series tolerates
constexpr double kExpOverflow = 709.0;

void validate(const MLParams& p) {
  if (!(p.alpha > 0.0) || !(p.alpha <= 1.0)) {
    throw std::invalid_argument("Mittag-Leffler order alpha must lie in (0, 1], got " +
                                std::to_string(p.alpha));
  }
  if (!(p.beta > 0.0)) {
    throw std::invalid_argument("Mittag-Leffler parameter beta must be positive, got " +
                                std::to_string(p.beta));
  }
}

}  // namespace

namespace ml_detail {

double sinpi(double x) {
  const double r = x - std::round(x);
  double s = std::sin(M_PI * r);
  if (static_cast<long long>(std::llround(x - r)) & 1LL) s = -s;
  return s;
}

double cospi(double x) {
  const double r = x - std::round(x);
  double c = std::cos(M_PI * r);
  if (static_cast<long long>(std::llround(x - r)) & 1LL) c = -c;
  return c;
}

double rgamma(double x) {
  if (x > 0.0) {
    if (x <= 171.0) return 1.0 / std::tgamma(x);
    return std::exp(-std::lgamma(x));  // underflows to 0 harmlessly
  }
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi, zero at the poles.
  const double s = sinpi(x);
  if (s == 0.0) return 0.0;
  if (1.0 - x <= 171.0) return s * std::tgamma(1.0 - x) / M_PI;
  const double mag = std::exp(std::lgamma(1.0 - x) + std::log(std::abs(s) / M_PI));
  return std::copysign(mag, s);
}

double series_checked(double alpha, double beta, double z, bool& converged) {
  const double abs_z = std::abs(z);
  const double log_abs_z = abs_z > 0.0 ? std::log(abs_z) : 0.0;
  // Negative arguments keep the 400-term budget (the cancellation guard
  // already restricts them); positive arguments have monotone terms and only
  // need enough of them, roughly e |z|^{1/alpha} / alpha.
  int cap = 400;
  if (z > 0.0) {
    const double root = std::exp(log_abs_z / alpha);
    cap = std::max(400, static_cast<int>(std::min(200000.0, 4.0 * root / alpha + 200.0)));
  }
  double sum = 0.0;
  double zk = 1.0;  // z^k while it stays finite
  double prev_mag = std::numeric_limits<double>::infinity();
  converged = false;
  for (int k = 0; k <= cap; ++k) {
    const double x = alpha * k + beta;
    double term;
    if (x <= 171.0 && std::isfinite(zk)) {
      term = zk / std::tgamma(x);
    } else {
      const double lt = k * log_abs_z - std::lgamma(x);
      double mag = std::exp(lt);
      term = (z < 0.0 && (k & 1)) ? -mag : mag;
    }
    sum += term;
    const double mag = std::abs(term);
    if (mag < 1e-18 * (std::abs(sum) + 1e-300) && mag <= prev_mag) {
      converged = true;
      break;
    }
    prev_mag = mag;
    zk *= z;
  }
  return sum;
}

double series(double alpha, double beta, double z) {
  bool ok = false;
  const double v = series_checked(alpha, beta, z, ok);
  if (!ok) {
    throw std::runtime_error("Mittag-Leffler series did not converge at alpha=" +
                             std::to_string(alpha) + ", z=" + std::to_string(z));
  }
  return v;
}

// Real-line form of the Hankel contour representation with delta = alpha*pi,
// epsilon -> 0, after the substitution r = u^alpha:
//   E_{alpha,beta}(z) = (1/pi) \int_0^inf u^{alpha-beta} e^{-u}
//       [u^alpha sin(pi(1-beta)) - z sin(pi(1-beta+alpha))]
//       / (u^{2alpha} - 2 u^alpha z cos(pi alpha) + z^2) du,   z < 0.
// Valid for beta < 1 + alpha; larger beta is reduced first through
//   E_{alpha,beta}(z) = (E_{alpha,beta-alpha}(z) - 1/Gamma(beta-alpha)) / z.
double integral_negative(double alpha, double beta, double z) {
  if (!(z < 0.0)) throw std::invalid_argument("integral branch needs z < 0");
  if (beta >= 1.0 + alpha - 1e-12) {
    return (integral_negative(alpha, beta - alpha, z) - rgamma(beta - alpha)) / z;
  }
  const double x = -z;
  const double s1 = sinpi(1.0 - beta);
  const double s2 = sinpi(1.0 - beta + alpha);
  const double c_a = cospi(alpha);
  const double w2 = x * x * (1.0 - c_a * c_a);  // stable denominator split
  const double p = alpha - beta + 1.0;          // > 0, keeps u -> 0 integrable

  auto f = [&](double t) -> double {
    const double half_pi = 1.5707963267948966;
    const double log_u = half_pi * std::sinh(t);
    const double u = std::exp(log_u);
    const double e1 = p * log_u - u;
    if (e1 < -745.0) return 0.0;
    const double ua = std::exp(alpha * log_u);
    const double d = (ua + x * c_a) * (ua + x * c_a) + w2;
    const double num = ua * s1 + x * s2;
    return std::exp(e1) * half_pi * std::cosh(t) * num / d;
  };

  const double t_range = 6.8;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  for (int level = 0; level <= 11; ++level) {
    const double h = 0.5 / static_cast<double>(1 << level);
    const int k_max = static_cast<int>(t_range / h);
    double s = f(0.0);
    int dead = 0;
    for (int k = 1; k <= k_max && dead < 8; ++k) {
      const double add = f(k * h) + f(-k * h);
      s += add;
      dead = std::abs(add) < 1e-17 * (std::abs(s) + 1e-300) ? dead + 1 : 0;
    }
    value = h * s;
    if (level > 2 && std::abs(value - prev) <= 1e-13 * std::abs(value) + 1e-300) break;
    prev = value;
  }
  return value / M_PI;
}

// E_{alpha,beta}(z) = -sum_{k>=1} z^{-k} / Gamma(beta - alpha k) + O(|z|^{-K-1})
// as z -> -inf; truncated at the smallest term.
double asymptotic_negative(double alpha, double beta, double z) {
  if (!(z < 0.0)) throw std::invalid_argument("asymptotic branch needs z < 0");
  const double inv = 1.0 / z;
  double sum = 0.0;
  double zk = 1.0;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 40; ++k) {
    zk *= inv;
    const double term = -zk * rgamma(beta - alpha * k);
    const double mag = std::abs(term);
    if (mag == 0.0) continue;  // pole of 1/Gamma: the term is absent, not small
    if (mag > prev_mag) break;  // divergence onset: stop at the smallest term
    sum += term;
    if (mag < 1e-17 * (std::abs(sum) + 1e-300)) break;
    prev_mag = mag;
  }
  return sum;
}

// alpha = 1, z < 0: E_{1,beta}(z) = e^z M(beta-1, beta, -z) / Gamma(beta)
// via the Kummer transformation; the transformed series has no catastrophic
// cancellation.
double kummer_alpha1(double beta, double z) {
  const double x = -z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 100000; ++k) {
    term *= (beta - 1.0 + k) * x / ((beta + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return std::exp(z) * sum * rgamma(beta);
}

}  // namespace ml_detail

double ml(const MLParams& params, double z) {
  using namespace ml_detail;
  validate(params);
  const double a = params.alpha;
  const double b = params.beta;
  if (!std::isfinite(z)) throw std::invalid_argument("Mittag-Leffler argument must be finite");
  if (z == 0.0) return rgamma(b);

  if (a == 1.0) {
    if (b == 1.0) return std::exp(z);
    if (z > 0.0 || z >= -kSeriesZSwitch) return series(1.0, b, z);
    if (z >= -40.0) return kummer_alpha1(b, z);
    return asymptotic_negative(1.0, b, z);
  }

  if (z > 0.0) {
    if (std::log(z) / a > std::log(kExpOverflow)) {
      // e^{z^{1/alpha}} dominates and overflows a double.
      return std::numeric_limits<double>::infinity();
    }
    return series(a, b, z);
  }

  const double x = -z;
  const double root = std::exp(std::log(x) / a);  // x^{1/alpha}
  if (x <= kSeriesZSwitch && root <= kSeriesCancelLimit) {
    bool ok = false;
    const double v = series_checked(a, b, z, ok);
    if (ok) return v;
    // Slowly converging small-alpha corner: the integral covers it.
  }
  if (x <= kAsymZSwitch) return integral_negative(a, b, z);
  return asymptotic_negative(a, b, z);
}

double linear_fode_exact(double alpha, double lambda_signed, double c, double v0,
                         double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("time must be nonnegative");
  const double ta = t > 0.0 ? std::pow(t, alpha) : 0.0;
  if (lambda_signed == 0.0) {
    return v0 + c * ta * ml_detail::rgamma(1.0 + alpha);
  }
  const double shift = c / lambda_signed;
  return (v0 + shift) * ml({alpha, 1.0}, lambda_signed * ta) - shift;
}

SigmaConstants estimate_sigma_constants(double alpha_step, double z_step) {
  if (!(alpha_step > 0.0) || !(z_step > 0.0)) {
    throw std::invalid_argument("sigma grid steps must be positive");
  }
  // alpha^{-1} E_{alpha,alpha}(-z) = sum_k (k+1) (-z)^k / Gamma((k+1) alpha + 1).
  // The per-alpha coefficient table keeps the dense grid cheap.
  constexpr double kAlphaLo = 0.5;
  const double kAlphaHi = 1.0 - 1e-3;
  constexpr double kZHi = 3.0;
  const int na = static_cast<int>(std::ceil((kAlphaHi - kAlphaLo) / alpha_step)) + 1;
  const int nz = static_cast<int>(std::ceil(kZHi / z_step)) + 1;
  double c1 = std::numeric_limits<double>::infinity();
  double c2 = -std::numeric_limits<double>::infinity();
  std::vector<double> coeff;
  for (int ia = 0; ia < na; ++ia) {
    const double alpha = std::min(kAlphaLo + ia * alpha_step, kAlphaHi);
    coeff.clear();
    for (int k = 0;; ++k) {
      const double g = (k + 1.0) * ml_detail::rgamma((k + 1.0) * alpha + 1.0);
      coeff.push_back(g);
      if (k > 8 && g * std::pow(kZHi, k) < 1e-19) break;
      if (k > 400) break;
    }
    for (int iz = 0; iz < nz; ++iz) {
      const double zneg = -std::min(iz * z_step, kZHi);
      double sum = 0.0;
      double zk = 1.0;
      for (double g : coeff) {
        sum += g * zk;
        zk *= zneg;
      }
      c1 = std::min(c1, sum);
      c2 = std::max(c2, sum);
    }
  }
  if (!(c1 > 0.0)) throw std::logic_error("sigma estimator produced c1 <= 0");
  const double sigma = 2.0 * c2 / c1;
  if (!(sigma > 1.0)) throw std::logic_error("sigma estimator produced sigma <= 1");
  return {c1, c2, sigma};
}

const SigmaConstants& default_sigma_constants() {
  static const SigmaConstants s = estimate_sigma_constants();
  return s;
}

namespace {

// w(t) = d/dt E_alpha(t^alpha) = t^{alpha-1} E_{alpha,alpha}(t^alpha) with
// lambda = 1 scaled out (w_lambda(t) = lambda^{1/alpha} w_1(lambda^{1/alpha} t),
// and the constraint lambda tau^alpha <= 1 maps to tau' <= 1). The argument
// t^alpha is positive, so the series has monotone terms; coefficients
// 1/Gamma(alpha k + alpha) are cached per alpha across the whole scan.
class TransitionDensity {
 public:
  explicit TransitionDensity(double alpha) : alpha_(alpha) {}

  double operator()(double t) const {
    const double z = std::pow(t, alpha_);
    // term_{k+1} = term_k * z * Gamma(alpha(k+1)) / Gamma(alpha(k+2)); the
    // ratio recurrence keeps every intermediate finite where z^k alone would
    // overflow.
    double term = ml_detail::rgamma(alpha_);
    double sum = 0.0;
    for (std::size_t k = 0; k < 400000; ++k) {
      if (k == ratio_.size()) {
        ratio_.push_back(std::exp(std::lgamma(alpha_ * (k + 1.0)) -
                                  std::lgamma(alpha_ * (k + 2.0))));
      }
      sum += term;
      if (k > 4 && term < 1e-18 * sum) break;
      term *= z * ratio_[k];
    }
    return std::pow(t, alpha_ - 1.0) * sum;
  }

 private:
  double alpha_;
  mutable std::vector<double> ratio_;
};

}  // namespace

double estimate_mu1(const Mu1Grid& grid) {
  if (grid.alpha_count < 1 || grid.s_count < 2 || grid.tau_count < 1 ||
      grid.transition_scan < 16) {
    throw std::invalid_argument("mu1 grid is degenerate");
  }
  if (!(grid.alpha_min > 0.0) || !(grid.alpha_max < 1.0) ||
      !(grid.alpha_min <= grid.alpha_max)) {
    throw std::invalid_argument("mu1 alpha range must sit inside (0, 1)");
  }
  double mu1 = std::numeric_limits<double>::infinity();
  for (int ia = 0; ia < grid.alpha_count; ++ia) {
    const double alpha =
        grid.alpha_count == 1
            ? grid.alpha_min
            : grid.alpha_min + (grid.alpha_max - grid.alpha_min) * ia /
                                   (grid.alpha_count - 1);
    const TransitionDensity w(alpha);
    // Bracket t_* on a log grid; w decreases on (0, t_*) and increases after.
    // As alpha -> 1 the minimum migrates to t of order (1 - alpha).
    const double lo = std::min(1e-3, 1e-2 * (1.0 - alpha));
    const double hi = grid.scan_t_max;
    int arg = -1;
    double best = std::numeric_limits<double>::infinity();
    std::vector<double> ts(static_cast<std::size_t>(grid.transition_scan));
    for (int i = 0; i < grid.transition_scan; ++i) {
      const double t =
          lo * std::pow(hi / lo, static_cast<double>(i) / (grid.transition_scan - 1));
      ts[static_cast<std::size_t>(i)] = t;
      const double wt = w(t);
      if (wt < best) {
        best = wt;
        arg = i;
      }
    }
    if (arg <= 0 || arg >= grid.transition_scan - 1) {
      throw std::runtime_error(
          "mu1 estimator: grid too coarse to bracket the transition point t_* at "
          "alpha=" +
          std::to_string(alpha));
    }
    // Golden-section refinement inside the bracket.
    double a = ts[static_cast<std::size_t>(arg - 1)];
    double b = ts[static_cast<std::size_t>(arg + 1)];
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = w(x1), f2 = w(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-12 * (1.0 + b); ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = w(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = w(x2);
      }
    }
    const double t_star = 0.5 * (a + b);

    const double s_hi = std::min(t_star + grid.s_span, grid.scan_t_max);
    for (int is = 0; is < grid.s_count; ++is) {
      const double s = t_star + (s_hi - t_star) * is / (grid.s_count - 1);
      const double ws = w(s);
      for (int itau = 1; itau <= grid.tau_count; ++itau) {
        const double tau = static_cast<double>(itau) / grid.tau_count;  // <= 1
        const double ratio = ws / w(s + tau);
        mu1 = std::min(mu1, ratio);
      }
    }
  }
  if (!(mu1 > 0.0) || !(mu1 < 1.0)) {
    throw std::logic_error("mu1 estimate " + std::to_string(mu1) +
                           " escaped (0, 1)");
  }
  return mu1;
}

double default_mu1() {
  static const double m = estimate_mu1();
  return m;
}

}  // namespace fracgrid
