#include "fracgrid/gronwall.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "fracgrid/ml.hpp"

namespace fracgrid {

namespace {

std::string fmt(double v) { return std::to_string(v); }

void require_positive_lambda(const GronwallEnvelope& env) {
  if (!(env.lambda > 0.0)) {
    throw HypothesisError("envelope requires lambda > 0, got lambda = " +
                          fmt(env.lambda));
  }
}

double max_lambda_tau_alpha(const GronwallEnvelope& env) {
  double m = 0.0;
  for (int n = 1; n <= env.mesh.segments(); ++n) {
    m = std::max(m, env.lambda * std::pow(env.mesh.tau(n), env.alpha));
  }
  return m;
}

}  // namespace

void validate(const GronwallEnvelope& env) {
  if (!(env.alpha > 0.0) || !(env.alpha < 1.0)) {
    throw HypothesisError("envelope requires alpha in (0, 1), got " + fmt(env.alpha));
  }
  switch (env.variant) {
    case EnvelopeVariant::UniformBound:
      require_positive_lambda(env);
      if (!(env.v0 <= env.c / env.lambda)) {
        throw HypothesisError("UniformBound requires v0 <= c/lambda (v0 = " +
                              fmt(env.v0) + ", c/lambda = " +
                              fmt(env.c / env.lambda) + ")");
      }
      break;
    case EnvelopeVariant::DecayLower:
    case EnvelopeVariant::DecayUpperBasic:
      require_positive_lambda(env);
      if (!(env.v0 > env.c / env.lambda)) {
        throw HypothesisError("decay envelopes require v0 > c/lambda (v0 = " +
                              fmt(env.v0) + ", c/lambda = " +
                              fmt(env.c / env.lambda) + ")");
      }
      break;
    case EnvelopeVariant::DecayUpperStepRestricted: {
      require_positive_lambda(env);
      if (!(env.v0 > env.c / env.lambda)) {
        throw HypothesisError("decay envelopes require v0 > c/lambda (v0 = " +
                              fmt(env.v0) + ", c/lambda = " +
                              fmt(env.c / env.lambda) + ")");
      }
      const double worst = max_lambda_tau_alpha(env);
      if (!(worst <= 1.0 + 1e-12)) {
        throw HypothesisError(
            "step-restricted decay bound requires lambda tau_n^alpha <= 1, "
            "worst step gives " +
            fmt(worst));
      }
      break;
    }
    case EnvelopeVariant::GrowingLinear: {
      require_positive_lambda(env);
      const double cap =
          std::min(env.mu, env.nu / std::tgamma(2.0 - env.alpha));
      const double worst = max_lambda_tau_alpha(env);
      if (!(worst < cap)) {
        throw HypothesisError(
            "growing bound requires lambda tau_n^alpha < min(mu, "
            "nu/Gamma(2-alpha)) = " +
            fmt(cap) + ", worst step gives " + fmt(worst));
      }
      break;
    }
    case EnvelopeVariant::LambdaZero:
      if (env.lambda != 0.0) {
        throw HypothesisError("LambdaZero envelope requires lambda = 0");
      }
      break;
  }
}

double envelope_value(const GronwallEnvelope& env, int n) {
  validate(env);
  const double t = env.mesh.t(n);
  const double ta = t > 0.0 ? std::pow(t, env.alpha) : 0.0;
  switch (env.variant) {
    case EnvelopeVariant::UniformBound:
    case EnvelopeVariant::DecayLower: {
      const double shift = env.c / env.lambda;
      return (env.v0 - shift) * ml(env.alpha, -env.lambda * ta / env.nu) + shift;
    }
    case EnvelopeVariant::DecayUpperBasic: {
      const double shift = env.c / env.lambda;
      const double rho = env.rho1 / (1.0 - env.alpha);
      return (env.v0 - shift) * ml(env.alpha, -env.lambda * ta / rho) + shift;
    }
    case EnvelopeVariant::DecayUpperStepRestricted: {
      const double shift = env.c / env.lambda;
      const double rho = env.rho1 * std::min(1.0 / (1.0 - env.alpha), env.sigma);
      return (env.v0 - shift) * ml(env.alpha, -env.lambda * ta / rho) + shift;
    }
    case EnvelopeVariant::GrowingLinear: {
      const double shift = env.c / env.lambda;
      return (env.v0 + shift) * ml(env.alpha, env.lambda * ta / env.mu) - shift;
    }
    case EnvelopeVariant::LambdaZero:
      return env.v0 + env.c * ta / (env.nu * std::tgamma(1.0 + env.alpha));
  }
  throw std::logic_error("unreachable envelope variant");
}

VerifyReport verify_trajectory(const GronwallEnvelope& env,
                               std::span<const double> trajectory,
                               BoundDirection direction, double rel_tol) {
  validate(env);
  if (static_cast<int>(trajectory.size()) != env.mesh.segments() + 1) {
    throw std::invalid_argument("trajectory length does not match the mesh");
  }
  VerifyReport report;
  report.max_violation = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < static_cast<int>(trajectory.size()); ++n) {
    const double bound = envelope_value(env, n);
    const double v = trajectory[static_cast<std::size_t>(n)];
    const double violation = direction == BoundDirection::Upper ? v - bound : bound - v;
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_index = n;
    }
    if (violation > rel_tol * (1.0 + std::abs(bound))) report.pass = false;
  }
  return report;
}

double dalpha_of_power(const SchemeKernel& kernel, int n) {
  if (n < 1 || n > kernel.mesh.segments()) {
    throw std::invalid_argument("dalpha_of_power index out of range");
  }
  const double rg = 1.0 / std::tgamma(1.0 + kernel.alpha);
  double s = 0.0;
  double prev = 0.0;  // t_0 = 0
  for (int j = 1; j <= n; ++j) {
    const double cur = std::pow(kernel.mesh.t(j), kernel.alpha) * rg;
    s += kernel.C.coef(n, j) * (cur - prev);
    prev = cur;
  }
  return s;
}

double decay_rate_fit(std::span<const double> trajectory, const Mesh& mesh,
                      double alpha) {
  if (static_cast<int>(trajectory.size()) != mesh.segments() + 1) {
    throw std::invalid_argument("trajectory length does not match the mesh");
  }
  (void)alpha;  // the contract slope; kept in the signature for reporting callers
  const double t_cut = mesh.total_time() / 10.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = 1; n <= mesh.segments(); ++n) {
    const double t = mesh.t(n);
    const double v = trajectory[static_cast<std::size_t>(n)];
    if (t < t_cut || !(v > 0.0)) continue;
    const double x = std::log(t);
    const double y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 5) {
    throw std::runtime_error("decay fit needs at least 5 positive tail points, got " +
                             std::to_string(count));
  }
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::runtime_error("decay fit is degenerate");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace fracgrid
