#pragma once

#include <span>
#include <stdexcept>

#include "fracgrid/mesh.hpp"
#include "fracgrid/schemes.hpp"

namespace fracgrid {

/// Which discrete Gronwall bound the envelope evaluates:
///   UniformBound            (v0 - c/l) E_a(-l t^a / nu) + c/l,  v0 <= c/l
///   DecayLower              same formula as a lower bound,      v0 >  c/l
///   DecayUpperBasic         rho = rho1 / (1 - alpha)
///   DecayUpperStepRestrictedrho = rho1 min(1/(1-alpha), sigma), needs l tau^a <= 1
///   GrowingLinear           (v0 + c/l) E_a(l t^a / mu) - c/l,   needs
///                           l tau^a < min(mu, nu/Gamma(2-alpha))
///   LambdaZero              v0 + c t^a / (nu Gamma(1+alpha))
enum class EnvelopeVariant {
  UniformBound,
  DecayLower,
  DecayUpperBasic,
  DecayUpperStepRestricted,
  GrowingLinear,
  LambdaZero,
};

enum class BoundDirection { Upper, Lower };

struct GronwallEnvelope {
  EnvelopeVariant variant;
  double alpha;
  double lambda = 0.0;
  double c = 0.0;
  double v0 = 0.0;
  double nu = 1.0;
  double rho1 = 1.0;
  double sigma = 2.0;
  double mu = 1.0;
  Mesh mesh;
};

class HypothesisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Throws HypothesisError naming the violated inequality.
void validate(const GronwallEnvelope& env);

double envelope_value(const GronwallEnvelope& env, int n);

struct VerifyReport {
  bool pass = true;
  double max_violation = 0.0;  // signed: positive means the bound is broken
  int worst_index = -1;
};

/// Max over n of v_n - envelope_n for Upper (reversed for Lower); passes when
/// every violation stays below rel_tol * (1 + |envelope_n|). Violations are
/// data, not errors.
VerifyReport verify_trajectory(const GronwallEnvelope& env,
                               std::span<const double> trajectory,
                               BoundDirection direction, double rel_tol = 1e-9);

/// D_tau^alpha applied to t_j^alpha / Gamma(1+alpha), evaluated at step n;
/// at least nu for any kernel satisfying the lower comparability assumption.
double dalpha_of_power(const SchemeKernel& kernel, int n);

/// Least-squares slope of log v against log t over the final decade of the
/// mesh; close to -alpha for Mittag-Leffler tails.
double decay_rate_fit(std::span<const double> trajectory, const Mesh& mesh,
                      double alpha);

}  // namespace fracgrid
