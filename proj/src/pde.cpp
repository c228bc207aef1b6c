#include "fracgrid/pde.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracgrid/gronwall.hpp"
#include "fracgrid/ml.hpp"
#include "fracgrid/schemes.hpp"
#include "fracgrid/solver.hpp"

namespace fracgrid {

namespace {

using cplx = std::complex<double>;

/// Thomas algorithm for a constant-coefficient SPD tridiagonal system
/// (diag d, off-diagonals o); rhs is overwritten with the solution.
void solve_tridiagonal(double d, double o, std::vector<double>& rhs) {
  const int m = static_cast<int>(rhs.size());
  std::vector<double> c_star(static_cast<std::size_t>(m));
  double denom = d;
  c_star[0] = o / denom;
  rhs[0] /= denom;
  for (int i = 1; i < m; ++i) {
    denom = d - o * c_star[static_cast<std::size_t>(i - 1)];
    c_star[static_cast<std::size_t>(i)] = o / denom;
    rhs[static_cast<std::size_t>(i)] =
        (rhs[static_cast<std::size_t>(i)] - o * rhs[static_cast<std::size_t>(i - 1)]) /
        denom;
  }
  for (int i = m - 2; i >= 0; --i) {
    rhs[static_cast<std::size_t>(i)] -=
        c_star[static_cast<std::size_t>(i)] * rhs[static_cast<std::size_t>(i + 1)];
  }
}

int interior_count(const SubdiffusionConfig& cfg) {
  const double ratio = cfg.X / cfg.h;
  const int m = static_cast<int>(std::lround(ratio));
  if (m < 2 || std::abs(ratio - m) > 1e-9 * m) {
    throw std::invalid_argument("spatial step h must divide X");
  }
  return m - 1;  // interior points
}

double l2_norm(std::span<const double> interior, double weight) {
  double s = 0.0;
  for (double v : interior) s += v * v;
  return std::sqrt(s * weight);
}

// Radix-2 in-place FFT; naive DFT fallback keeps any even M valid.
void fft(std::vector<cplx>& a, bool inverse) {
  const std::size_t n = a.size();
  if ((n & (n - 1)) != 0) {
    std::vector<cplx> out(n, cplx{0.0, 0.0});
    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        const double ang = sign * 2.0 * std::numbers::pi *
                           static_cast<double>(k * j % n) / static_cast<double>(n);
        out[k] += a[j] * cplx{std::cos(ang), std::sin(ang)};
      }
    }
    a = std::move(out);
  } else {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1;
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
      const cplx w_len{std::cos(ang), std::sin(ang)};
      for (std::size_t i = 0; i < n; i += len) {
        cplx w{1.0, 0.0};
        for (std::size_t j = 0; j < len / 2; ++j) {
          const cplx u = a[i + j];
          const cplx v = a[i + j + len / 2] * w;
          a[i + j] = u + v;
          a[i + j + len / 2] = u - v;
          w *= w_len;
        }
      }
    }
  }
  if (inverse) {
    for (auto& v : a) v /= static_cast<double>(n);
  }
}

int wavenumber(std::size_t bin, int m) {
  const int b = static_cast<int>(bin);
  return b <= m / 2 ? b : b - m;
}

/// u -> d^2u/dx^2 through the spectral multiplier -q^2.
std::vector<double> apply_d2(std::span<const double> u) {
  const int m = static_cast<int>(u.size());
  std::vector<cplx> hat(u.begin(), u.end());
  fft(hat, false);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    const double q = wavenumber(k, m);
    hat[k] *= -q * q;
  }
  fft(hat, true);
  std::vector<double> out(u.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = hat[k].real();
  return out;
}

/// Fourier-diagonal preconditioner application: divide mode q by
/// c0 + kappa2 q^2.
std::vector<double> precondition(std::span<const double> r, double c0, double kappa2) {
  const int m = static_cast<int>(r.size());
  std::vector<cplx> hat(r.begin(), r.end());
  fft(hat, false);
  for (std::size_t k = 0; k < hat.size(); ++k) {
    const double q = wavenumber(k, m);
    hat[k] /= c0 + kappa2 * q * q;
  }
  fft(hat, true);
  std::vector<double> out(r.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = hat[k].real();
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double smallest_laplacian_eigenvalue(double X, double h) {
  const double s = std::sin(std::numbers::pi * h / (2.0 * X));
  return 4.0 / (h * h) * s * s;
}

SubdiffusionResult solve_subdiffusion(const SubdiffusionConfig& cfg) {
  const int mi = interior_count(cfg);
  const std::size_t width = static_cast<std::size_t>(mi) + 2;
  if (cfg.f.size() != width || cfg.u0.size() != width) {
    throw std::invalid_argument("subdiffusion samples must have X/h + 1 entries");
  }
  if (cfg.u0.front() != 0.0 || cfg.u0.back() != 0.0) {
    throw std::invalid_argument("subdiffusion initial data must vanish on the boundary");
  }
  const SchemeKernel kernel = l1_kernel(cfg.alpha, cfg.mesh);
  const double inv_h2 = 1.0 / (cfg.h * cfg.h);
  const int N = cfg.mesh.segments();

  SubdiffusionResult result;
  result.kappa = smallest_laplacian_eigenvalue(cfg.X, cfg.h);

  // Steady state: -Delta_h u = f on the interior.
  result.steady.assign(width, 0.0);
  {
    std::vector<double> rhs(cfg.f.begin() + 1, cfg.f.end() - 1);
    solve_tridiagonal(2.0 * inv_h2, -inv_h2, rhs);
    for (int i = 0; i < mi; ++i) result.steady[static_cast<std::size_t>(i + 1)] = rhs[static_cast<std::size_t>(i)];
  }

  result.u.reserve(static_cast<std::size_t>(N) + 1);
  result.u.push_back(cfg.u0);
  std::vector<double> rhs(static_cast<std::size_t>(mi));
  for (int n = 1; n <= N; ++n) {
    const double c0 = kernel.C.diagonal(n);
    const auto& prev = result.u.back();
    for (int i = 1; i <= mi; ++i) {
      double h_sum = 0.0;
      for (int j = 1; j < n; ++j) {
        h_sum += kernel.C.coef(n, j) *
                 (result.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -
                  result.u[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i)]);
      }
      rhs[static_cast<std::size_t>(i - 1)] =
          c0 * prev[static_cast<std::size_t>(i)] - h_sum + cfg.f[static_cast<std::size_t>(i)];
    }
    solve_tridiagonal(c0 + 2.0 * inv_h2, -inv_h2, rhs);
    std::vector<double> next(width, 0.0);
    for (int i = 0; i < mi; ++i) next[static_cast<std::size_t>(i + 1)] = rhs[static_cast<std::size_t>(i)];
    result.u.push_back(std::move(next));
  }

  result.norm.reserve(result.u.size());
  result.dist_to_steady.reserve(result.u.size());
  std::vector<double> diff(static_cast<std::size_t>(mi));
  for (const auto& layer : result.u) {
    result.norm.push_back(
        l2_norm({layer.data() + 1, static_cast<std::size_t>(mi)}, cfg.h));
    for (int i = 1; i <= mi; ++i) {
      diff[static_cast<std::size_t>(i - 1)] =
          layer[static_cast<std::size_t>(i)] - result.steady[static_cast<std::size_t>(i)];
    }
    result.dist_to_steady.push_back(l2_norm(diff, cfg.h));
  }
  return result;
}

AllenCahnResult solve_allen_cahn(const AllenCahnConfig& cfg) {
  const int m = cfg.modes;
  if (m < 4 || m % 2 != 0) {
    throw std::invalid_argument("Allen-Cahn needs an even number of modes >= 4");
  }
  if (!(cfg.kappa2 > 1.0)) {
    throw std::invalid_argument("Allen-Cahn requires kappa^2 > 1");
  }
  if (cfg.u0.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("Allen-Cahn initial data must have M samples");
  }
  // Oddness on x_k = -pi + 2 pi k / M: u_0 = u_{M/2} = 0, u_{M-k} = -u_k.
  double scale = 0.0;
  for (double v : cfg.u0) scale = std::max(scale, std::abs(v));
  const double odd_tol = 1e-12 * (1.0 + scale);
  if (std::abs(cfg.u0[0]) > odd_tol ||
      std::abs(cfg.u0[static_cast<std::size_t>(m / 2)]) > odd_tol) {
    throw std::invalid_argument("Allen-Cahn initial data must be odd");
  }
  for (int k = 1; k < m / 2; ++k) {
    if (std::abs(cfg.u0[static_cast<std::size_t>(k)] +
                 cfg.u0[static_cast<std::size_t>(m - k)]) > odd_tol) {
      throw std::invalid_argument("Allen-Cahn initial data must be odd");
    }
  }

  const SchemeKernel kernel = l1_kernel(cfg.alpha, cfg.mesh);
  const int N = cfg.mesh.segments();
  for (int n = 1; n <= N; ++n) {
    if (!(kernel.C.diagonal(n) > 1.0)) {
      throw SolvabilityError(
          "Allen-Cahn step " + std::to_string(n) +
          " violates c_0^n > 1 (the Lipschitz bound of u - u^3 near u = 0)");
    }
  }

  const double weight = 2.0 * std::numbers::pi / m;
  AllenCahnResult result;
  result.u.reserve(static_cast<std::size_t>(N) + 1);
  result.u.push_back(cfg.u0);

  std::vector<double> g(static_cast<std::size_t>(m)), r(g), z(g), p(g), jp(g);
  for (int n = 1; n <= N; ++n) {
    const double c0 = kernel.C.diagonal(n);
    const auto& prev = result.u.back();
    std::vector<double> h_sum(static_cast<std::size_t>(m), 0.0);
    for (int j = 1; j < n; ++j) {
      const double w = kernel.C.coef(n, j);
      for (int k = 0; k < m; ++k) {
        h_sum[static_cast<std::size_t>(k)] +=
            w * (result.u[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                 result.u[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k)]);
      }
    }

    std::vector<double> v = prev;  // Newton iterate
    auto residual = [&](const std::vector<double>& w_vec, std::vector<double>& out) {
      const std::vector<double> d2 = apply_d2(w_vec);
      for (int k = 0; k < m; ++k) {
        const double wk = w_vec[static_cast<std::size_t>(k)];
        out[static_cast<std::size_t>(k)] =
            c0 * (wk - prev[static_cast<std::size_t>(k)]) +
            h_sum[static_cast<std::size_t>(k)] -
            (cfg.kappa2 * d2[static_cast<std::size_t>(k)] + wk - wk * wk * wk);
      }
    };
    auto apply_jacobian = [&](const std::vector<double>& x, std::vector<double>& out) {
      const std::vector<double> d2 = apply_d2(x);
      for (int k = 0; k < m; ++k) {
        out[static_cast<std::size_t>(k)] =
            c0 * x[static_cast<std::size_t>(k)] -
            cfg.kappa2 * d2[static_cast<std::size_t>(k)] -
            (1.0 - 3.0 * v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)]) *
                x[static_cast<std::size_t>(k)];
      }
    };

    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      residual(v, g);
      double g_inf = 0.0, v_inf = 0.0;
      for (int k = 0; k < m; ++k) {
        g_inf = std::max(g_inf, std::abs(g[static_cast<std::size_t>(k)]));
        v_inf = std::max(v_inf, std::abs(v[static_cast<std::size_t>(k)]));
      }
      if (g_inf <= 1e-12 * (1.0 + v_inf)) {
        converged = true;
        break;
      }
      // PCG on J dv = -g with the Fourier-diagonal preconditioner.
      std::vector<double> dv(static_cast<std::size_t>(m), 0.0);
      for (int k = 0; k < m; ++k) r[static_cast<std::size_t>(k)] = -g[static_cast<std::size_t>(k)];
      z = precondition(r, c0, cfg.kappa2);
      p = z;
      double rz = dot(r, z);
      const double r0 = std::sqrt(dot(r, r));
      for (int cg = 0; cg < 200 && r0 > 0.0; ++cg) {
        apply_jacobian(p, jp);
        const double alpha_cg = rz / dot(p, jp);
        for (int k = 0; k < m; ++k) {
          dv[static_cast<std::size_t>(k)] += alpha_cg * p[static_cast<std::size_t>(k)];
          r[static_cast<std::size_t>(k)] -= alpha_cg * jp[static_cast<std::size_t>(k)];
        }
        if (std::sqrt(dot(r, r)) <= 1e-13 * r0) break;
        z = precondition(r, c0, cfg.kappa2);
        const double rz_next = dot(r, z);
        const double beta_cg = rz_next / rz;
        rz = rz_next;
        for (int k = 0; k < m; ++k) {
          p[static_cast<std::size_t>(k)] =
              z[static_cast<std::size_t>(k)] + beta_cg * p[static_cast<std::size_t>(k)];
        }
      }
      for (int k = 0; k < m; ++k) v[static_cast<std::size_t>(k)] += dv[static_cast<std::size_t>(k)];
      // The odd subspace is invariant for the discrete flow; projecting the
      // iterate removes roundoff asymmetry before it can accumulate.
      v[0] = 0.0;
      v[static_cast<std::size_t>(m / 2)] = 0.0;
      for (int k = 1; k < m / 2; ++k) {
        const double odd = 0.5 * (v[static_cast<std::size_t>(k)] -
                                  v[static_cast<std::size_t>(m - k)]);
        v[static_cast<std::size_t>(k)] = odd;
        v[static_cast<std::size_t>(m - k)] = -odd;
      }
    }
    if (!converged) {
      double g_inf = 0.0;
      for (double x : g) g_inf = std::max(g_inf, std::abs(x));
      throw NonConvergenceError(g_inf, n);
    }
    result.u.push_back(v);
  }

  result.norm.reserve(result.u.size());
  result.zero_mode.reserve(result.u.size());
  for (const auto& layer : result.u) {
    result.norm.push_back(l2_norm(layer, weight));
    double mean = 0.0;
    for (double x : layer) mean += x;
    result.zero_mode.push_back(std::abs(mean / m));
  }
  return result;
}

std::vector<ConvergenceRow> truncation_and_error_study(const StudyConfig& cfg) {
  if (cfg.levels.empty()) throw std::invalid_argument("study needs refinement levels");
  std::vector<ConvergenceRow> rows;
  const double lambda_cont =
      std::numbers::pi * std::numbers::pi / (cfg.X * cfg.X);

  auto run_level = [&](int level) -> ConvergenceRow {
    const int m = cfg.mode == RefineMode::Temporal ? cfg.fixed_m : level;
    const int steps = cfg.mode == RefineMode::Temporal ? level : cfg.fixed_steps;
    const double h = cfg.X / m;
    SubdiffusionConfig sub;
    sub.alpha = cfg.alpha;
    sub.X = cfg.X;
    sub.h = h;
    sub.mesh = cfg.grading_r == 1.0 ? uniform_mesh(cfg.T, steps)
                                    : graded_mesh(cfg.T, steps, cfg.grading_r);
    sub.f.assign(static_cast<std::size_t>(m) + 1, 0.0);
    sub.u0.resize(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
      sub.u0[static_cast<std::size_t>(i)] =
          std::sin(std::numbers::pi * i * h / cfg.X);
    }
    sub.u0.front() = 0.0;
    sub.u0.back() = 0.0;
    const SubdiffusionResult res = solve_subdiffusion(sub);
    // Reference amplitude: semidiscrete (same kappa_h) for temporal studies,
    // continuous for spatial ones.
    const double lambda_ref =
        cfg.mode == RefineMode::Temporal ? res.kappa : lambda_cont;
    double err = 0.0;
    const int n_begin = cfg.error_at_final_time ? sub.mesh.segments() : 0;
    for (int n = n_begin; n <= sub.mesh.segments(); ++n) {
      const double amp =
          ml(cfg.alpha, -lambda_ref * std::pow(sub.mesh.t(n), cfg.alpha));
      // Eigenmode reduction: || u_n - amp * u_0 || = | v_n - amp | * ||u_0||.
      double diff = 0.0;
      for (std::size_t i = 1; i < sub.u0.size() - 1; ++i) {
        const double d = res.u[static_cast<std::size_t>(n)][i] - amp * sub.u0[i];
        diff += d * d;
      }
      err = std::max(err, std::sqrt(diff * h));
    }
    ConvergenceRow row;
    row.level = level;
    row.spacing = cfg.mode == RefineMode::Temporal ? sub.mesh.max_step() : h;
    row.error = err;
    row.order = std::numeric_limits<double>::quiet_NaN();
    return row;
  };

  for (int level : cfg.levels) rows.push_back(run_level(level));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i - 1].spacing / rows[i].spacing;
    if (ratio > 1.0 && rows[i].error > 0.0) {
      rows[i].order = std::log(rows[i - 1].error / rows[i].error) / std::log(ratio);
    }
  }
  return rows;
}

DecayReport decay_report(std::span<const double> values, const Mesh& mesh,
                         double alpha, double kappa) {
  DecayReport report;
  report.fitted_rate = decay_rate_fit(values, mesh, alpha);
  report.step_condition_ok = true;
  for (int n = 1; n <= mesh.segments(); ++n) {
    if (kappa * std::pow(mesh.tau(n), alpha) > 1.0 + 1e-12) {
      report.step_condition_ok = false;
      break;
    }
  }
  if (report.step_condition_ok) {
    // Sigma envelope: values_n <= values_0 E_alpha(-kappa t_n^alpha / sigma).
    const double sigma = default_sigma_constants().sigma;
    report.envelope_checked = true;
    report.envelope_pass = true;
    report.max_violation = -std::numeric_limits<double>::infinity();
    for (int n = 0; n <= mesh.segments(); ++n) {
      const double bound =
          values[0] * ml(alpha, -kappa * std::pow(mesh.t(n), alpha) / sigma);
      const double violation = values[static_cast<std::size_t>(n)] - bound;
      report.max_violation = std::max(report.max_violation, violation);
      if (violation > 1e-9 * (1.0 + std::abs(bound))) report.envelope_pass = false;
    }
  }
  return report;
}

}  // namespace fracgrid
