#include "fracgrid/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>
#include <vector>

#include "fracgrid/gronwall.hpp"
#include "fracgrid/io.hpp"
#include "fracgrid/mesh.hpp"
#include "fracgrid/ml.hpp"
#include "fracgrid/pde.hpp"
#include "fracgrid/schemes.hpp"
#include "fracgrid/solver.hpp"

namespace fracgrid::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

int thread_budget() {
  if (const char* env = std::getenv("FRACGRID_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct MeshFlags {
  std::string mesh_file;
  std::vector<double> graded;   // T N r
  std::vector<double> uniform;  // T N
  std::vector<double> random;   // T N ratio seed

  void attach(CLI::App* cmd) {
    auto* file = cmd->add_option("--mesh-file", mesh_file, "mesh file, one time per line");
    auto* g = cmd->add_option("--graded", graded, "graded mesh T N r")->expected(3);
    auto* u = cmd->add_option("--uniform", uniform, "uniform mesh T N")->expected(2);
    auto* r = cmd->add_option("--random", random, "random mesh T N ratio_bound seed")
                  ->expected(4);
    file->excludes(g)->excludes(u)->excludes(r);
    g->excludes(u)->excludes(r);
    u->excludes(r);
  }

  Mesh build() const {
    if (!mesh_file.empty()) return read_mesh_file(mesh_file);
    if (!graded.empty()) {
      return graded_mesh(graded[0], static_cast<int>(graded[1]), graded[2]);
    }
    if (!uniform.empty()) return uniform_mesh(uniform[0], static_cast<int>(uniform[1]));
    if (!random.empty()) {
      return random_mesh(random[0], static_cast<int>(random[1]), random[2],
                         static_cast<unsigned long long>(random[3]));
    }
    throw CLI::ValidationError("mesh", "one mesh source is required");
  }
};

SchemeKernel build_scheme(const std::string& name, double alpha, const Mesh& mesh) {
  if (name == "l1") return l1_kernel(alpha, mesh);
  if (name == "integral") {
    return scheme_from_integral(alpha, mesh, integral_form_kernel(alpha, mesh));
  }
  if (name == "cn") return cn_l1plus_kernel(alpha, mesh);
  throw CLI::ValidationError("--scheme", "unknown scheme " + name);
}

void print_certification(std::ostream& out, const CertificationReport& report) {
  out << "completely_positive: " << (report.is_completely_positive ? "true" : "false")
      << '\n'
      << "b_diagonal_min: " << fmt17(report.b_diagonal_min) << '\n'
      << "b_offdiag_max: " << fmt17(report.b_offdiag_max) << '\n'
      << "row_sum_min: " << fmt17(report.row_sum_min) << '\n';
  for (const auto& [lambda, pass] : report.resolvent_checks) {
    out << "resolvent_check lambda=" << fmt17(lambda) << ": "
        << (pass ? "pass" : "fail") << '\n';
  }
  out << "nu: " << fmt17(report.nu) << '\n'
      << "rho1: " << fmt17(report.rho1) << '\n'
      << "tests_agree: " << (report.tests_agree ? "true" : "false") << '\n';
}

int cmd_certify(const std::string& kernel_file, const std::string& scheme,
                double alpha, const MeshFlags& mesh_flags,
                const std::vector<double>& lambdas, const std::string& out_path) {
  const Mesh mesh = mesh_flags.build();
  std::span<const double> probes =
      lambdas.empty() ? std::span<const double>(kDefaultCertifyLambdas)
                      : std::span<const double>(lambdas);
  CertificationReport report;
  if (!kernel_file.empty()) {
    report = certify(read_kernel_csv_file(kernel_file), alpha, mesh, probes);
  } else {
    report = certify(build_scheme(scheme, alpha, mesh), probes);
  }
  print_certification(std::cout, report);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open report file for writing: " + out_path);
    print_certification(out, report);
  }
  return report.is_completely_positive && report.tests_agree ? 0 : 1;
}

FodeProblem build_rhs(const std::string& rhs, double u0, double theta,
                      const std::string& variant_name) {
  const ThetaVariant variant = variant_name == "point" ? ThetaVariant::FAtComboPoint
                                                       : ThetaVariant::ConvexComboOfF;
  if (rhs.rfind("affine:", 0) == 0) {
    std::stringstream ss(rhs.substr(7));
    std::string beta_s, c_s;
    if (!std::getline(ss, beta_s, ',') || !std::getline(ss, c_s, ',')) {
      throw CLI::ValidationError("--rhs", "affine form is affine:beta,c");
    }
    return affine_problem(std::stod(beta_s), std::stod(c_s), u0, theta, variant);
  }
  FodeProblem p;
  p.u0 = u0;
  p.theta = theta;
  p.variant = variant;
  if (rhs == "zero") {
    p.f = [](double, double) { return 0.0; };
    p.lipschitz_bound = 0.0;
  } else if (rhs == "cubic") {
    p.f = [](double, double u) { return u - u * u * u; };
    p.lipschitz_bound = 1.0;  // near the decaying branch |u| <= 1
  } else {
    throw CLI::ValidationError("--rhs", "expected affine:beta,c | zero | cubic");
  }
  return p;
}

int cmd_solve(double alpha, const std::string& scheme, double theta,
              const std::string& variant, const std::string& rhs, double u0,
              const MeshFlags& mesh_flags, const std::string& out_path) {
  const Mesh mesh = mesh_flags.build();
  const SchemeKernel kernel = build_scheme(scheme, alpha, mesh);
  FodeProblem problem = build_rhs(rhs, u0, scheme == "cn" ? 0.5 : theta, variant);
  const std::vector<double> u = solve(kernel, problem, mesh);

  std::optional<GronwallEnvelope> lower, upper;
  if (problem.affine) {
    const auto [beta, c] = *problem.affine;
    const auto [nu, rho1] = estimate_nu_rho1(kernel);
    if (beta < 0.0 && u0 > c / -beta) {
      lower = GronwallEnvelope{EnvelopeVariant::DecayLower, alpha, -beta, c,
                               u0,   nu,  rho1, default_sigma_constants().sigma,
                               1.0,  mesh};
      GronwallEnvelope up = *lower;
      up.variant = EnvelopeVariant::DecayUpperBasic;
      double worst = 0.0;
      for (int n = 1; n <= mesh.segments(); ++n) {
        worst = std::max(worst, -beta * std::pow(mesh.tau(n), alpha));
      }
      if (worst <= 1.0) up.variant = EnvelopeVariant::DecayUpperStepRestricted;
      upper = up;
    } else if (beta < 0.0) {
      upper = GronwallEnvelope{EnvelopeVariant::UniformBound, alpha, -beta, c,
                               u0,   nu,  rho1, default_sigma_constants().sigma,
                               1.0,  mesh};
    } else if (beta > 0.0) {
      GronwallEnvelope up{EnvelopeVariant::GrowingLinear, alpha, beta, c, u0,
                          nu,  rho1, default_sigma_constants().sigma,
                          nu * default_mu1(), mesh};
      try {
        validate(up);
        upper = up;
      } catch (const HypothesisError&) {
        // Step restriction fails: no certified growing envelope for this run.
      }
    }
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open trajectory file for writing: " + out_path);
  out << "n,t,u,exact,lower,upper\n";
  for (int n = 0; n <= mesh.segments(); ++n) {
    double exact = kNaN;
    if (problem.affine) {
      const auto [beta, c] = *problem.affine;
      exact = linear_fode_exact(alpha, beta, c, u0, mesh.t(n));
    }
    const double lo = lower ? envelope_value(*lower, n) : kNaN;
    const double hi = upper ? envelope_value(*upper, n) : kNaN;
    out << n << ',' << fmt17(mesh.t(n)) << ',' << fmt17(u[static_cast<std::size_t>(n)])
        << ',' << fmt17(exact) << ',' << fmt17(lo) << ',' << fmt17(hi) << '\n';
  }
  std::cout << "wrote " << out_path << " (" << mesh.segments() + 1 << " rows)\n";
  return 0;
}

int cmd_gronwall_check(const std::string& traj_path, const std::string& variant_name,
                       const std::string& direction_name, double alpha, double lambda,
                       double c, double v0, double nu, double rho1, double sigma,
                       double mu) {
  const TrajectoryCsv traj = read_trajectory_csv_file(traj_path);
  GronwallEnvelope env;
  if (variant_name == "uniform") env.variant = EnvelopeVariant::UniformBound;
  else if (variant_name == "decay-lower") env.variant = EnvelopeVariant::DecayLower;
  else if (variant_name == "decay-upper") env.variant = EnvelopeVariant::DecayUpperBasic;
  else if (variant_name == "decay-upper-step")
    env.variant = EnvelopeVariant::DecayUpperStepRestricted;
  else if (variant_name == "growing") env.variant = EnvelopeVariant::GrowingLinear;
  else if (variant_name == "lambda0") env.variant = EnvelopeVariant::LambdaZero;
  else throw CLI::ValidationError("--variant", "unknown variant " + variant_name);
  env.alpha = alpha;
  env.lambda = lambda;
  env.c = c;
  env.v0 = std::isnan(v0) ? traj.u.front() : v0;
  env.nu = nu;
  env.rho1 = rho1;
  env.sigma = std::isnan(sigma) ? default_sigma_constants().sigma : sigma;
  env.mu = std::isnan(mu) ? nu * default_mu1() : mu;
  env.mesh = Mesh::from_points(traj.t);

  const BoundDirection direction = direction_name == "lower" ? BoundDirection::Lower
                                                             : BoundDirection::Upper;
  const VerifyReport report = verify_trajectory(env, traj.u, direction);
  std::cout << "pass: " << (report.pass ? "true" : "false") << '\n'
            << "max_violation: " << fmt17(report.max_violation) << '\n'
            << "worst_index: " << report.worst_index << '\n';
  return report.pass ? 0 : 1;
}

int cmd_ml_eval(double alpha, double beta, double z) {
  std::cout << fmt17(ml({alpha, beta}, z)) << '\n';
  return 0;
}

std::vector<double> preset_samples(const std::string& preset, int m, double h,
                                   double X) {
  std::vector<double> v(static_cast<std::size_t>(m) + 1, 0.0);
  if (preset == "zero") return v;
  if (preset == "sine") {
    for (int i = 0; i <= m; ++i) {
      v[static_cast<std::size_t>(i)] = std::sin(std::numbers::pi * i * h / X);
    }
    v.front() = 0.0;
    v.back() = 0.0;
    return v;
  }
  throw CLI::ValidationError("config", "unknown preset " + preset);
}

Mesh mesh_from_config(const std::map<std::string, std::string>& cfg) {
  const double T = config_number(cfg, "T", 1.0);
  const int N = static_cast<int>(config_number(cfg, "N", 64));
  const double r = config_number(cfg, "grading_r", 1.0);
  return r == 1.0 ? uniform_mesh(T, N) : graded_mesh(T, N, r);
}

int cmd_subdiffusion(const std::string& config_path, const std::string& out_prefix) {
  const auto cfg = read_config_file(config_path);
  SubdiffusionConfig sub;
  sub.alpha = config_number(cfg, "alpha", 0.5);
  sub.X = config_number(cfg, "X", 1.0);
  sub.h = config_number(cfg, "h", sub.X / 8.0);
  sub.mesh = mesh_from_config(cfg);
  const int m = static_cast<int>(std::lround(sub.X / sub.h));
  sub.f = preset_samples(config_string(cfg, "rhs", "zero"), m, sub.h, sub.X);
  sub.u0 = preset_samples(config_string(cfg, "u0", "sine"), m, sub.h, sub.X);

  const SubdiffusionResult res = solve_subdiffusion(sub);
  const DecayReport decay =
      decay_report(res.dist_to_steady, sub.mesh, sub.alpha, res.kappa);

  const std::string csv_path = out_prefix + "_trajectory.csv";
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + csv_path);
  const double sigma = default_sigma_constants().sigma;
  out << "t,norm,dist,envelope\n";
  for (int n = 0; n <= sub.mesh.segments(); ++n) {
    const double bound =
        res.dist_to_steady[0] *
        ml(sub.alpha, -res.kappa * std::pow(sub.mesh.t(n), sub.alpha) / sigma);
    out << fmt17(sub.mesh.t(n)) << ',' << fmt17(res.norm[static_cast<std::size_t>(n)])
        << ',' << fmt17(res.dist_to_steady[static_cast<std::size_t>(n)]) << ','
        << fmt17(bound) << '\n';
  }
  std::cout << "kappa: " << fmt17(res.kappa) << '\n'
            << "fitted_rate: " << fmt17(decay.fitted_rate) << '\n'
            << "step_condition_ok: " << (decay.step_condition_ok ? "true" : "false")
            << '\n';
  if (decay.envelope_checked) {
    std::cout << "envelope_pass: " << (decay.envelope_pass ? "true" : "false") << '\n'
              << "envelope_max_violation: " << fmt17(decay.max_violation) << '\n';
  } else {
    std::cout << "envelope_pass: skipped (kappa tau_n^alpha > 1)\n";
  }
  std::cout << "wrote " << csv_path << '\n';
  return decay.envelope_checked && !decay.envelope_pass ? 1 : 0;
}

int cmd_allen_cahn(const std::string& config_path, const std::string& out_prefix) {
  const auto cfg = read_config_file(config_path);
  AllenCahnConfig ac;
  ac.alpha = config_number(cfg, "alpha", 0.5);
  ac.kappa2 = config_number(cfg, "kappa2", 2.0);
  ac.modes = static_cast<int>(config_number(cfg, "modes", 32));
  ac.mesh = mesh_from_config(cfg);
  const std::string preset = config_string(cfg, "u0", "smallsine");
  const double amp = preset == "smallsine" ? 0.1 : 1.0;
  if (preset != "smallsine" && preset != "sine") {
    throw CLI::ValidationError("config", "unknown u0 preset " + preset);
  }
  ac.u0.resize(static_cast<std::size_t>(ac.modes));
  for (int k = 0; k < ac.modes; ++k) {
    const double x = -std::numbers::pi + 2.0 * std::numbers::pi * k / ac.modes;
    ac.u0[static_cast<std::size_t>(k)] = amp * std::sin(x);
  }
  ac.u0[0] = 0.0;
  ac.u0[static_cast<std::size_t>(ac.modes / 2)] = 0.0;

  const AllenCahnResult res = solve_allen_cahn(ac);
  const double lambda = ac.kappa2 - 1.0;
  const DecayReport decay = decay_report(res.norm, ac.mesh, ac.alpha, lambda);

  const std::string csv_path = out_prefix + "_trajectory.csv";
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + csv_path);
  const double sigma = default_sigma_constants().sigma;
  out << "t,norm,zero_mode,envelope\n";
  double worst_zero_mode = 0.0;
  for (int n = 0; n <= ac.mesh.segments(); ++n) {
    const double bound =
        res.norm[0] * ml(ac.alpha, -lambda * std::pow(ac.mesh.t(n), ac.alpha) / sigma);
    worst_zero_mode = std::max(worst_zero_mode, res.zero_mode[static_cast<std::size_t>(n)]);
    out << fmt17(ac.mesh.t(n)) << ',' << fmt17(res.norm[static_cast<std::size_t>(n)])
        << ',' << fmt17(res.zero_mode[static_cast<std::size_t>(n)]) << ','
        << fmt17(bound) << '\n';
  }
  std::cout << "fitted_rate: " << fmt17(decay.fitted_rate) << '\n'
            << "max_zero_mode: " << fmt17(worst_zero_mode) << '\n'
            << "step_condition_ok: " << (decay.step_condition_ok ? "true" : "false")
            << '\n';
  if (decay.envelope_checked) {
    std::cout << "envelope_pass: " << (decay.envelope_pass ? "true" : "false") << '\n';
  } else {
    std::cout << "envelope_pass: skipped ((kappa2-1) tau_n^alpha > 1)\n";
  }
  std::cout << "wrote " << csv_path << '\n';
  return decay.envelope_checked && !decay.envelope_pass ? 1 : 0;
}

int cmd_convergence(const std::string& config_path, const std::string& out_path) {
  const auto cfg = read_config_file(config_path);
  StudyConfig study;
  study.alpha = config_number(cfg, "alpha", 0.5);
  study.X = config_number(cfg, "X", 1.0);
  study.T = config_number(cfg, "T", 1.0);
  // Optimal grading for the L1 initial layer unless the config overrides it.
  study.grading_r =
      config_number(cfg, "grading_r", (2.0 - study.alpha) / study.alpha);
  const std::string mode = config_string(cfg, "mode", "temporal");
  study.mode = mode == "spatial" ? RefineMode::Spatial : RefineMode::Temporal;
  study.fixed_m = static_cast<int>(config_number(cfg, "fixed_m", 8));
  study.fixed_steps = static_cast<int>(config_number(cfg, "fixed_steps", 2048));
  {
    std::stringstream ss(config_string(cfg, "levels", "32,64,128"));
    std::string cell;
    while (std::getline(ss, cell, ',')) study.levels.push_back(std::stoi(cell));
  }

  // Refinement levels are independent; fan them out under the thread cap.
  std::vector<ConvergenceRow> rows(study.levels.size());
  const int budget = std::min<int>(thread_budget(), static_cast<int>(study.levels.size()));
  std::vector<std::thread> workers;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < budget; ++w) {
    workers.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < study.levels.size();
           i = next.fetch_add(1)) {
        StudyConfig one = study;
        one.levels = {study.levels[i]};
        rows[i] = truncation_and_error_study(one)[0];
      }
    });
  }
  for (auto& w : workers) w.join();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = rows[i - 1].spacing / rows[i].spacing;
    rows[i].order = ratio > 1.0 && rows[i].error > 0.0
                        ? std::log(rows[i - 1].error / rows[i].error) / std::log(ratio)
                        : kNaN;
  }

  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + out_path);
  out << "level,spacing,error,order\n";
  for (const auto& row : rows) {
    out << row.level << ',' << fmt17(row.spacing) << ',' << fmt17(row.error) << ','
        << fmt17(row.order) << '\n';
  }
  std::cout << "wrote " << out_path << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"completely positive discretizations of Caputo fractional ODEs"};
  app.require_subcommand(1);

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "complete-positivity certification");
  std::string certify_kernel, certify_scheme = "l1", certify_out;
  double certify_alpha = 0.5;
  std::vector<double> certify_lambdas;
  MeshFlags certify_mesh;
  certify_cmd->add_option("--kernel", certify_kernel, "integral-form kernel CSV");
  certify_cmd->add_option("--scheme", certify_scheme, "l1 | integral | cn");
  certify_cmd->add_option("--alpha", certify_alpha, "fractional order")->required();
  certify_cmd->add_option("--lambdas", certify_lambdas, "resolvent probe set");
  certify_cmd->add_option("--out", certify_out, "also write the report here");
  certify_mesh.attach(certify_cmd);

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "scalar FODE time stepping");
  std::string solve_scheme = "l1", solve_variant = "combo", solve_rhs = "affine:-1,0";
  std::string solve_out = "trajectory.csv";
  double solve_alpha = 0.5, solve_theta = 1.0, solve_u0 = 1.0;
  MeshFlags solve_mesh;
  solve_cmd->add_option("--alpha", solve_alpha, "fractional order")->required();
  solve_cmd->add_option("--scheme", solve_scheme, "l1 | integral | cn");
  solve_cmd->add_option("--theta", solve_theta, "theta weight on the current level");
  solve_cmd->add_option("--variant", solve_variant, "combo | point");
  solve_cmd->add_option("--rhs", solve_rhs, "affine:beta,c | zero | cubic");
  solve_cmd->add_option("--u0", solve_u0, "initial value");
  solve_cmd->add_option("--out", solve_out, "trajectory CSV path");
  solve_mesh.attach(solve_cmd);

  // gronwall-check
  auto* gron_cmd = app.add_subcommand("gronwall-check", "verify a Gronwall envelope");
  std::string gron_traj, gron_variant = "decay-lower", gron_direction = "lower";
  double gron_alpha = 0.5, gron_lambda = 1.0, gron_c = 0.0, gron_v0 = kNaN;
  double gron_nu = 1.0, gron_rho1 = 1.0, gron_sigma = kNaN, gron_mu = kNaN;
  gron_cmd->add_option("--traj", gron_traj, "solve CSV")->required();
  gron_cmd->add_option("--variant", gron_variant,
                       "uniform | decay-lower | decay-upper | decay-upper-step | "
                       "growing | lambda0");
  gron_cmd->add_option("--direction", gron_direction, "upper | lower");
  gron_cmd->add_option("--alpha", gron_alpha, "fractional order")->required();
  gron_cmd->add_option("--lambda", gron_lambda, "decay/growth rate");
  gron_cmd->add_option("--c", gron_c, "constant forcing");
  gron_cmd->add_option("--v0", gron_v0, "initial value (default: trajectory head)");
  gron_cmd->add_option("--nu", gron_nu, "lower comparability constant");
  gron_cmd->add_option("--rho1", gron_rho1, "upper comparability constant");
  gron_cmd->add_option("--sigma", gron_sigma, "sigma (default: estimated)");
  gron_cmd->add_option("--mu", gron_mu, "mu (default: nu * estimated mu1)");

  // ml-eval
  auto* ml_cmd = app.add_subcommand("ml-eval", "Mittag-Leffler spot check");
  double ml_alpha = 0.5, ml_beta = 1.0, ml_z = 0.0;
  ml_cmd->add_option("--alpha", ml_alpha, "order")->required();
  ml_cmd->add_option("--beta", ml_beta, "second parameter");
  ml_cmd->add_option("--z", ml_z, "argument")->required();

  // subdiffusion / allen-cahn / convergence
  auto* sub_cmd = app.add_subcommand("subdiffusion", "1D subdiffusion experiment");
  std::string sub_config, sub_prefix = "subdiffusion";
  sub_cmd->add_option("--config", sub_config, "key=value config")->required();
  sub_cmd->add_option("--out-prefix", sub_prefix, "output file prefix");

  auto* ac_cmd = app.add_subcommand("allen-cahn", "time-fractional Allen-Cahn experiment");
  std::string ac_config, ac_prefix = "allen_cahn";
  ac_cmd->add_option("--config", ac_config, "key=value config")->required();
  ac_cmd->add_option("--out-prefix", ac_prefix, "output file prefix");

  auto* conv_cmd = app.add_subcommand("convergence", "refinement study");
  std::string conv_config, conv_out = "convergence.csv";
  conv_cmd->add_option("--config", conv_config, "key=value config")->required();
  conv_cmd->add_option("--out", conv_out, "table CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (certify_cmd->parsed()) {
      return cmd_certify(certify_kernel, certify_scheme, certify_alpha, certify_mesh,
                         certify_lambdas, certify_out);
    }
    if (solve_cmd->parsed()) {
      return cmd_solve(solve_alpha, solve_scheme, solve_theta, solve_variant, solve_rhs,
                       solve_u0, solve_mesh, solve_out);
    }
    if (gron_cmd->parsed()) {
      return cmd_gronwall_check(gron_traj, gron_variant, gron_direction, gron_alpha,
                                gron_lambda, gron_c, gron_v0, gron_nu, gron_rho1,
                                gron_sigma, gron_mu);
    }
    if (ml_cmd->parsed()) return cmd_ml_eval(ml_alpha, ml_beta, ml_z);
    if (sub_cmd->parsed()) return cmd_subdiffusion(sub_config, sub_prefix);
    if (ac_cmd->parsed()) return cmd_allen_cahn(ac_config, ac_prefix);
    if (conv_cmd->parsed()) return cmd_convergence(conv_config, conv_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace fracgrid::cli
