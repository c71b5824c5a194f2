#include "chebhmc/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>

#include "chebhmc/chebyshev.hpp"
#include "chebhmc/diagnostics.hpp"
#include "chebhmc/figures.hpp"
#include "chebhmc/ideal.hpp"
#include "chebhmc/io.hpp"
#include "chebhmc/parallel.hpp"
#include "chebhmc/potential.hpp"
#include "chebhmc/rng.hpp"
#include "chebhmc/sampler.hpp"
#include "chebhmc/schedule.hpp"

namespace chebhmc {

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void fail(const std::string& message) { throw CheckFailure(message); }

std::string num(double v) {
  std::ostringstream ss;
  ss << std::setprecision(10) << v;
  return ss.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  }
  return grid;
}

bool rel_close(double a, double b, double tol, double floor = 0.0) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

ChebyshevRootSet roots_maybe_faulted(int degree, const SpectralBounds& b,
                                     const VerifyContext& ctx) {
  ChebyshevRootSet roots = cheb_roots(degree, b);
  if (ctx.perturb_root) roots.roots[0] *= 1.01;
  return roots;
}

// The section-4.2 Gaussian: mu = (0, 1), Sigma = [[1, 0.5], [0.5, 100]].
PotentialSpec gaussian_4_2() {
  Eigen::VectorXd mu(2);
  mu << 0.0, 1.0;
  Eigen::MatrixXd sigma(2, 2);
  sigma << 1.0, 0.5, 0.5, 100.0;
  return gaussian_general(mu, sigma);
}

// The section-4.3 mixture: d = 10, a[i] = sqrt(i)/(2d), Sigma = diag(i/d).
PotentialSpec mixture_4_3() {
  const int d = 10;
  Eigen::VectorXd a(d);
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i <= d; ++i) {
    a[i - 1] = std::sqrt(static_cast<double>(i)) / (2.0 * d);
    sigma(i - 1, i - 1) = static_cast<double>(i) / d;
  }
  return gaussian_mixture(a, sigma);
}

// Deterministic synthetic classification data for the logistic potential.
LabeledDataset synthetic_dataset(std::uint64_t seed, int n = 60, int d = 4) {
  RngStream rng(seed, 7001);
  LabeledDataset data;
  data.features.resize(n, d);
  data.labels.resize(n);
  Eigen::VectorXd w_true(d);
  for (int j = 0; j < d; ++j) w_true[j] = rng.normal();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) data.features(i, j) = rng.normal();
    const double margin = data.features.row(i).dot(w_true) + 0.3 * rng.normal();
    data.labels[i] = margin >= 0.0 ? 1.0 : -1.0;
  }
  return data;
}

std::vector<PotentialSpec> all_five_potentials(std::uint64_t seed) {
  Eigen::VectorXd lambda(3);
  lambda << 0.5, 1.0, 100.0;
  std::vector<PotentialSpec> out;
  out.push_back(quadratic_diag(lambda));
  out.push_back(gaussian_4_2());
  out.push_back(mixture_4_3());
  out.push_back(logistic_regression(synthetic_dataset(seed), 1.0));
  out.push_back(hard_potential(50.0, 0.01, 10));
  return out;
}

Eigen::MatrixXd covariance_sqrt(const Eigen::MatrixXd& sigma) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma);
  return eig.operatorSqrt();
}

// ---------------------------------------------------------------------------
// chebyshev_core
// ---------------------------------------------------------------------------

void check_lemma4_grid(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const std::vector<double> grid = linspace(b.m, b.L, 512);
  std::mutex m;
  std::string first_failure;
  parallel_for(64, ctx.threads, [&](long i) {
    const int degree = static_cast<int>(i) + 1;
    const ChebyshevRootSet roots = roots_maybe_faulted(degree, b, ctx);
    for (double lam : grid) {
      const double lhs = std::abs(cosine_product(lam, roots));
      const double rhs = std::abs(phi_bar(degree, lam, b));
      if (lhs > rhs + 1e-12) {
        std::lock_guard<std::mutex> lock(m);
        if (first_failure.empty()) {
          first_failure = "K=" + std::to_string(degree) + " lambda=" + num(lam) +
                          ": |P_cos|=" + num(lhs) + " > |PhiBar|=" + num(rhs);
        }
        return;
      }
    }
  });
  if (!first_failure.empty()) fail(first_failure);
}

void check_lemma3_bound(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const std::vector<double> grid = linspace(b.m, b.L, 512);
  for (int degree = 1; degree <= 64; ++degree) {
    double worst = 0.0;
    for (double lam : grid) worst = std::max(worst, std::abs(phi_bar(degree, lam, b)));
    const double bound = rate_bound(degree, b);
    if (worst > bound + 1e-12) {
      fail("K=" + std::to_string(degree) + ": max|PhiBar|=" + num(worst) +
           " > rate bound " + num(bound));
    }
  }
  (void)ctx;
}

void check_psi_bound(const VerifyContext&) {
  const std::vector<double> grid = linspace(0.0, 100.0, 10000);
  if (std::abs(psi(grid[0]) - 1.0) > 1e-12) {
    fail("psi(0)=" + num(psi(0.0)) + " != 1");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = std::abs(psi(grid[i]));
    if (v >= 1.0) {
      fail("|psi(" + num(grid[i]) + ")|=" + num(v) + " reaches 1 away from 0");
    }
  }
}

void check_product_identity(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const std::vector<double> grid = linspace(b.m, b.L, 512);
  std::mutex m;
  std::string first_failure;
  parallel_for(64, ctx.threads, [&](long i) {
    const int degree = static_cast<int>(i) + 1;
    const ChebyshevRootSet roots = cheb_roots(degree, b);
    // At grid points sitting almost on a root both routes cross zero and a
    // pure relative comparison loses meaning; anchor the tolerance to the
    // polynomial's envelope there (12 digits at the function scale).
    const double envelope_floor = 1e-3 * rate_bound(degree, b);
    for (double lam : grid) {
      double product = 1.0;
      for (double r : roots.roots) product *= 1.0 - lam / r;
      const double transcendental = phi_bar(degree, lam, b);
      if (!rel_close(product, transcendental, 1e-9, envelope_floor)) {
        std::lock_guard<std::mutex> lock(m);
        if (first_failure.empty()) {
          first_failure = "K=" + std::to_string(degree) + " lambda=" + num(lam) +
                          ": product form " + num(product) + " vs PhiBar " +
                          num(transcendental);
        }
        return;
      }
    }
  });
  if (!first_failure.empty()) fail(first_failure);
}

void check_recurrence_match(const VerifyContext&) {
  const std::vector<double> xs = linspace(-10.0, 10.0, 501);
  for (double x : xs) {
    double prev = 1.0;      // Phi_0
    double current = x;     // Phi_1
    for (int degree = 0; degree <= 64; ++degree) {
      const double reference = (degree == 0) ? 1.0 : current;
      const double direct = cheb_first_kind(degree, x);
      if (!rel_close(direct, reference, 1e-10, 1.0)) {
        fail("K=" + std::to_string(degree) + " x=" + num(x) + ": closed form " +
             num(direct) + " vs recurrence " + num(reference));
      }
      if (degree >= 1) {
        const double next = 2.0 * x * current - prev;
        prev = current;
        current = next;
      }
    }
  }
}

void check_gd_contraction_identity(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  RngStream rng(ctx.seed, 101);
  Eigen::VectorXd eigenvalues(64);
  for (int j = 0; j < 64; ++j) eigenvalues[j] = b.m + (b.L - b.m) * rng.uniform();
  const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(64);
  for (int degree = 1; degree <= 64; ++degree) {
    const ChebyshevRootSet roots = cheb_roots(degree, b);
    const Eigen::VectorXd w = gd_chebyshev_contraction(eigenvalues, roots, x0);
    for (int j = 0; j < 64; ++j) {
      const double expected = phi_bar(degree, eigenvalues[j], b);
      if (!rel_close(w[j], expected, 1e-10)) {
        fail("K=" + std::to_string(degree) + " lambda=" + num(eigenvalues[j]) +
             ": GD " + num(w[j]) + " vs PhiBar " + num(expected));
      }
    }
  }
}

// ---------------------------------------------------------------------------
// schedules
// ---------------------------------------------------------------------------

void check_pair_sum_monotone(const VerifyContext&) {
  const SpectralBounds b(1.0, 100.0);
  for (int iterations : {4, 10, 100, 400}) {
    for (int k = 1; k < iterations / 2; ++k) {
      const double here = pair_time_sum(k, iterations, b);
      const double next = pair_time_sum(k + 1, iterations, b);
      if (next < here - 1e-12) {
        fail("K=" + std::to_string(iterations) + ": pair_time_sum(" +
             std::to_string(k) + ")=" + num(here) + " > pair_time_sum(" +
             std::to_string(k + 1) + ")=" + num(next) +
             " (sequence is not nondecreasing)");
      }
    }
  }
}

void check_permutation_invariance(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const int iterations = 32;
  const IntegrationSchedule identity =
      chebyshev_schedule(iterations, b, PermMode::kIdentity);
  const IntegrationSchedule reversed =
      chebyshev_schedule(iterations, b, PermMode::kReversed);
  const IntegrationSchedule random =
      chebyshev_schedule(iterations, b, PermMode::kRandom, ctx.seed);
  const std::vector<double> grid = linspace(b.m, b.L, 64);
  const Eigen::VectorXd lambdas =
      Eigen::Map<const Eigen::VectorXd>(grid.data(), grid.size());
  const double f_id = contraction_factor(lambdas, identity);
  const double f_rev = contraction_factor(lambdas, reversed);
  const double f_rand = contraction_factor(lambdas, random);
  if (!rel_close(f_id, f_rev, 1e-10) || !rel_close(f_id, f_rand, 1e-10)) {
    fail("contraction factors differ across permutations: " + num(f_id) + ", " +
         num(f_rev) + ", " + num(f_rand));
  }
}

void check_average_time_approx(const VerifyContext&) {
  const SpectralBounds b(1.0, 100.0);
  const IntegrationSchedule schedule =
      chebyshev_schedule(400, b, PermMode::kIdentity);
  const double average = total_and_average_time(schedule).average;
  const double target = 0.5 * kPi / std::sqrt(b.L + b.m);
  const double rel = std::abs(average - target) / target;
  if (rel > 0.15) {
    fail("K=400 average time " + num(average) + " is " + num(100.0 * rel) +
         "% away from (pi/2)/sqrt(L+m)=" + num(target) + " (> 15%)");
  }
}

// ---------------------------------------------------------------------------
// potentials
// ---------------------------------------------------------------------------

void check_gradient_fd(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 202);
  const double step = 1e-5;
  for (const PotentialSpec& p : all_five_potentials(ctx.seed)) {
    for (int trial = 0; trial < 100; ++trial) {
      Eigen::VectorXd x(p.dim);
      for (int j = 0; j < p.dim; ++j) x[j] = -3.0 + 6.0 * rng.uniform();
      const Eigen::VectorXd g = p.gradient(x);
      for (int j = 0; j < p.dim; ++j) {
        Eigen::VectorXd xp = x, xm = x;
        xp[j] += step;
        xm[j] -= step;
        const double fd = (p.value(xp) - p.value(xm)) / (2.0 * step);
        if (!rel_close(fd, g[j], 1e-5, 1.0)) {
          fail(p.name + ": coordinate " + std::to_string(j) + " gradient " +
               num(g[j]) + " vs finite difference " + num(fd));
        }
      }
    }
  }
}

void check_mixture_gate(const VerifyContext&) {
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd a(2);
  a << 1.0, 0.0;  // a^T Sigma^{-1} a = 1, exactly on the boundary
  bool threw = false;
  try {
    gaussian_mixture(a, sigma);
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  if (!threw) fail("constructor accepted a^T Sigma^{-1} a = 1");
  a << 0.5, 0.5;  // 0.5 < 1, must construct
  gaussian_mixture(a, sigma);
}

void check_hard_bounds(const VerifyContext&) {
  const double kappa = 50.0;
  const double h = 0.01;
  const PotentialSpec p = hard_potential(kappa, h, 3);
  const double fd_step = 1e-4;
  for (double x : linspace(-3.0, 3.0, 121)) {
    for (int coord : {0, 1}) {
      Eigen::VectorXd base = Eigen::VectorXd::Zero(3);
      base[coord] = x;
      Eigen::VectorXd plus = base, minus = base;
      plus[coord] += fd_step;
      minus[coord] -= fd_step;
      const double second =
          (p.value(plus) - 2.0 * p.value(base) + p.value(minus)) / (fd_step * fd_step);
      if (coord == 0) {
        if (std::abs(second - 1.0) > 1e-3) {
          fail("coordinate 1 curvature " + num(second) + " != 1 at x=" + num(x));
        }
      } else if (second < kappa / 3.0 - 1e-2 || second > kappa + 1e-2) {
        fail("coordinate 2 curvature " + num(second) + " outside [kappa/3, kappa] at x=" +
             num(x));
      }
    }
  }
}

void check_logistic_min_eig(const VerifyContext& ctx) {
  const double alpha = 1.0;
  const PotentialSpec p = logistic_regression(synthetic_dataset(ctx.seed), alpha);
  RngStream rng(ctx.seed, 303);
  for (int trial = 0; trial < 25; ++trial) {
    Eigen::VectorXd w(p.dim);
    for (int j = 0; j < p.dim; ++j) w[j] = -3.0 + 6.0 * rng.uniform();
    const SpectralBounds eigs = hessian_extreme_eigs(p, w);
    if (eigs.m < alpha - 1e-9) {
      fail("Hessian min eigenvalue " + num(eigs.m) + " below alpha=" + num(alpha));
    }
  }
  if (p.bounds.m < alpha - 1e-9) {
    fail("estimated m " + num(p.bounds.m) + " below alpha");
  }
}

// ---------------------------------------------------------------------------
// ideal_flow
// ---------------------------------------------------------------------------

void check_energy_conservation(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 404);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_below(5));
    Eigen::VectorXd lambda(d);
    for (int j = 0; j < d; ++j) lambda[j] = 0.1 + 99.9 * rng.uniform();
    PhaseState s0{Eigen::VectorXd(d), Eigen::VectorXd(d)};
    for (int j = 0; j < d; ++j) {
      s0.position[j] = -3.0 + 6.0 * rng.uniform();
      s0.velocity[j] = -3.0 + 6.0 * rng.uniform();
    }
    const double t = 10.0 * rng.uniform();
    const PhaseState s1 = exact_flow(lambda, s0, t);
    const double h0 = lambda.dot(s0.position.cwiseProduct(s0.position)) +
                      0.5 * s0.velocity.squaredNorm();
    const double h1 = lambda.dot(s1.position.cwiseProduct(s1.position)) +
                      0.5 * s1.velocity.squaredNorm();
    if (!rel_close(h1, h0, 1e-10)) {
      fail("H drifted from " + num(h0) + " to " + num(h1) + " (t=" + num(t) + ")");
    }
  }
}

void check_coupling_identity(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 505);
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform_below(5));
    Eigen::VectorXd lambda(d), x0(d), y0(d), xi(d);
    for (int j = 0; j < d; ++j) {
      lambda[j] = 0.1 + 99.9 * rng.uniform();
      x0[j] = -3.0 + 6.0 * rng.uniform();
      y0[j] = -3.0 + 6.0 * rng.uniform();
      xi[j] = rng.normal();
    }
    const double t = 10.0 * rng.uniform();
    const PhaseState flow_x = exact_flow(lambda, {x0, xi}, t);
    const PhaseState flow_y = exact_flow(lambda, {y0, xi}, t);
    const Eigen::VectorXd expected = coupled_deviation(lambda, x0, y0, t);
    const Eigen::VectorXd actual = flow_x.position - flow_y.position;
    if ((expected - actual).cwiseAbs().maxCoeff() > 1e-12) {
      fail("coupled deviation mismatch " +
           num((expected - actual).cwiseAbs().maxCoeff()));
    }
  }
}

void check_theorem1_contraction(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const std::vector<double> grid = linspace(b.m, b.L, 512);
  const Eigen::VectorXd lambdas =
      Eigen::Map<const Eigen::VectorXd>(grid.data(), grid.size());
  std::mutex m;
  std::string first_failure;
  parallel_for(64, ctx.threads, [&](long i) {
    const int degree = static_cast<int>(i) + 1;
    const IntegrationSchedule schedule =
        chebyshev_schedule(degree, b, PermMode::kIdentity);
    const double factor = contraction_factor(lambdas, schedule);
    const double bound = rate_bound(degree, b);
    if (factor > bound + 1e-12) {
      std::lock_guard<std::mutex> lock(m);
      if (first_failure.empty()) {
        first_failure = "K=" + std::to_string(degree) + ": contraction " +
                        num(factor) + " > rate bound " + num(bound);
      }
    }
  });
  if (!first_failure.empty()) fail(first_failure);
}

void check_w2_coupled_chains(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  Eigen::VectorXd lambda(8);
  lambda << 1.0, 2.5, 7.0, 16.0, 33.0, 58.0, 80.0, 100.0;
  const IntegrationSchedule schedule =
      chebyshev_schedule(16, b, PermMode::kRandom, ctx.seed);

  // Locate the slowest coordinate and its exact per-coordinate contraction.
  const double factor = contraction_factor(lambda, schedule);
  int slow = 0;
  double best = -1.0;
  for (int j = 0; j < lambda.size(); ++j) {
    const double f = contraction_factor(lambda.segment(j, 1), schedule);
    if (f > best) {
      best = f;
      slow = j;
    }
  }
  const double initial_gap = 1.75;
  double sq_sum = 0.0;
  const int pairs = 20;
  for (int i = 0; i < pairs; ++i) {
    RngStream rng_x(ctx.seed, 600 + i);
    RngStream rng_y(ctx.seed, 600 + i);  // shared velocities within a pair
    Eigen::VectorXd x = Eigen::VectorXd::Constant(8, 0.4 * i);
    Eigen::VectorXd y = x;
    y[slow] += initial_gap;
    for (int k = 0; k < schedule.iterations; ++k) {
      const Eigen::VectorXd xi = rng_x.normal_vector(8);
      const Eigen::VectorXd xi_check = rng_y.normal_vector(8);
      x = exact_flow(lambda, {x, xi}, schedule.times[k]).position;
      y = exact_flow(lambda, {y, xi_check}, schedule.times[k]).position;
    }
    sq_sum += (x - y).squaredNorm();
  }
  const double rms = std::sqrt(sq_sum / pairs);
  const double expected = factor * initial_gap;
  if (!rel_close(rms, expected, 1e-10)) {
    fail("coupled RMS gap " + num(rms) + " vs contraction * gap " + num(expected));
  }
}

// ---------------------------------------------------------------------------
// hmc_sampler
// ---------------------------------------------------------------------------

void check_leapfrog_reversibility(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 707);
  for (const PotentialSpec& p : all_five_potentials(ctx.seed)) {
    const double theta = 0.5 / std::sqrt(hessian_extreme_eigs(
                                             p, Eigen::VectorXd::Zero(p.dim))
                                             .L);
    for (int trial = 0; trial < 100; ++trial) {
      PhaseState s{Eigen::VectorXd(p.dim), Eigen::VectorXd(p.dim)};
      for (int j = 0; j < p.dim; ++j) {
        s.position[j] = -2.0 + 4.0 * rng.uniform();
        s.velocity[j] = -2.0 + 4.0 * rng.uniform();
      }
      const int steps = 1 + static_cast<int>(rng.uniform_below(30));
      PhaseState fwd = leapfrog(p, s, theta, steps);
      fwd.velocity = -fwd.velocity;
      PhaseState back = leapfrog(p, fwd, theta, steps);
      const double err =
          std::max((back.position - s.position).cwiseAbs().maxCoeff(),
                   (back.velocity + s.velocity).cwiseAbs().maxCoeff());
      if (err > 1e-8) {
        fail(p.name + ": reversibility error " + num(err) + " with S=" +
             std::to_string(steps));
      }
    }
  }
}

void check_leapfrog_volume(const VerifyContext&) {
  Eigen::VectorXd a(1);
  a << 0.5;
  const PotentialSpec p = gaussian_mixture(a, Eigen::MatrixXd::Identity(1, 1));
  const double theta = 0.1;
  const double h = 1e-6;
  const double x0 = 0.3, v0 = -0.7;
  auto map = [&](double x, double v) {
    PhaseState s{Eigen::VectorXd::Constant(1, x), Eigen::VectorXd::Constant(1, v)};
    const PhaseState out = leapfrog(p, s, theta, 1);
    return std::pair<double, double>(out.position[0], out.velocity[0]);
  };
  const auto [xp_x, vp_x] = map(x0 + h, v0);
  const auto [xm_x, vm_x] = map(x0 - h, v0);
  const auto [xp_v, vp_v] = map(x0, v0 + h);
  const auto [xm_v, vm_v] = map(x0, v0 - h);
  const double dxdx = (xp_x - xm_x) / (2 * h);
  const double dvdx = (vp_x - vm_x) / (2 * h);
  const double dxdv = (xp_v - xm_v) / (2 * h);
  const double dvdv = (vp_v - vm_v) / (2 * h);
  const double det = dxdx * dvdv - dxdv * dvdx;
  if (std::abs(det - 1.0) > 1e-4) {
    fail("leapfrog Jacobian determinant " + num(det) + " differs from 1");
  }
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void check_energy_error_scaling(const VerifyContext& ctx) {
  const PotentialSpec p = gaussian_4_2();
  const double eta = 0.5 * kPi / std::sqrt(2.0 * p.bounds.L);
  const Eigen::MatrixXd root = covariance_sqrt(p.truth->covariance);
  const double coarse = 0.05;

  std::vector<double> err_coarse, err_fine;
  RngStream rng(ctx.seed, 808);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::VectorXd x = p.truth->mean + root * rng.normal_vector(2);
    const Eigen::VectorXd xi = rng.normal_vector(2);
    const double h0 = p.value(x) + 0.5 * xi.squaredNorm();
    for (double theta : {coarse, 0.5 * coarse}) {
      const int steps = static_cast<int>(std::floor(eta / theta));
      const PhaseState out = leapfrog(p, {x, xi}, theta, steps);
      const double h1 = p.value(out.position) + 0.5 * out.velocity.squaredNorm();
      (theta == coarse ? err_coarse : err_fine).push_back(std::abs(h1 - h0));
    }
  }
  const double ratio = median(err_coarse) / median(err_fine);
  if (ratio < 3.5 || ratio > 4.5) {
    fail("median |dH| ratio under theta halving is " + num(ratio) +
         ", outside [3.5, 4.5]");
  }
}

void check_reject_copies(const VerifyContext& ctx) {
  const PotentialSpec p = gaussian_4_2();
  const IntegrationSchedule schedule =
      chebyshev_schedule(10, p.bounds, PermMode::kIdentity);
  Eigen::VectorXd x0(2);
  x0 << 0.3, -1.2;
  ChainOptions options;
  options.force_reject = true;
  const ChainTrace trace = run_chain(p, schedule, 0.05, x0, ctx.seed, options);
  for (int k = 0; k < schedule.iterations; ++k) {
    if (trace.accepted[k]) fail("forced rejection still accepted");
    for (int j = 0; j < 2; ++j) {
      if (trace.samples(k, j) != x0[j]) {
        fail("rejected iteration " + std::to_string(k) +
             " does not copy the previous position bit-exactly");
      }
    }
  }
}

void check_stationarity_smoke(const VerifyContext& ctx) {
  const PotentialSpec p = gaussian_4_2();
  const int chains = 10000;
  const int iterations = 50;
  const double theta = 0.05;
  const IntegrationSchedule schedule =
      chebyshev_schedule(iterations, p.bounds, PermMode::kRandom, ctx.seed);
  const Eigen::MatrixXd root = covariance_sqrt(p.truth->covariance);
  const Eigen::VectorXd mu = p.truth->mean;

  Eigen::MatrixXd finals(chains, 2);
  parallel_for(chains, ctx.threads, [&](long chain) {
    RngStream init(ctx.seed, 2 * chain + 1);
    const Eigen::VectorXd x0 = mu + root * init.normal_vector(2);
    const ChainTrace trace =
        run_chain(p, schedule, theta, x0, ctx.seed, {}, 2 * chain);
    finals.row(chain) = trace.samples.row(iterations - 1);
  });

  const Eigen::VectorXd mean = finals.colwise().mean();
  const Eigen::MatrixXd centered = finals.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / (chains - 1.0);

  const double sigma_scale = std::sqrt(p.truth->covariance.trace());
  const double mean_err = (mean - mu).norm() / sigma_scale;
  const double cov_err =
      (cov - p.truth->covariance).norm() / p.truth->covariance.norm();
  if (mean_err > 0.05) {
    fail("pooled mean off by " + num(100 * mean_err) + "% of the target scale");
  }
  if (cov_err > 0.05) {
    fail("pooled covariance Frobenius error " + num(100 * cov_err) + "% (> 5%)");
  }
}

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

void check_ess_iid_range(const VerifyContext& ctx) {
  for (std::uint64_t s = 0; s < 3; ++s) {
    RngStream rng(ctx.seed + s, 909);
    std::vector<double> series(10000);
    for (double& v : series) v = rng.normal();
    const double estimate = ess(series);
    if (estimate < 8000.0 || estimate > 12000.0) {
      fail("iid ESS " + num(estimate) + " outside [8000, 12000] (seed offset " +
           std::to_string(s) + ")");
    }
  }
}

void check_tv_symmetry_range(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 1010);
  Eigen::MatrixXd a(500, 3), bmat(500, 3);
  for (int i = 0; i < 500; ++i) {
    for (int j = 0; j < 3; ++j) {
      a(i, j) = rng.normal();
      bmat(i, j) = rng.normal();
    }
  }
  const double ab = discrete_tv(a, bmat);
  const double ba = discrete_tv(bmat, a);
  if (ab != ba) fail("discrete_tv not symmetric: " + num(ab) + " vs " + num(ba));
  if (ab < 0.0 || ab > 1.0) fail("discrete_tv outside [0, 1]: " + num(ab));
  if (discrete_tv(a, a) != 0.0) fail("discrete_tv(a, a) != 0");
  const Eigen::MatrixXd shifted = a.array() + 100.0;
  if (std::abs(discrete_tv(a, shifted) - 1.0) > 1e-15) {
    fail("disjoint supports should give TV = 1");
  }
}

void check_w2_triangle(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 1111);
  auto random_gaussian = [&](Eigen::VectorXd& mu, Eigen::MatrixXd& sigma) {
    mu.resize(3);
    for (int j = 0; j < 3; ++j) mu[j] = -2.0 + 4.0 * rng.uniform();
    Eigen::MatrixXd a(3, 3);
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) a(r, c) = rng.normal();
    }
    sigma = a.transpose() * a + 0.1 * Eigen::MatrixXd::Identity(3, 3);
  };
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::VectorXd mu1, mu2, mu3;
    Eigen::MatrixXd s1, s2, s3;
    random_gaussian(mu1, s1);
    random_gaussian(mu2, s2);
    random_gaussian(mu3, s3);
    const double d13 = gaussian_w2(mu1, s1, mu3, s3);
    const double d12 = gaussian_w2(mu1, s1, mu2, s2);
    const double d23 = gaussian_w2(mu2, s2, mu3, s3);
    if (d13 > d12 + d23 + 1e-8) {
      fail("triangle inequality violated: " + num(d13) + " > " + num(d12) + " + " +
           num(d23));
    }
  }
}

void check_cov_order_invariance(const VerifyContext& ctx) {
  RngStream rng(ctx.seed, 1212);
  Eigen::MatrixXd samples(200, 4);
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 4; ++j) samples(i, j) = rng.normal();
  }
  const Eigen::MatrixXd sigma = Eigen::MatrixXd::Identity(4, 4);
  const double direct = cov_frobenius_error(samples, sigma);

  std::vector<int> order(200);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  Eigen::MatrixXd shuffled(200, 4);
  for (int i = 0; i < 200; ++i) shuffled.row(i) = samples.row(order[i]);
  const double permuted = cov_frobenius_error(shuffled, sigma);
  if (!rel_close(direct, permuted, 1e-10)) {
    fail("covariance error depends on sample order: " + num(direct) + " vs " +
         num(permuted));
  }
}

// ---------------------------------------------------------------------------
// harness
// ---------------------------------------------------------------------------

void check_csv_reproducibility(const VerifyContext& ctx) {
  const SpectralBounds b(1.0, 100.0);
  const IntegrationSchedule cheb =
      chebyshev_schedule(50, b, PermMode::kRandom, ctx.seed);
  const IntegrationSchedule cons = constant_schedule(50, b);
  const std::string once = figure1_left_csv(cheb, cons, 1.0);
  const std::string again = figure1_left_csv(
      chebyshev_schedule(50, b, PermMode::kRandom, ctx.seed), cons, 1.0);
  if (once != again) fail("figure CSV content differs across identical runs");
  if (schedule_to_json(cheb) !=
      schedule_to_json(chebyshev_schedule(50, b, PermMode::kRandom, ctx.seed))) {
    fail("schedule JSON differs across identical runs");
  }
}

}  // namespace

const std::vector<VerifyCheck>& verify_registry() {
  static const std::vector<VerifyCheck> registry = {
      {"chebyshev_core/lemma4_grid",
       "cosine product bounded by |PhiBar| on the [m, L] grid, K = 1..64",
       check_lemma4_grid},
      {"chebyshev_core/lemma3_bound",
       "max |PhiBar| bounded by the convergence-rate envelope", check_lemma3_bound},
      {"chebyshev_core/psi_bound", "|psi| <= 1 on [0, 100], equality only at 0",
       check_psi_bound},
      {"chebyshev_core/product_identity",
       "PhiBar matches the root-product form to 1e-9 relative",
       check_product_identity},
      {"chebyshev_core/recurrence_match",
       "closed-form Chebyshev evaluation matches the three-term recurrence",
       check_recurrence_match},
      {"chebyshev_core/gd_contraction_identity",
       "GD with Chebyshev step sizes contracts coordinates by PhiBar",
       check_gd_contraction_identity},
      {"schedules/pair_sum_monotone",
       "pair_time_sum nondecreasing over k for K in {4, 10, 100, 400}",
       check_pair_sum_monotone},
      {"schedules/permutation_invariance",
       "contraction factor identical across schedule permutations",
       check_permutation_invariance},
      {"schedules/average_time_approx",
       "K = 400 average time within 15% of (pi/2)/sqrt(L+m)",
       check_average_time_approx},
      {"potentials/gradient_fd",
       "gradients match centered finite differences on all five potentials",
       check_gradient_fd},
      {"potentials/mixture_gate",
       "mixture constructor rejects a^T Sigma^{-1} a >= 1", check_mixture_gate},
      {"potentials/hard_bounds",
       "hard potential curvature within [kappa/3, kappa], coordinate 1 equals 1",
       check_hard_bounds},
      {"potentials/logistic_min_eig",
       "logistic Hessian minimum eigenvalue >= alpha everywhere",
       check_logistic_min_eig},
      {"ideal_flow/energy_conservation",
       "exact flow conserves the Hamiltonian to 1e-10 relative",
       check_energy_conservation},
      {"ideal_flow/coupling_identity",
       "coupled deviation equals the difference of shared-velocity flows",
       check_coupling_identity},
      {"ideal_flow/theorem1_contraction",
       "Chebyshev contraction factor below the rate bound for K = 1..64",
       check_theorem1_contraction},
      {"ideal_flow/w2_coupled_chains",
       "coupled-chain RMS gap equals contraction factor times initial gap",
       check_w2_coupled_chains},
      {"hmc_sampler/leapfrog_reversibility",
       "velocity-flip reversibility to 1e-8 on all five potentials",
       check_leapfrog_reversibility},
      {"hmc_sampler/leapfrog_volume",
       "phase-space Jacobian determinant equals 1 within 1e-4",
       check_leapfrog_volume},
      {"hmc_sampler/energy_error_scaling",
       "median |dH| shrinks ~4x when theta is halved", check_energy_error_scaling},
      {"hmc_sampler/reject_copies",
       "rejected iterations repeat the previous position bit-exactly",
       check_reject_copies},
      {"hmc_sampler/stationarity_smoke",
       "chains started at stationarity keep the target moments (5%)",
       check_stationarity_smoke},
      {"diagnostics/ess_iid_range", "ESS of iid draws stays within [0.8N, 1.2N]",
       check_ess_iid_range},
      {"diagnostics/tv_symmetry_range",
       "discrete TV is symmetric and confined to [0, 1]", check_tv_symmetry_range},
      {"diagnostics/w2_triangle",
       "Gaussian W2 satisfies the triangle inequality on random triples",
       check_w2_triangle},
      {"diagnostics/cov_order_invariance",
       "covariance error invariant to sample ordering", check_cov_order_invariance},
      {"harness/csv_reproducibility",
       "identical configs produce identical CSV bytes", check_csv_reproducibility},
  };
  return registry;
}

VerifyOutcome run_verify(const VerifyContext& context, std::ostream& out) {
  VerifyOutcome outcome;
  for (const VerifyCheck& check : verify_registry()) {
    ++outcome.total;
    std::string detail;
    bool passed = true;
    try {
      check.run(context);
    } catch (const std::exception& e) {
      passed = false;
      detail = e.what();
    }
    out << (passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(42)
        << check.id << ' ' << (passed ? check.description : detail) << '\n';
    if (!passed) ++outcome.failures;
  }
  out << "verify: " << (outcome.total - outcome.failures) << '/' << outcome.total
      << " checks passed\n";
  return outcome;
}

}  // namespace chebhmc
