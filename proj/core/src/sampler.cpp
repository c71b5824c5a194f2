#include "chebhmc/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chebhmc {

namespace {

double hamiltonian(const PotentialSpec& potential, const PhaseState& s) {
  return potential.value(s.position) + 0.5 * s.velocity.squaredNorm();
}

void check_finite(const PhaseState& s) {
  if (!s.position.allFinite() || !s.velocity.allFinite()) {
    throw std::runtime_error("leapfrog: non-finite state (step size too large?)");
  }
}

}  // namespace

double ChainTrace::acceptance_rate() const {
  if (accepted.empty()) return 0.0;
  long n = std::count(accepted.begin(), accepted.end(), true);
  return static_cast<double>(n) / static_cast<double>(accepted.size());
}

PhaseState leapfrog(const PotentialSpec& potential, PhaseState s, double theta,
                    int steps, KickForm form, long* grad_evals) {
  if (steps < 1) throw std::invalid_argument("leapfrog: steps < 1");
  if (!(theta > 0.0)) throw std::invalid_argument("leapfrog: theta <= 0");

  long evals = 0;
  if (form == KickForm::kLiteral) {
    for (int step = 0; step < steps; ++step) {
      const Eigen::VectorXd half_kicked =
          s.velocity - 0.5 * theta * potential.gradient(s.position);
      s.position += theta * half_kicked;
      s.velocity = half_kicked - 0.5 * theta * potential.gradient(s.position);
      evals += 2;
      check_finite(s);
    }
  } else {
    s.velocity -= 0.5 * theta * potential.gradient(s.position);
    ++evals;
    for (int step = 0; step < steps; ++step) {
      s.position += theta * s.velocity;
      const Eigen::VectorXd g = potential.gradient(s.position);
      ++evals;
      s.velocity -= (step + 1 < steps ? theta : 0.5 * theta) * g;
      check_finite(s);
    }
  }
  if (grad_evals) *grad_evals += evals;
  return s;
}

HmcStepResult hmc_step(const PotentialSpec& potential, const Eigen::VectorXd& x,
                       double eta, double theta, RngStream& rng,
                       const ChainOptions& options, long* grad_evals) {
  const int steps = static_cast<int>(std::floor(eta / theta));
  if (steps < 1) {
    throw std::invalid_argument("hmc_step: floor(eta/theta) < 1");
  }

  PhaseState state{x, rng.normal_vector(x.size())};
  const double h_initial = hamiltonian(potential, state);
  const PhaseState proposal =
      leapfrog(potential, state, theta, steps, options.kick, grad_evals);
  const double h_final = hamiltonian(potential, proposal);

  const double log_alpha = std::min(0.0, h_initial - h_final);
  const double zeta = options.force_reject ? 1.0 : rng.uniform();
  const bool accepted = std::log(zeta) < log_alpha;

  // alpha is reported in (0, 1]; exp underflow is clamped to the smallest
  // positive double.
  const double alpha =
      std::max(std::exp(log_alpha), std::numeric_limits<double>::min());
  if (accepted) {
    return HmcStepResult{proposal.position, true, alpha, steps};
  }
  return HmcStepResult{x, false, alpha, steps};
}

ChainTrace run_chain(const PotentialSpec& potential,
                     const IntegrationSchedule& schedule, double theta,
                     const Eigen::VectorXd& x0, std::uint64_t seed,
                     const ChainOptions& options, std::uint64_t stream_id) {
  if (x0.size() != potential.dim) {
    throw std::invalid_argument("run_chain: x0 dimension mismatch");
  }
  for (double eta : schedule.times) {
    if (static_cast<int>(std::floor(eta / theta)) < 1) {
      throw std::invalid_argument(
          "run_chain: schedule/theta incompatible, some S_k = 0");
    }
  }

  const int iterations = schedule.iterations;
  RngStream rng(seed, stream_id);
  ChainTrace trace{Eigen::MatrixXd(iterations, potential.dim),
                   {},
                   {},
                   {},
                   schedule,
                   theta,
                   seed,
                   0};
  trace.accepted.reserve(iterations);
  trace.acceptance_ratios.reserve(iterations);
  trace.steps_per_iter.reserve(iterations);

  Eigen::VectorXd x = x0;
  for (int k = 0; k < iterations; ++k) {
    HmcStepResult step = hmc_step(potential, x, schedule.times[k], theta, rng,
                                  options, &trace.grad_evals);
    x = std::move(step.position);
    trace.samples.row(k) = x;
    trace.accepted.push_back(step.accepted);
    trace.acceptance_ratios.push_back(step.acceptance_ratio);
    trace.steps_per_iter.push_back(step.leapfrog_steps);
  }
  return trace;
}

}  // namespace chebhmc
