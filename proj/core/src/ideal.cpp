#include "chebhmc/ideal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "chebhmc/rng.hpp"

namespace chebhmc {

PhaseState exact_flow(const Eigen::VectorXd& eigenvalues, const PhaseState& s0,
                      double t) {
  const Eigen::Index d = eigenvalues.size();
  if (s0.position.size() != d || s0.velocity.size() != d) {
    throw std::invalid_argument("exact_flow: dimension mismatch");
  }
  if (t < 0.0) throw std::invalid_argument("exact_flow: negative time");

  PhaseState out{Eigen::VectorXd(d), Eigen::VectorXd(d)};
  for (Eigen::Index j = 0; j < d; ++j) {
    const double omega = std::sqrt(2.0 * eigenvalues[j]);
    const double c = std::cos(omega * t);
    const double s = std::sin(omega * t);
    out.position[j] = c * s0.position[j] + s / omega * s0.velocity[j];
    out.velocity[j] = -omega * s * s0.position[j] + c * s0.velocity[j];
  }
  return out;
}

IdealTrace ideal_hmc_run(const Eigen::VectorXd& eigenvalues,
                         const IntegrationSchedule& schedule,
                         const Eigen::VectorXd& x0, std::uint64_t seed,
                         std::uint64_t stream_id) {
  if (schedule.iterations < 1) throw std::invalid_argument("ideal_hmc_run: K < 1");
  const Eigen::Index d = eigenvalues.size();
  if (x0.size() != d) throw std::invalid_argument("ideal_hmc_run: dimension mismatch");

  RngStream rng(seed, stream_id);
  IdealTrace trace{{}, schedule, seed};
  trace.states.reserve(schedule.iterations + 1);
  trace.states.push_back(x0);

  PhaseState state{x0, Eigen::VectorXd::Zero(d)};
  for (int k = 0; k < schedule.iterations; ++k) {
    state.velocity = rng.normal_vector(d);
    state = exact_flow(eigenvalues, state, schedule.times[k]);
    trace.states.push_back(state.position);
  }
  return trace;
}

Eigen::VectorXd coupled_deviation(const Eigen::VectorXd& eigenvalues,
                                  const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& y0, double t) {
  const Eigen::Index d = eigenvalues.size();
  if (x0.size() != d || y0.size() != d) {
    throw std::invalid_argument("coupled_deviation: dimension mismatch");
  }
  Eigen::VectorXd dev(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    dev[j] = std::cos(std::sqrt(2.0 * eigenvalues[j]) * t) * (x0[j] - y0[j]);
  }
  return dev;
}

double contraction_factor(const Eigen::VectorXd& eigenvalues,
                          const IntegrationSchedule& schedule) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
    const double omega = std::sqrt(2.0 * eigenvalues[j]);
    // log-magnitude accumulation; a single exact zero kills the product.
    double log_abs = 0.0;
    bool zero = false;
    for (double eta : schedule.times) {
      const double c = std::cos(omega * eta);
      if (c == 0.0) {
        zero = true;
        break;
      }
      log_abs += std::log(std::abs(c));
    }
    const double factor = zero ? 0.0 : std::exp(log_abs);
    if (factor > best) best = factor;
  }
  return best;
}

}  // namespace chebhmc
