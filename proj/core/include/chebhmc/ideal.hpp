#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "chebhmc/schedule.hpp"

namespace chebhmc {

struct PhaseState {
  Eigen::VectorXd position;
  Eigen::VectorXd velocity;
};

// Chain record of ideal HMC: states[0] is the initial point, states[k] the
// position after iteration k, so there are K+1 entries.
struct IdealTrace {
  std::vector<Eigen::VectorXd> states;
  IntegrationSchedule schedule;
  std::uint64_t seed;
};

// Exact Hamiltonian flow for f(x) = sum_j lambda_j x_j^2, integrated for
// time t. Per coordinate, with omega = sqrt(2 lambda_j):
//   x_t = cos(omega t) x_0 + sin(omega t) v_0 / omega
//   v_t = -omega sin(omega t) x_0 + cos(omega t) v_0
// The Hamiltonian f(x) + ||v||^2 / 2 is conserved.
PhaseState exact_flow(const Eigen::VectorXd& eigenvalues, const PhaseState& s0,
                      double t);

// Ideal HMC: at each iteration draw a fresh standard-normal velocity and run
// the exact flow for the scheduled time. stream_id selects the chain's
// random stream, making ensembles reproducible and order-independent.
IdealTrace ideal_hmc_run(const Eigen::VectorXd& eigenvalues,
                         const IntegrationSchedule& schedule,
                         const Eigen::VectorXd& x0, std::uint64_t seed,
                         std::uint64_t stream_id = 0);

// Deviation between two flows coupled through a shared velocity:
// entry j is cos(sqrt(2 lambda_j) t) (x0[j] - y0[j]).
Eigen::VectorXd coupled_deviation(const Eigen::VectorXd& eigenvalues,
                                  const Eigen::VectorXd& x0,
                                  const Eigen::VectorXd& y0, double t);

// W2 contraction coefficient of the schedule over the given spectrum:
//   max_j | prod_k cos(sqrt(2 lambda_j) eta_k) |.
double contraction_factor(const Eigen::VectorXd& eigenvalues,
                          const IntegrationSchedule& schedule);

}  // namespace chebhmc
