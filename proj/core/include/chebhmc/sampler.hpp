#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "chebhmc/ideal.hpp"
#include "chebhmc/potential.hpp"
#include "chebhmc/rng.hpp"
#include "chebhmc/schedule.hpp"

namespace chebhmc {

// The listing performs two half-kicks per leapfrog iteration. kLiteral keeps
// that form (two gradient evaluations per step); kFused merges adjacent
// half-kicks into full kicks (S+1 gradient evaluations per trajectory),
// which is algebraically identical.
enum class KickForm { kLiteral, kFused };

struct ChainOptions {
  KickForm kick = KickForm::kLiteral;
  // Test hook: treats the acceptance threshold draw as zeta = 1 so every
  // proposal is rejected.
  bool force_reject = false;
};

// Per-iteration chain record. Rejected iterations repeat the previous
// position bit-exactly.
struct ChainTrace {
  Eigen::MatrixXd samples;               // K x d, row k = position after iteration k
  std::vector<bool> accepted;            // size K
  std::vector<double> acceptance_ratios; // alpha_k in (0, 1]
  std::vector<int> steps_per_iter;       // S_k = floor(eta_k / theta) >= 1
  IntegrationSchedule schedule;
  double theta;
  std::uint64_t seed;
  long grad_evals = 0;
  double acceptance_rate() const;
};

struct HmcStepResult {
  Eigen::VectorXd position;
  bool accepted;
  double acceptance_ratio;
  int leapfrog_steps;
};

// S velocity-Verlet steps of size theta from state s. Throws on a non-finite
// state (blow-up from a too-large step). grad_evals, when given, is
// incremented once per gradient evaluation.
PhaseState leapfrog(const PotentialSpec& potential, PhaseState s, double theta,
                    int steps, KickForm form = KickForm::kLiteral,
                    long* grad_evals = nullptr);

// One Metropolis-adjusted HMC iteration: draw xi ~ N(0, I), run
// floor(eta/theta) leapfrog steps, accept with probability
// min(1, exp(H(x, xi) - H(x_S, v_S))). The comparison happens in log space.
HmcStepResult hmc_step(const PotentialSpec& potential, const Eigen::VectorXd& x,
                       double eta, double theta, RngStream& rng,
                       const ChainOptions& options = {},
                       long* grad_evals = nullptr);

// Full chain following the schedule in execution order. Deterministic given
// (seed, stream_id).
ChainTrace run_chain(const PotentialSpec& potential,
                     const IntegrationSchedule& schedule, double theta,
                     const Eigen::VectorXd& x0, std::uint64_t seed,
                     const ChainOptions& options = {},
                     std::uint64_t stream_id = 0);

}  // namespace chebhmc
