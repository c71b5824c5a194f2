#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

namespace chebhmc {

// Per-dimension autocorrelation-based effective sample sizes.
struct EssReport {
  std::vector<double> per_dim_ess;
  double mean_ess = 0.0;
  double min_ess = 0.0;
  int n = 0;
  std::vector<int> lag_cutoffs;  // last lag included per dimension
  std::string to_json() const;
};

// Biased (1/N-normalised) sample autocorrelations gamma(0..max_lag) with
// gamma(0) = 1. Throws on constant input or N < 4.
std::vector<double> autocorrelation(std::span<const double> series, int max_lag);

// ESS = N / (1 + 2 sum_k gamma(k)), with the lag sum truncated by Geyer's
// initial-positive-sequence rule: consecutive pairs gamma(2t) + gamma(2t+1)
// are accumulated while positive. The result is clamped to (0, 2N].
double ess(std::span<const double> series);

// Column-wise ESS of a K x d sample matrix (rows are iterations).
EssReport ess_report(const Eigen::MatrixXd& samples);

// || sigma - sample covariance ||_F with 1/(n-1) normalisation.
double cov_frobenius_error(const Eigen::MatrixXd& samples,
                           const Eigen::MatrixXd& sigma);

// Per dimension, histogram both sample sets over their pooled min-max range
// with `bins` equal-width bins; TV = 0.5 sum |count_a - count_b| / n. The
// returned value is the average of the per-dimension TVs, so it stays in
// [0, 1] regardless of d.
double discrete_tv(const Eigen::MatrixXd& samples_a,
                   const Eigen::MatrixXd& samples_b, int bins = 30);

// Closed-form 2-Wasserstein distance between Gaussians:
// sqrt(||mu1-mu2||^2 + tr(S1 + S2 - 2 (S2^{1/2} S1 S2^{1/2})^{1/2})).
double gaussian_w2(const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1,
                   const Eigen::VectorXd& mu2, const Eigen::MatrixXd& sigma2);

}  // namespace chebhmc
