#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>

#include "chebhmc/spectral.hpp"

namespace chebhmc {

struct GroundTruthMoments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

// A target potential f with pi(x) proportional to exp(-f(x)). Value and
// gradient are always present; the Hessian is analytic for all built-in
// potentials. exact_flow_eigenvalues is set only for diagonal quadratic
// potentials f(x) = sum lambda_j x_j^2, where the Hamiltonian flow has the
// sinusoidal closed form. Immutable after construction; evaluation is pure.
struct PotentialSpec {
  std::string name;
  int dim = 0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  std::function<Eigen::MatrixXd(const Eigen::VectorXd&)> hessian;
  SpectralBounds bounds{1.0, 1.0};
  std::optional<Eigen::VectorXd> exact_flow_eigenvalues;
  std::optional<GroundTruthMoments> truth;
};

// Binary classification data with labels in {-1, +1}.
struct LabeledDataset {
  Eigen::MatrixXd features;  // n x d, rows are observations
  Eigen::VectorXd labels;    // entries in {-1, +1}
  int n() const { return static_cast<int>(features.rows()); }
  int dim() const { return static_cast<int>(features.cols()); }
};

// CSV with a header row; the column named "label" holds {0,1} and is mapped
// to {-1,+1}; every other column is a numeric feature. With standardize on
// (the default) features are centered and scaled to unit sample variance.
LabeledDataset load_labeled_csv(const std::string& path, bool standardize = true);

// f(x) = sum_j lambda_j x_j^2. Ground truth is the density exp(-f), i.e.
// a zero-mean Gaussian with covariance diag(1 / (2 lambda_j)).
PotentialSpec quadratic_diag(const Eigen::VectorXd& eigenvalues);

// f(x) = 1/2 (x - mu)^T Sigma^{-1} (x - mu); bounds are the extreme
// eigenvalues of Sigma^{-1}.
PotentialSpec gaussian_general(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& covariance);

// Equal-weight mixture of N(a, Sigma) and N(-a, Sigma):
//   f(x) = 1/2 ||x - a||_Lambda^2 - log(1 + exp(-2 x^T b)),
// with Lambda = Sigma^{-1}, b = Lambda a. Requires a^T Sigma^{-1} a < 1
// (strong convexity). Bounds are the extreme eigenvalues of Lambda.
PotentialSpec gaussian_mixture(const Eigen::VectorXd& a,
                               const Eigen::MatrixXd& covariance);

// Bayesian logistic regression posterior potential
//   f(w) = sum_i log(1 + exp(-y_i w^T z_i)) + alpha ||w||^2 / 2.
// Bounds come from the Hessian spectrum at the Newton-computed MAP.
PotentialSpec logistic_regression(const LabeledDataset& data, double alpha);

// Step-size-dependent "hard" potential: coordinate 1 is 1/2 x^2, coordinates
// 2..d are (kappa/3) x^2 - (kappa h / 3) cos(x / sqrt(h)). Bounds (1, kappa).
PotentialSpec hard_potential(double kappa, double h, int dim);

// Newton iteration to ||grad f|| <= tol; needs the analytic Hessian.
Eigen::VectorXd newton_map(const PotentialSpec& potential, Eigen::VectorXd x0,
                           double tol = 1e-8, int max_iter = 100);

// Extreme eigenvalues of the (symmetric) Hessian at x.
SpectralBounds hessian_extreme_eigs(const PotentialSpec& potential,
                                    const Eigen::VectorXd& x);

}  // namespace chebhmc
