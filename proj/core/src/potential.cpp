#include "chebhmc/potential.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace chebhmc {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) {
  if (z > 0.0) return z + std::log1p(std::exp(-z));
  return std::log1p(std::exp(z));
}

// 1 / (1 + exp(-z)) without overflow.
double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::MatrixXd checked_symmetric(const PotentialSpec& potential,
                                  const Eigen::VectorXd& x) {
  if (!potential.hessian) {
    throw std::logic_error(potential.name + ": analytic Hessian not available");
  }
  Eigen::MatrixXd h = potential.hessian(x);
  const double scale = 1.0 + h.cwiseAbs().maxCoeff();
  if (((h - h.transpose()).cwiseAbs().maxCoeff()) > 1e-8 * scale) {
    throw std::runtime_error(potential.name + ": Hessian asymmetry beyond 1e-8");
  }
  return h;
}

}  // namespace

PotentialSpec quadratic_diag(const Eigen::VectorXd& eigenvalues) {
  if (eigenvalues.size() == 0 || (eigenvalues.array() <= 0.0).any()) {
    throw std::invalid_argument("quadratic_diag: eigenvalues must be positive");
  }
  const int d = static_cast<int>(eigenvalues.size());
  const Eigen::VectorXd lambda = eigenvalues;

  PotentialSpec p;
  p.name = "quadratic_diag";
  p.dim = d;
  p.value = [lambda](const Eigen::VectorXd& x) {
    return lambda.dot(x.cwiseProduct(x));
  };
  p.gradient = [lambda](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(2.0 * lambda.cwiseProduct(x));
  };
  p.hessian = [lambda, d](const Eigen::VectorXd&) {
    return Eigen::MatrixXd((2.0 * lambda).asDiagonal().toDenseMatrix());
  };
  p.bounds = SpectralBounds(lambda.minCoeff(), lambda.maxCoeff());
  p.exact_flow_eigenvalues = lambda;
  p.truth = GroundTruthMoments{
      Eigen::VectorXd::Zero(d),
      Eigen::MatrixXd((0.5 * lambda.cwiseInverse()).asDiagonal()),
  };
  return p;
}

PotentialSpec gaussian_general(const Eigen::VectorXd& mean,
                               const Eigen::MatrixXd& covariance) {
  const int d = static_cast<int>(mean.size());
  if (covariance.rows() != d || covariance.cols() != d) {
    throw std::invalid_argument("gaussian_general: dimension mismatch");
  }
  const double scale = 1.0 + covariance.cwiseAbs().maxCoeff();
  if ((covariance - covariance.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw std::invalid_argument("gaussian_general: covariance not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("gaussian_general: covariance not positive definite");
  }
  const Eigen::MatrixXd precision = eig.operatorInverseSqrt() * eig.operatorInverseSqrt();
  const Eigen::VectorXd mu = mean;

  PotentialSpec p;
  p.name = "gaussian";
  p.dim = d;
  p.value = [precision, mu](const Eigen::VectorXd& x) {
    const Eigen::VectorXd c = x - mu;
    return 0.5 * c.dot(precision * c);
  };
  p.gradient = [precision, mu](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(precision * (x - mu));
  };
  p.hessian = [precision](const Eigen::VectorXd&) { return precision; };
  p.bounds = SpectralBounds(1.0 / eig.eigenvalues().maxCoeff(),
                            1.0 / eig.eigenvalues().minCoeff());
  p.truth = GroundTruthMoments{mu, covariance};
  return p;
}

PotentialSpec gaussian_mixture(const Eigen::VectorXd& a,
                               const Eigen::MatrixXd& covariance) {
  const int d = static_cast<int>(a.size());
  if (covariance.rows() != d || covariance.cols() != d) {
    throw std::invalid_argument("gaussian_mixture: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("gaussian_mixture: covariance not positive definite");
  }
  const Eigen::MatrixXd lambda_mat =
      eig.operatorInverseSqrt() * eig.operatorInverseSqrt();
  const Eigen::VectorXd b = lambda_mat * a;
  if (a.dot(b) >= 1.0) {
    throw std::invalid_argument(
        "gaussian_mixture: a^T Sigma^{-1} a >= 1, potential not strongly convex");
  }
  const Eigen::VectorXd center = a;

  PotentialSpec p;
  p.name = "mixture";
  p.dim = d;
  p.value = [lambda_mat, b, center](const Eigen::VectorXd& x) {
    const Eigen::VectorXd c = x - center;
    return 0.5 * c.dot(lambda_mat * c) - softplus(-2.0 * x.dot(b));
  };
  p.gradient = [lambda_mat, b, center](const Eigen::VectorXd& x) {
    return Eigen::VectorXd(lambda_mat * (x - center) +
                           2.0 * sigmoid(-2.0 * x.dot(b)) * b);
  };
  p.hessian = [lambda_mat, b](const Eigen::VectorXd& x) {
    const double s = sigmoid(2.0 * x.dot(b));
    return Eigen::MatrixXd(lambda_mat - 4.0 * s * (1.0 - s) * b * b.transpose());
  };
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> leig(lambda_mat);
  p.bounds = SpectralBounds(leig.eigenvalues().minCoeff(),
                            leig.eigenvalues().maxCoeff());
  p.truth = GroundTruthMoments{
      Eigen::VectorXd::Zero(d),
      Eigen::MatrixXd(covariance + a * a.transpose()),
  };
  return p;
}

PotentialSpec logistic_regression(const LabeledDataset& data, double alpha) {
  if (data.n() == 0) throw std::invalid_argument("logistic_regression: empty dataset");
  if (!data.features.allFinite()) {
    throw std::invalid_argument("logistic_regression: non-finite features");
  }
  if (((data.labels.array() != 1.0) && (data.labels.array() != -1.0)).any()) {
    throw std::invalid_argument("logistic_regression: labels must be in {-1,+1}");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("logistic_regression: alpha <= 0");

  const Eigen::MatrixXd z = data.features;
  const Eigen::VectorXd y = data.labels;
  const int d = data.dim();

  PotentialSpec p;
  p.name = "logistic";
  p.dim = d;
  p.value = [z, y, alpha](const Eigen::VectorXd& w) {
    const Eigen::VectorXd margins = y.cwiseProduct(z * w);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < margins.size(); ++i) loss += softplus(-margins[i]);
    return loss + 0.5 * alpha * w.squaredNorm();
  };
  p.gradient = [z, y, alpha](const Eigen::VectorXd& w) {
    const Eigen::VectorXd margins = y.cwiseProduct(z * w);
    Eigen::VectorXd coeff(margins.size());
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      coeff[i] = -y[i] * sigmoid(-margins[i]);
    }
    return Eigen::VectorXd(z.transpose() * coeff + alpha * w);
  };
  p.hessian = [z, y, alpha, d](const Eigen::VectorXd& w) {
    const Eigen::VectorXd margins = y.cwiseProduct(z * w);
    Eigen::VectorXd weight(margins.size());
    for (Eigen::Index i = 0; i < margins.size(); ++i) {
      const double s = sigmoid(margins[i]);
      weight[i] = s * (1.0 - s);
    }
    Eigen::MatrixXd h = z.transpose() * weight.asDiagonal() * z;
    h += alpha * Eigen::MatrixXd::Identity(d, d);
    return h;
  };

  const Eigen::VectorXd map = newton_map(p, Eigen::VectorXd::Zero(d));
  p.bounds = hessian_extreme_eigs(p, map);
  return p;
}

PotentialSpec hard_potential(double kappa, double h, int dim) {
  if (kappa < 1.0) throw std::invalid_argument("hard_potential: kappa < 1");
  if (!(h > 0.0)) throw std::invalid_argument("hard_potential: h <= 0");
  if (dim < 1) throw std::invalid_argument("hard_potential: dim < 1");
  const double sqrt_h = std::sqrt(h);

  PotentialSpec p;
  p.name = "hard";
  p.dim = dim;
  p.value = [kappa, h, sqrt_h](const Eigen::VectorXd& x) {
    double f = 0.5 * x[0] * x[0];
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      f += kappa / 3.0 * x[i] * x[i] -
           kappa * h / 3.0 * std::cos(x[i] / sqrt_h);
    }
    return f;
  };
  p.gradient = [kappa, sqrt_h](const Eigen::VectorXd& x) {
    Eigen::VectorXd g(x.size());
    g[0] = x[0];
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      g[i] = 2.0 * kappa / 3.0 * x[i] +
             kappa * sqrt_h / 3.0 * std::sin(x[i] / sqrt_h);
    }
    return g;
  };
  p.hessian = [kappa, sqrt_h](const Eigen::VectorXd& x) {
    Eigen::VectorXd diag(x.size());
    diag[0] = 1.0;
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      diag[i] = 2.0 * kappa / 3.0 + kappa / 3.0 * std::cos(x[i] / sqrt_h);
    }
    return Eigen::MatrixXd(diag.asDiagonal());
  };
  p.bounds = SpectralBounds(1.0, kappa);
  return p;
}

Eigen::VectorXd newton_map(const PotentialSpec& potential, Eigen::VectorXd x0,
                           double tol, int max_iter) {
  for (int iter = 0; iter < max_iter; ++iter) {
    const Eigen::VectorXd g = potential.gradient(x0);
    if (g.norm() <= tol) return x0;
    const Eigen::MatrixXd h = checked_symmetric(potential, x0);
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("newton_map: singular or indefinite Hessian");
    }
    x0 -= llt.solve(g);
  }
  if (potential.gradient(x0).norm() <= tol) return x0;
  throw std::runtime_error("newton_map: no convergence after max_iter");
}

SpectralBounds hessian_extreme_eigs(const PotentialSpec& potential,
                                    const Eigen::VectorXd& x) {
  const Eigen::MatrixXd h = checked_symmetric(potential, x);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
  return SpectralBounds(eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff());
}

LabeledDataset load_labeled_csv(const std::string& path, bool standardize) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_labeled_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_labeled_csv: empty file " + path);
  }
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  int label_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "label") label_col = static_cast<int>(i);
  }
  if (label_col < 0) {
    throw std::runtime_error("load_labeled_csv: no 'label' column in " + path);
  }
  const int d = static_cast<int>(header.size()) - 1;
  if (d < 1) throw std::runtime_error("load_labeled_csv: no feature columns");

  std::vector<double> feats;
  std::vector<double> labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    int col = 0;
    while (std::getline(ss, cell, ',')) {
      const double v = std::stod(cell);
      if (col == label_col) {
        if (v != 0.0 && v != 1.0) {
          throw std::runtime_error("load_labeled_csv: label not in {0,1}");
        }
        labels.push_back(v == 1.0 ? 1.0 : -1.0);
      } else {
        if (!std::isfinite(v)) {
          throw std::runtime_error("load_labeled_csv: non-finite feature");
        }
        feats.push_back(v);
      }
      ++col;
    }
    if (col != static_cast<int>(header.size())) {
      throw std::runtime_error("load_labeled_csv: ragged row");
    }
  }
  const int n = static_cast<int>(labels.size());
  if (n == 0) throw std::runtime_error("load_labeled_csv: no data rows");

  LabeledDataset data;
  data.features = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                           Eigen::RowMajor>>(feats.data(), n, d);
  data.labels = Eigen::Map<Eigen::VectorXd>(labels.data(), n);

  if (standardize && n > 1) {
    for (int j = 0; j < d; ++j) {
      const double mean = data.features.col(j).mean();
      data.features.col(j).array() -= mean;
      const double sd = std::sqrt(data.features.col(j).squaredNorm() / (n - 1));
      if (sd > 0.0) data.features.col(j) /= sd;
    }
  }
  return data;
}

}  // namespace chebhmc
