#include "chebhmc/diagnostics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace chebhmc {

namespace {

struct CenteredSeries {
  std::vector<double> centered;
  double c0;  // 1/N-normalised variance
};

CenteredSeries center(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 4) throw std::invalid_argument("autocorrelation: need N >= 4");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);

  CenteredSeries out;
  out.centered.resize(n);
  double c0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out.centered[i] = series[i] - mean;
    c0 += out.centered[i] * out.centered[i];
  }
  out.c0 = c0 / static_cast<double>(n);
  if (out.c0 == 0.0) {
    throw std::invalid_argument("autocorrelation: constant series (zero variance)");
  }
  return out;
}

double lag_corr(const CenteredSeries& s, std::size_t lag) {
  const std::size_t n = s.centered.size();
  if (lag >= n) return 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i + lag < n; ++i) {
    acc += s.centered[i] * s.centered[i + lag];
  }
  return acc / static_cast<double>(n) / s.c0;
}

struct EssResult {
  double value;
  int cutoff;  // last lag included in the truncated sum
};

EssResult ess_with_cutoff(std::span<const double> series) {
  const CenteredSeries s = center(series);
  const std::size_t n = series.size();

  // Geyer initial positive sequence: accumulate pairs gamma(2t) + gamma(2t+1)
  // while they stay positive. tau = -1 + 2 * sum of accepted pairs.
  double pair_sum_total = 0.0;
  int cutoff = 0;
  for (std::size_t t = 0; 2 * t < n; ++t) {
    const double g_even = lag_corr(s, 2 * t);
    const double g_odd = lag_corr(s, 2 * t + 1);
    const double pair = g_even + g_odd;
    if (pair <= 0.0) break;
    pair_sum_total += pair;
    cutoff = static_cast<int>(2 * t + 1);
  }
  double tau = -1.0 + 2.0 * pair_sum_total;
  // Clamp so ESS stays in (0, 2N].
  tau = std::max(tau, 0.5);
  return EssResult{static_cast<double>(n) / tau, cutoff};
}

}  // namespace

std::vector<double> autocorrelation(std::span<const double> series, int max_lag) {
  if (max_lag < 0) throw std::invalid_argument("autocorrelation: max_lag < 0");
  const CenteredSeries s = center(series);
  std::vector<double> gamma(max_lag + 1);
  for (int k = 0; k <= max_lag; ++k) {
    gamma[k] = lag_corr(s, static_cast<std::size_t>(k));
  }
  return gamma;
}

double ess(std::span<const double> series) { return ess_with_cutoff(series).value; }

EssReport ess_report(const Eigen::MatrixXd& samples) {
  if (samples.rows() < 4) throw std::invalid_argument("ess_report: need K >= 4");
  EssReport report;
  report.n = static_cast<int>(samples.rows());
  const int d = static_cast<int>(samples.cols());
  report.per_dim_ess.reserve(d);
  report.lag_cutoffs.reserve(d);

  for (int j = 0; j < d; ++j) {
    std::vector<double> column(samples.rows());
    Eigen::VectorXd::Map(column.data(), samples.rows()) = samples.col(j);
    const EssResult r = ess_with_cutoff(column);
    report.per_dim_ess.push_back(r.value);
    report.lag_cutoffs.push_back(r.cutoff);
  }
  report.mean_ess = 0.0;
  report.min_ess = report.per_dim_ess.front();
  for (double v : report.per_dim_ess) {
    report.mean_ess += v;
    report.min_ess = std::min(report.min_ess, v);
  }
  report.mean_ess /= d;
  return report;
}

std::string EssReport::to_json() const {
  nlohmann::json j;
  j["per_dim_ess"] = per_dim_ess;
  j["mean_ess"] = mean_ess;
  j["min_ess"] = min_ess;
  j["n"] = n;
  j["lag_cutoffs"] = lag_cutoffs;
  return j.dump(2);
}

double cov_frobenius_error(const Eigen::MatrixXd& samples,
                           const Eigen::MatrixXd& sigma) {
  const Eigen::Index n = samples.rows();
  if (n < 2) throw std::invalid_argument("cov_frobenius_error: need n >= 2");
  const Eigen::RowVectorXd mean = samples.colwise().mean();
  const Eigen::MatrixXd centered = samples.rowwise() - mean;
  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);
  return (sigma - cov).norm();
}

double discrete_tv(const Eigen::MatrixXd& samples_a,
                   const Eigen::MatrixXd& samples_b, int bins) {
  if (samples_a.rows() != samples_b.rows()) {
    throw std::invalid_argument("discrete_tv: sample counts differ");
  }
  if (samples_a.cols() != samples_b.cols()) {
    throw std::invalid_argument("discrete_tv: dimensions differ");
  }
  if (bins < 2) throw std::invalid_argument("discrete_tv: bins < 2");
  const Eigen::Index n = samples_a.rows();
  const Eigen::Index d = samples_a.cols();

  double tv_sum = 0.0;
  std::vector<long> count_a(bins), count_b(bins);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double lo = std::min(samples_a.col(j).minCoeff(), samples_b.col(j).minCoeff());
    const double hi = std::max(samples_a.col(j).maxCoeff(), samples_b.col(j).maxCoeff());
    std::fill(count_a.begin(), count_a.end(), 0L);
    std::fill(count_b.begin(), count_b.end(), 0L);
    const double width = hi - lo;
    auto bin_of = [&](double v) {
      if (width == 0.0) return 0;
      int b = static_cast<int>((v - lo) / width * bins);
      return std::clamp(b, 0, bins - 1);
    };
    for (Eigen::Index i = 0; i < n; ++i) {
      ++count_a[bin_of(samples_a(i, j))];
      ++count_b[bin_of(samples_b(i, j))];
    }
    double diff = 0.0;
    for (int b = 0; b < bins; ++b) {
      diff += std::abs(static_cast<double>(count_a[b] - count_b[b]));
    }
    tv_sum += 0.5 * diff / static_cast<double>(n);
  }
  return tv_sum / static_cast<double>(d);
}

double gaussian_w2(const Eigen::VectorXd& mu1, const Eigen::MatrixXd& sigma1,
                   const Eigen::VectorXd& mu2, const Eigen::MatrixXd& sigma2) {
  auto check = [](const Eigen::MatrixXd& s, const char* which) {
    const double scale = 1.0 + s.cwiseAbs().maxCoeff();
    if ((s - s.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
      throw std::invalid_argument(std::string("gaussian_w2: ") + which +
                                  " not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    if (eig.eigenvalues().minCoeff() < -1e-10 * scale) {
      throw std::invalid_argument(std::string("gaussian_w2: ") + which +
                                  " indefinite");
    }
  };
  check(sigma1, "sigma1");
  check(sigma2, "sigma2");

  // Matrix square roots via symmetric eigendecomposition with eigenvalues
  // clamped at zero.
  auto sqrt_psd = [](const Eigen::MatrixXd& s) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    const Eigen::VectorXd clamped = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return Eigen::MatrixXd(eig.eigenvectors() * clamped.asDiagonal() *
                           eig.eigenvectors().transpose());
  };
  const Eigen::MatrixXd root2 = sqrt_psd(sigma2);
  const Eigen::MatrixXd inner = sqrt_psd(root2 * sigma1 * root2);
  const double trace_term =
      sigma1.trace() + sigma2.trace() - 2.0 * inner.trace();
  const double sq = (mu1 - mu2).squaredNorm() + std::max(trace_term, 0.0);
  return std::sqrt(sq);
}

}  // namespace chebhmc
