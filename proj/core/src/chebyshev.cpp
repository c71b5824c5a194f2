#include "chebhmc/chebyshev.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace chebhmc {

namespace {

constexpr double kPi = std::numbers::pi;

// log(cosh(a)) for a >= 0 without overflowing exp.
double log_cosh(double a) {
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

void check_nondegenerate(const SpectralBounds& bounds, const char* who) {
  if (bounds.degenerate()) {
    throw std::domain_error(std::string(who) + ": degenerate spectrum m == L");
  }
}

}  // namespace

double cheb_first_kind(int degree, double x) {
  if (degree < 0) throw std::invalid_argument("cheb_first_kind: degree < 0");
  if (degree == 0) return 1.0;
  if (x >= -1.0 && x <= 1.0) {
    return std::cos(degree * std::acos(x));
  }
  const double body = std::cosh(degree * std::acosh(std::abs(x)));
  if (x > 1.0) return body;
  return (degree % 2 == 0) ? body : -body;
}

double h_map(double lambda, const SpectralBounds& bounds) {
  check_nondegenerate(bounds, "h_map");
  return (bounds.L + bounds.m - 2.0 * lambda) / (bounds.L - bounds.m);
}

double phi_bar(int degree, double lambda, const SpectralBounds& bounds) {
  if (degree < 1) throw std::invalid_argument("phi_bar: degree < 1");
  check_nondegenerate(bounds, "phi_bar");

  // h(0) > 1 always, so the denominator is cosh(K arccosh h(0)).
  const double arg0 = degree * std::acosh(h_map(0.0, bounds));
  const double hl = h_map(lambda, bounds);

  if (arg0 < 500.0) {
    return cheb_first_kind(degree, hl) / std::cosh(arg0);
  }

  // Log-space path for large K: split numerator into sign and log magnitude.
  double log_num;
  double sign = 1.0;
  if (hl >= -1.0 && hl <= 1.0) {
    const double num = std::cos(degree * std::acos(hl));
    if (num == 0.0) return 0.0;
    sign = (num < 0.0) ? -1.0 : 1.0;
    log_num = std::log(std::abs(num));
  } else {
    log_num = log_cosh(degree * std::acosh(std::abs(hl)));
    if (hl < -1.0 && degree % 2 != 0) sign = -1.0;
  }
  return sign * std::exp(log_num - log_cosh(arg0));
}

ChebyshevRootSet cheb_roots(int degree, const SpectralBounds& bounds) {
  if (degree < 1) throw std::invalid_argument("cheb_roots: degree < 1");
  const double center = 0.5 * (bounds.L + bounds.m);
  const double halfwidth = 0.5 * (bounds.L - bounds.m);
  std::vector<double> roots(degree);
  for (int k = 1; k <= degree; ++k) {
    roots[k - 1] = center - halfwidth * std::cos((k - 0.5) * kPi / degree);
  }
  return ChebyshevRootSet{degree, std::move(roots), bounds};
}

double rate_bound(int degree, const SpectralBounds& bounds) {
  if (degree < 0) throw std::invalid_argument("rate_bound: degree < 0");
  if (degree == 0) return 2.0;
  const double base = -2.0 * std::sqrt(bounds.m) /
                      (std::sqrt(bounds.L) + std::sqrt(bounds.m));
  if (base == -1.0) return 0.0;  // m == L
  return 2.0 * std::exp(degree * std::log1p(base));
}

double cosine_product(double lambda, const ChebyshevRootSet& roots) {
  if (lambda < 0.0) throw std::domain_error("cosine_product: lambda < 0");
  if (roots.degree <= 64) {
    double product = 1.0;
    for (double r : roots.roots) {
      product *= std::cos(0.5 * kPi * std::sqrt(lambda / r));
    }
    return product;
  }
  // Large products underflow; accumulate log magnitude and sign.
  double log_abs = 0.0;
  double sign = 1.0;
  for (double r : roots.roots) {
    const double c = std::cos(0.5 * kPi * std::sqrt(lambda / r));
    if (c == 0.0) return 0.0;
    if (c < 0.0) sign = -sign;
    log_abs += std::log(std::abs(c));
  }
  return sign * std::exp(log_abs);
}

double psi(double x) {
  if (x < 0.0) throw std::domain_error("psi: negative input");
  // With u = sqrt(x), cos((pi/2) u) = -sin((pi/2)(u - 1)) and
  // 1 - x = -(u - 1)(u + 1), so psi = (pi/2) sinc((pi/2)(u - 1)) / (1 + u).
  // The sinc form is exact and continuous through the x = 1 singularity.
  const double u = std::sqrt(x);
  const double t = 0.5 * kPi * (u - 1.0);
  const double sinc = (t == 0.0) ? 1.0 : std::sin(t) / t;
  return 0.5 * kPi * sinc / (1.0 + u);
}

Eigen::VectorXd gd_chebyshev_contraction(const Eigen::VectorXd& eigenvalues,
                                         const ChebyshevRootSet& roots,
                                         const Eigen::VectorXd& x0) {
  if (eigenvalues.size() != x0.size()) {
    throw std::invalid_argument("gd_chebyshev_contraction: dimension mismatch");
  }
  Eigen::VectorXd w = x0;
  for (double r : roots.roots) {
    const double step = 1.0 / r;
    // grad f(w)_j = lambda_j w_j for f(w) = 1/2 sum lambda_j w_j^2
    w -= step * eigenvalues.cwiseProduct(w);
  }
  return w;
}

}  // namespace chebhmc
