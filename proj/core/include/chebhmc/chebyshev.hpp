#pragma once

#include <Eigen/Core>
#include <vector>

#include "chebhmc/spectral.hpp"

namespace chebhmc {

// Roots of the scaled-and-shifted Chebyshev polynomial on [m, L], kept in
// ascending order (k = 1..K unpermuted).
struct ChebyshevRootSet {
  int degree;                 // K
  std::vector<double> roots;  // ascending, size K
  SpectralBounds bounds;
};

// Chebyshev polynomial of the first kind, Phi_K(x). Evaluated as
// cos(K arccos x) on [-1, 1] and through cosh(K arccosh |x|) outside, with
// the parity sign for x < -1. Matches the three-term recurrence
// Phi_{K+1} = 2 x Phi_K - Phi_{K-1} to 1e-10 relative for |x| <= 10, K <= 64.
double cheb_first_kind(int degree, double x);

// Affine map h(lambda) = (L + m - 2 lambda) / (L - m) taking [m, L] onto
// [-1, 1] with h(m) = 1 and h(L) = -1. Throws on a degenerate spectrum m = L.
double h_map(double lambda, const SpectralBounds& bounds);

// Scaled-and-shifted Chebyshev polynomial
//   PhiBar_K(lambda) = Phi_K(h(lambda)) / Phi_K(h(0)),
// normalised so PhiBar_K(0) = 1. Equal to the product over the root set of
// (1 - lambda / r_k). The denominator is evaluated in log space once
// K arccosh(h(0)) would overflow cosh. Throws on m = L.
double phi_bar(int degree, double lambda, const SpectralBounds& bounds);

// The K roots r_k = (L+m)/2 - (L-m)/2 cos((k - 1/2) pi / K), ascending.
// For m = L every root equals m.
ChebyshevRootSet cheb_roots(int degree, const SpectralBounds& bounds);

// Worst-case envelope of |PhiBar_K| over [m, L]:
//   2 (1 - 2 sqrt(m) / (sqrt(L) + sqrt(m)))^K,
// computed in log space so large K neither overflows nor underflows.
double rate_bound(int degree, const SpectralBounds& bounds);

// Product over the root set of cos((pi/2) sqrt(lambda / r_k)). Permutation
// invariant by commutativity. Accumulates log magnitude + sign when the
// root set is large.
double cosine_product(double lambda, const ChebyshevRootSet& roots);

// psi(x) = cos((pi/2) sqrt(x)) / (1 - x) for x >= 0, with the removable
// singularity at x = 1 (value pi/4) handled so the evaluation is continuous.
double psi(double x);

// Gradient descent on f(w) = 1/2 sum_j lambda_j w_j^2 with the Chebyshev
// step sizes eta_k = 1 / r_k, run root-by-root from x0. Per coordinate the
// final iterate equals PhiBar_K(lambda_j) * x0[j].
Eigen::VectorXd gd_chebyshev_contraction(const Eigen::VectorXd& eigenvalues,
                                         const ChebyshevRootSet& roots,
                                         const Eigen::VectorXd& x0);

}  // namespace chebhmc
