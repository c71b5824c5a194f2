#pragma once

#include <stdexcept>

namespace chebhmc {

// Strong-convexity / smoothness pair of a potential. The condition number
// kappa = L/m is always derived from the stored pair.
struct SpectralBounds {
  double m;  // strong convexity constant
  double L;  // smoothness constant

  SpectralBounds(double m_in, double L_in) : m(m_in), L(L_in) {
    if (!(m > 0.0) || !(m <= L)) {
      throw std::invalid_argument("SpectralBounds: need 0 < m <= L");
    }
  }

  double kappa() const { return L / m; }
  bool degenerate() const { return m == L; }
};

}  // namespace chebhmc
