#include "chebhmc/figures.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "chebhmc/chebyshev.hpp"
#include "chebhmc/io.hpp"

namespace chebhmc {

std::string figure1_left_csv(const IntegrationSchedule& chebyshev,
                             const IntegrationSchedule& constant,
                             double grid_step) {
  if (chebyshev.iterations != constant.iterations) {
    throw std::invalid_argument("figure1_left_csv: schedules differ in K");
  }
  if (!(grid_step > 0.0)) throw std::invalid_argument("figure1_left_csv: step <= 0");
  const SpectralBounds& b = chebyshev.bounds;

  std::vector<double> grid;
  for (double lam = b.m; lam <= b.L + 0.5 * grid_step; lam += grid_step) {
    grid.push_back(std::min(lam, b.L));
  }

  // Prefix cosine products per lambda, accumulated as log magnitudes so the
  // K = 400 tails stay representable.
  const int iterations = chebyshev.iterations;
  const std::size_t n = grid.size();
  std::vector<double> log_cheb(n, 0.0), log_const(n, 0.0);

  std::ostringstream out;
  out << "k,chebyshev,constant\n";
  out << "0,1,1\n";
  for (int k = 0; k < iterations; ++k) {
    double max_cheb = -std::numeric_limits<double>::infinity();
    double max_const = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      const double omega = std::sqrt(2.0 * grid[i]);
      auto advance = [&](std::vector<double>& logs, double eta) {
        const double c = std::abs(std::cos(omega * eta));
        logs[i] = (c == 0.0) ? -std::numeric_limits<double>::infinity()
                             : logs[i] + std::log(c);
        return logs[i];
      };
      max_cheb = std::max(max_cheb, advance(log_cheb, chebyshev.times[k]));
      max_const = std::max(max_const, advance(log_const, constant.times[k]));
    }
    out << (k + 1) << ',' << format_double(std::exp(max_cheb)) << ','
        << format_double(std::exp(max_const)) << '\n';
  }
  return out.str();
}

std::string figure1_psi_csv(double x_max, double step) {
  if (!(x_max > 0.0) || !(step > 0.0)) {
    throw std::invalid_argument("figure1_psi_csv: bad grid");
  }
  std::ostringstream out;
  out << "x,psi\n";
  const long n = std::lround(x_max / step);
  for (long i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) * step;
    out << format_double(x) << ',' << format_double(psi(x)) << '\n';
  }
  return out.str();
}

}  // namespace chebhmc
