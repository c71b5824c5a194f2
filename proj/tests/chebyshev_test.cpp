#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chebhmc/chebyshev.hpp>
#include <chebhmc/rng.hpp>
#include <cmath>
#include <numbers>

using namespace chebhmc;

namespace {

constexpr double kPi = std::numbers::pi;

// Independent oracle: the three-term recurrence Phi_{K+1} = 2x Phi_K - Phi_{K-1}.
double cheb_recurrence(int degree, double x) {
  double prev = 1.0;
  double current = x;
  if (degree == 0) return prev;
  for (int k = 1; k < degree; ++k) {
    const double next = 2.0 * x * current - prev;
    prev = current;
    current = next;
  }
  return current;
}

}  // namespace

TEST_CASE("first-kind polynomial agrees with the recurrence oracle") {
  for (double x = -10.0; x <= 10.0; x += 0.25) {
    for (int degree = 0; degree <= 64; ++degree) {
      const double expected = cheb_recurrence(degree, x);
      const double actual = cheb_first_kind(degree, x);
      CHECK(std::abs(actual - expected) <=
            1e-10 * std::max({std::abs(actual), std::abs(expected), 1.0}));
    }
  }
}

TEST_CASE("first-kind polynomial spot values") {
  CHECK(cheb_first_kind(5, 1.0) == doctest::Approx(1.0));
  CHECK(cheb_first_kind(2, 0.5) == doctest::Approx(-0.5));   // 2x^2 - 1
  CHECK(cheb_first_kind(3, 2.0) == doctest::Approx(26.0));   // 4x^3 - 3x
  CHECK(cheb_first_kind(0, 7.3) == 1.0);
  // parity outside [-1, 1]
  CHECK(cheb_first_kind(3, -2.0) == doctest::Approx(-26.0));
  CHECK(cheb_first_kind(4, -2.0) == doctest::Approx(cheb_first_kind(4, 2.0)));
}

TEST_CASE("h map endpoints and degenerate spectrum") {
  const SpectralBounds b(1.0, 100.0);
  CHECK(h_map(b.m, b) == doctest::Approx(1.0));
  CHECK(h_map(b.L, b) == doctest::Approx(-1.0));
  CHECK(h_map(0.0, b) == doctest::Approx(101.0 / 99.0));
  const SpectralBounds flat(4.0, 4.0);
  CHECK_THROWS_AS(h_map(1.0, flat), std::domain_error);
  CHECK_THROWS_AS(phi_bar(3, 1.0, flat), std::domain_error);
}

TEST_CASE("scaled-and-shifted polynomial normalisation and roots") {
  const SpectralBounds b(1.0, 100.0);
  for (int degree : {1, 2, 5, 17, 64}) {
    CHECK(phi_bar(degree, 0.0, b) == doctest::Approx(1.0));
    const ChebyshevRootSet roots = cheb_roots(degree, b);
    for (double r : roots.roots) {
      CHECK(r > b.m);
      CHECK(r < b.L);
      CHECK(std::abs(phi_bar(degree, r, b)) <= 1e-9);
    }
  }
  // K = 2 oracle: PhiBar_2(1) = Phi_2(1) / Phi_2(101/99) with Phi_2(x) = 2x^2 - 1
  const double h0 = 101.0 / 99.0;
  const double expected = 1.0 / (2.0 * h0 * h0 - 1.0);
  CHECK(phi_bar(2, 1.0, b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.92453).epsilon(1e-4));
}

TEST_CASE("roots follow the closed form, ascending") {
  const SpectralBounds b(1.0, 100.0);
  SUBCASE("K = 1 is the interval midpoint") {
    CHECK(cheb_roots(1, b).roots[0] == doctest::Approx(50.5));
  }
  SUBCASE("K = 2 oracle values") {
    const ChebyshevRootSet roots = cheb_roots(2, b);
    const double c = 49.5 * std::cos(kPi / 4.0);
    CHECK(roots.roots[0] == doctest::Approx(50.5 - c).epsilon(1e-14));
    CHECK(roots.roots[1] == doctest::Approx(50.5 + c).epsilon(1e-14));
    CHECK(roots.roots[0] == doctest::Approx(15.4982).epsilon(1e-4));
    CHECK(roots.roots[1] == doctest::Approx(85.5018).epsilon(1e-4));
  }
  SUBCASE("degenerate spectrum collapses every root onto m") {
    const ChebyshevRootSet roots = cheb_roots(3, SpectralBounds(4.0, 4.0));
    for (double r : roots.roots) CHECK(r == doctest::Approx(4.0));
  }
  SUBCASE("ascending order for a large degree") {
    const ChebyshevRootSet roots = cheb_roots(100, b);
    for (std::size_t i = 1; i < roots.roots.size(); ++i) {
      CHECK(roots.roots[i] > roots.roots[i - 1]);
    }
  }
}

TEST_CASE("rate bound edge cases and log-space evaluation") {
  const SpectralBounds b(1.0, 100.0);
  CHECK(rate_bound(0, b) == 2.0);
  CHECK(rate_bound(1, b) == doctest::Approx(2.0 * 9.0 / 11.0));
  CHECK(rate_bound(5, SpectralBounds(3.0, 3.0)) == 0.0);
  // K = 400: 2 (9/11)^400, confirmed in log space
  const double expected = 2.0 * std::exp(400.0 * std::log(9.0 / 11.0));
  CHECK(rate_bound(400, b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(2.7654e-35).epsilon(1e-3));
  // far below double-min after ~80k iterations; must not overflow on the way
  CHECK(rate_bound(100000, b) == 0.0);
}

TEST_CASE("cosine product vanishes at roots and at most one away from phi_bar") {
  const SpectralBounds b(1.0, 100.0);
  const ChebyshevRootSet roots = cheb_roots(4, b);
  CHECK(cosine_product(0.0, roots) == doctest::Approx(1.0));
  for (double r : roots.roots) {
    CHECK(std::abs(cosine_product(r, roots)) <= 1e-15);
  }
  // K = 1 scalar oracle
  const ChebyshevRootSet one = cheb_roots(1, b);
  const double expected = std::cos(0.5 * kPi * std::sqrt(1.0 / 50.5));
  CHECK(cosine_product(1.0, one) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.97568).epsilon(1e-4));
  CHECK(std::abs(cosine_product(1.0, one)) <= std::abs(phi_bar(1, 1.0, b)));
  CHECK_THROWS_AS(cosine_product(-0.5, one), std::domain_error);
}

TEST_CASE("cosine product stays finite for large root sets") {
  const SpectralBounds b(1.0, 100.0);
  const ChebyshevRootSet roots = cheb_roots(400, b);
  const double v = cosine_product(1.0, roots);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) > 0.0);
  CHECK(std::abs(v) < rate_bound(400, b));
}

TEST_CASE("psi values and the removable singularity") {
  CHECK(psi(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(psi(1.0) == doctest::Approx(kPi / 4.0).epsilon(1e-15));
  CHECK(psi(4.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // continuity through x = 1
  CHECK(psi(1.0 - 1e-9) == doctest::Approx(kPi / 4.0).epsilon(1e-8));
  CHECK(psi(1.0 + 1e-9) == doctest::Approx(kPi / 4.0).epsilon(1e-8));
  CHECK_THROWS_AS(psi(-1e-9), std::domain_error);
}

TEST_CASE("gradient descent with inverse-root steps reproduces phi_bar") {
  const SpectralBounds b(1.0, 100.0);
  SUBCASE("one step annihilates its own root") {
    const ChebyshevRootSet one = cheb_roots(1, b);
    Eigen::VectorXd lambda(1), x0(1);
    lambda << one.roots[0];
    x0 << 1.0;
    CHECK(gd_chebyshev_contraction(lambda, one, x0)[0] == 0.0);
  }
  SUBCASE("zero vector is a fixed point") {
    const ChebyshevRootSet roots = cheb_roots(8, b);
    Eigen::VectorXd lambda(3), x0(3);
    lambda << 1.0, 42.0, 100.0;
    x0.setZero();
    CHECK(gd_chebyshev_contraction(lambda, roots, x0).norm() == 0.0);
  }
  SUBCASE("spectrum endpoints, K = 2") {
    const ChebyshevRootSet roots = cheb_roots(2, b);
    Eigen::VectorXd lambda(2), x0(2);
    lambda << 1.0, 100.0;
    x0 << 1.0, 1.0;
    const Eigen::VectorXd w = gd_chebyshev_contraction(lambda, roots, x0);
    CHECK(w[0] == doctest::Approx(phi_bar(2, 1.0, b)).epsilon(1e-12));
    CHECK(w[1] == doctest::Approx(phi_bar(2, 100.0, b)).epsilon(1e-12));
    // the two endpoint contractions agree in magnitude (Phi_2(-1) = Phi_2(1))
    CHECK(std::abs(w[1]) == doctest::Approx(std::abs(w[0])).epsilon(1e-10));
  }
  SUBCASE("dimension mismatch") {
    const ChebyshevRootSet roots = cheb_roots(2, b);
    CHECK_THROWS_AS(gd_chebyshev_contraction(Eigen::VectorXd::Ones(2), roots,
                                             Eigen::VectorXd::Ones(3)),
                    std::invalid_argument);
  }
}

TEST_CASE("spectral bounds validation") {
  CHECK_THROWS_AS(SpectralBounds(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(SpectralBounds(2.0, 1.0), std::invalid_argument);
  CHECK(SpectralBounds(1.0, 100.0).kappa() == doctest::Approx(100.0));
}
