#include <cmath>
#include <vector>

#include "besovcap/circle_norms.hpp"
#include "besovcap/sigma_star.hpp"
#include "doctest.h"

using namespace besovcap;

TEST_CASE("f = z has unit derivative norms") {
  const auto f = monomial_handle(1);
  const AngularGrid grid(64);
  for (const double rho : {0.0, 0.3, 0.99}) {
    for (const Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(4.0 / 3.0), Exponent(7.5), Exponent::infinity()}) {
      CHECK(lp_norm_circle(f, Radius::from_rho(rho), p, grid) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("H2 norm of 1/(1 - b z^N) on the circle") {
  const AngularGrid grid(4096);
  for (const double b : {0.3, 0.5, 0.9}) {
    for (const int n : {1, 3, 8}) {
      auto g = [b, n](Complex z) { return 1.0 / (1.0 - b * std::pow(z, n)); };
      const double norm = lp_norm_values(g, Radius::from_rho(1.0), Exponent(2.0), grid);
      CHECK(std::abs(norm * norm - 1.0 / (1.0 - b * b)) < 1e-10);
    }
  }
  auto g = [](Complex z) { return 1.0 / (1.0 - 0.9 * z); };
  const double n2 = lp_norm_values(g, Radius::from_rho(1.0), Exponent(2.0), grid);
  CHECK(n2 * n2 == doctest::Approx(1.0 / 0.19).epsilon(1e-12));
}

TEST_CASE("Forelli-Rudin identity at p = 2") {
  const AngularGrid grid(8192);
  for (const Complex w : {Complex(0.2, 0.1), Complex(-0.5, 0.5), Complex(0.0, 0.9), Complex(0.99, 0.0)}) {
    auto g = [w](Complex z) { return 1.0 / (1.0 - w * z); };
    const double n = lp_norm_values(g, Radius::from_rho(1.0), Exponent(2.0), grid);
    CHECK(std::abs(n * n - 1.0 / (1.0 - std::norm(w))) < 1e-10 * (1.0 / (1.0 - std::norm(w))));
  }
}

TEST_CASE("monotone in p") {
  const auto f = sigma_star_handle(SigmaStarSpec::make(4));
  const AngularGrid grid(1024);
  double prev = 0.0;
  for (const Exponent p : {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0), Exponent(3.0), Exponent(4.0),
                           Exponent(7.3), Exponent::infinity()}) {
    const double v = lp_norm_circle(f, Radius::from_rho(0.95), p, grid);
    CHECK(v >= prev * (1.0 - 1e-14));
    prev = v;
  }
}

TEST_CASE("trapezoid rule is exact below Nyquist") {
  // f'(z) = 1 + 2z + 3z^2 + ... + 9 z^8; |f'|^2 has degree 8 in each direction.
  auto d = [](Complex z) {
    Complex acc(0.0);
    for (int k = 8; k >= 0; --k) acc = acc * z + static_cast<double>(k + 1);
    return acc;
  };
  auto v = [](Complex z) {
    Complex acc(0.0);
    for (int k = 9; k >= 1; --k) acc = acc * z + 1.0;
    return acc * z;
  };
  const auto f = make_handle(v, d, 8);
  const double a = lp_norm_circle(f, Radius::from_rho(0.8), Exponent(2.0), AngularGrid(32));
  const double b = lp_norm_circle(f, Radius::from_rho(0.8), Exponent(2.0), AngularGrid(64));
  CHECK(std::abs(a - b) < 1e-12);
  double expect = 0.0;
  for (int k = 0; k <= 8; ++k) expect += std::pow((k + 1) * std::pow(0.8, k), 2);
  CHECK(a == doctest::Approx(std::sqrt(expect)).epsilon(1e-13));
}

TEST_CASE("rotation invariance on grid rotations") {
  const auto pts = sigma_star_points(3);
  const BlaschkeProduct b(pts);
  const std::size_t M = 256;
  const AngularGrid grid(M);
  const Complex rot = grid.direction(17);
  auto value = [&](Complex z) { return b.eval(rot * z); };
  auto deriv = [&](Complex z) { return b.eval_deriv(rot * z); };
  const auto rotated = make_handle(value, deriv, 14);
  const auto plain = blaschke_handle(b);
  for (const Exponent p : {Exponent(1.0), Exponent(2.0), Exponent(3.5)}) {
    const double x = lp_norm_circle(plain, Radius::from_rho(0.9), p, grid);
    const double y = lp_norm_circle(rotated, Radius::from_rho(0.9), p, grid);
    CHECK(std::abs(x - y) <= 1e-12 * x);
  }
}

TEST_CASE("angular sample policy") {
  const auto f = blaschke_handle(BlaschkeProduct(sigma_star_points(3)));
  AngularPolicy policy;
  const std::size_t m = angular_samples(f.function(), 1e-3, Exponent(2.0), policy);
  CHECK(m % 16 == 0);
  CHECK(m >= 8 * 2 * 15);
  policy.conservative = true;
  CHECK(angular_samples(f.function(), 0.5, Exponent(2.0), policy) >= 8 * 2 * 15);
  policy.conservative = false;
  policy.max_samples_sup = 64;
  CHECK(angular_samples(f.function(), 1e-9, Exponent::infinity(), policy) == 64);
  CHECK(coarse_grid_warning(f.function(), 16, 8).has_value());
  CHECK_FALSE(coarse_grid_warning(f.function(), 1024, 8).has_value());
}

TEST_CASE("H2 norm from coefficients") {
  const std::vector<Complex> one{1.0};
  CHECK(h2_norm_series(one) == 1.0);
  const std::vector<Complex> pyth{3.0, 4.0};
  CHECK(h2_norm_series(pyth) == doctest::Approx(5.0).epsilon(1e-15));
  // (z - 0.5) * sum 0.5^k z^k, truncated at degree 50
  std::vector<Complex> geo(51), coeffs(51, 0.0);
  for (int k = 0; k <= 50; ++k) geo[k] = std::pow(0.5, k);
  for (int k = 0; k <= 50; ++k) {
    coeffs[k] += -0.5 * geo[k];
    if (k >= 1) coeffs[k] += geo[k - 1];
  }
  CHECK(std::abs(h2_norm_series(coeffs) - 1.0) < 1e-10);
}

TEST_CASE("sup refinement finds peaks narrower than the grid spacing") {
  const auto pts = interp_sequence(40);
  const auto f = blaschke_handle(BlaschkeProduct(std::span<const DiskPoint>(pts)));
  const double s = 0.75 * std::ldexp(1.0, -30);
  const AngularGrid grid(1024);
  const Exponent inf = Exponent::infinity();
  const double plain = derivative_lp_norms(f.function(), s, std::span(&inf, 1), grid)[0];
  const double refined = derivative_lp_norms(f.function(), s, std::span(&inf, 1), grid, true)[0];
  // brute-force scan of the peak region |t| <= 10 s
  double brute = 0.0;
  for (int k = -8000; k <= 8000; ++k) {
    brute = std::max(brute, std::abs(f.function().derivative_polar(s, k * s / 800.0)));
  }
  CHECK(plain < 0.1 * brute);
  CHECK(refined >= brute * (1.0 - 1e-6));
  CHECK(refined <= brute * (1.0 + 1e-3));
  CHECK(s * refined > 0.3);
  // nothing to find for a polynomial on a fine grid
  const auto z3 = monomial_handle(3);
  const AngularGrid g2(64);
  CHECK(derivative_lp_norms(z3.function(), 0.25, std::span(&inf, 1), g2, true)[0] ==
        doctest::Approx(3.0 * 0.75 * 0.75).epsilon(1e-14));
}
