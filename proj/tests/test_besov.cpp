#include <cmath>
#include <vector>

#include "besovcap/besov.hpp"
#include "besovcap/sigma_star.hpp"
#include "doctest.h"

using namespace besovcap;

namespace {

// N (Gamma(q) Gamma((N-1) q + 1) / Gamma(N q + 1))^{1/q}
double monomial_seminorm(int n, double q) {
  const long double lg = std::lgamma(static_cast<long double>(q)) +
                         std::lgamma(static_cast<long double>((n - 1) * q + 1.0)) -
                         std::lgamma(static_cast<long double>(n * q + 1.0));
  return static_cast<double>(n * std::exp(lg / static_cast<long double>(q)));
}

BesovQuadrature tight() {
  BesovQuadrature quad;
  quad.radial.cutoff = 1e-13;
  return quad;
}

}  // namespace

TEST_CASE("radial nodes tile the interval") {
  const auto nodes = radial_nodes(1e-3, 16, false);
  double fine = 0.0;
  double coarse = 0.0;
  for (const auto& n : nodes) {
    CHECK(n.s >= 1e-3);
    CHECK(n.s <= 1.0);
    (n.kind == RadialNode::Kind::Fine ? fine : coarse) += n.weight;
  }
  CHECK(fine == doctest::Approx(1.0 - 1e-3).epsilon(1e-14));
  CHECK(coarse == doctest::Approx(1.0 - 1e-3).epsilon(1e-14));
  CHECK_THROWS(radial_nodes(0.0, 16, false));
  CHECK_THROWS(radial_nodes(1e-3, 2, false));
}

TEST_CASE("f = z") {
  const auto f = monomial_handle(1);
  for (const Exponent p : {Exponent(1.0), Exponent(2.0), Exponent::infinity()}) {
    const auto r = besov_seminorm(f, {p, Exponent(1.0)}, tight());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.tail_bound <= 1e-12);
    const auto s = besov_seminorm(f, {p, Exponent::infinity()}, tight());
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.lower_estimate);
  }
  CHECK(besov_norm(f, {Exponent(2.0), Exponent(1.0)}, tight()).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bloch_seminorm(f).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("f = z^2, q = 1") {
  const auto r = besov_seminorm(monomial_handle(2), {Exponent(3.0), Exponent(1.0)}, tight());
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monomials against the Beta closed form") {
  for (const int n : {4, 16, 64, 256}) {
    for (const double q : {1.0, 2.0, 4.0}) {
      const auto r = besov_seminorm(monomial_handle(n), {Exponent(2.0), Exponent(q)}, tight());
      const double expect = monomial_seminorm(n, q);
      CHECK(std::abs(r.value - expect) <= 1e-8 * expect);
    }
  }
}

TEST_CASE("constant function") {
  const auto c = constant_handle(1.0);
  const auto r = besov_norm(c, {Exponent(2.0), Exponent(2.0)});
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(besov_seminorm(c, {Exponent(2.0), Exponent(2.0)}).value == 0.0);
}

TEST_CASE("norm adds |f(0)|") {
  const std::vector<Complex> zeros{0.5};
  const auto b = blaschke_handle(BlaschkeProduct(zeros));
  const BesovParams bp{Exponent(2.0), Exponent(2.0)};
  const double semi = besov_seminorm(b, bp).value;
  CHECK(besov_norm(b, bp).value == doctest::Approx(0.5 + semi).epsilon(1e-15));
}

TEST_CASE("Bloch seminorm") {
  const auto r = bloch_seminorm(monomial_handle(2));
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-14));
  const auto b = blaschke_handle(BlaschkeProduct(sigma_star_points(4)));
  CHECK(bloch_seminorm(b).value <= 1.0 + 1e-9);
  const auto n = monomial_handle(9);
  const double expect = std::pow(8.0 / 9.0, 8);  // (1 - rho) N rho^{N-1} at rho = 8/9
  const auto rn = bloch_seminorm(n);
  CHECK(rn.value <= expect + 1e-12);
  CHECK(rn.value >= expect * 0.999);
}

TEST_CASE("tail bound") {
  CHECK(tail_bound(1, {Exponent(1.0), Exponent(1.0)}, 1e-4) == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(tail_bound(64, {Exponent(2.0), Exponent(2.0)}, 1.0 / (4.0 * 64 * 64)) ==
        doctest::Approx(3.90625e-3).epsilon(1e-15));
  double prev = tail_bound(100, {Exponent(3.0), Exponent(2.0)}, 0.5);
  for (double d = 0.25; d > 1e-12; d /= 2) {
    const double t = tail_bound(100, {Exponent(3.0), Exponent(2.0)}, d);
    CHECK(t < prev);
    prev = t;
  }
  CHECK(std::isinf(tail_bound(4, {Exponent::infinity(), Exponent(2.0)}, 1e-3)));
  CHECK_THROWS(tail_bound(4, {Exponent(2.0), Exponent::infinity()}, 1e-3));
}

TEST_CASE("Hoelder monotonicity and refinement") {
  const auto f = sigma_star_handle(SigmaStarSpec::make(4));
  std::vector<BesovParams> params;
  for (const Exponent p : {Exponent(1.0), Exponent(4.0 / 3.0), Exponent(2.0), Exponent(4.0), Exponent::infinity()}) {
    params.push_back({p, Exponent(2.0)});
  }
  const auto reports = besov_seminorms(f, params);
  for (std::size_t i = 1; i < reports.size(); ++i) CHECK(reports[i].value >= reports[i - 1].value * (1.0 - 1e-9));

  const auto base = besov_seminorm(f, params[2]);
  BesovQuadrature fine;
  fine.radial.order = 32;
  fine.radial.cutoff = base.cutoff;
  const auto refined = besov_seminorm(f, params[2], fine);
  CHECK(std::abs(refined.value - base.value) <= 10.0 * base.quad_error_est + 1e-14);

  // Halving the cutoff also picks up part of the neglected tail, which the
  // tail bound controls.
  fine.radial.cutoff = base.cutoff / 2.0;
  const auto halved = besov_seminorm(f, params[2], fine);
  const double tail_effect = std::sqrt(base.value * base.value + base.tail_bound) - base.value;
  CHECK(halved.value >= base.value);
  CHECK(halved.value - base.value <= 10.0 * base.quad_error_est + tail_effect);
}

TEST_CASE("Blaschke Bloch-type bound") {
  const auto b = blaschke_handle(BlaschkeProduct(sigma_star_points(3)));
  const auto r = besov_seminorm(b, {Exponent::infinity(), Exponent::infinity()});
  CHECK(r.value <= 1.0 + 1e-9);
  CHECK(besov_norm(b, {Exponent(2.0), Exponent(3.0)}).value >= std::abs(b.eval(0.0)));
}

TEST_CASE("results do not depend on the worker count") {
  const auto f = blaschke_handle(BlaschkeProduct(sigma_star_points(5)));
  const BesovParams bp{Exponent(4.0 / 3.0), Exponent(2.0)};
  BesovQuadrature one;
  one.workers = 1;
  BesovQuadrature four;
  four.workers = 4;
  CHECK(besov_seminorm(f, bp, one).value == besov_seminorm(f, bp, four).value);
}
