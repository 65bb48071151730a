#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "besovcap/schaffer.hpp"
#include "besovcap/sigma_star.hpp"
#include "doctest.h"

using namespace besovcap;

namespace {

std::vector<Complex> random_points(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> r(0.05, 0.999);
  std::uniform_real_distribution<double> t(-kPi, kPi);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(r(rng), t(rng)));
  return out;
}

}  // namespace

TEST_CASE("companion matrices") {
  const std::vector<Complex> one{0.5};
  const DenseMatrix a = companion(one);
  CHECK(a.order() == 1);
  CHECK(a(0, 0) == Complex(0.5));

  const std::vector<Complex> two{0.5, -0.5};
  const DenseMatrix b = companion(two);
  CHECK(std::abs(b(0, 0)) == 0.0);
  CHECK(std::abs(b(0, 1) - 0.25) < 1e-16);
  CHECK(b(1, 0) == Complex(1.0));
  CHECK(std::abs(b(1, 1)) < 1e-16);

  const auto s2 = sigma_star_points(2);
  const auto inv = inverse_and_det(companion(s2));
  Complex prod(1.0);
  for (const auto& z : s2) prod *= z;
  CHECK(std::abs(inv.det - prod) < 1e-12);
  CHECK(std::abs(std::abs(inv.det) - 0.25) < 1e-12);
}

TEST_CASE("companion eigenvalues are the roots") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto pts = random_points(rng, n);
    const DenseMatrix t = companion(pts);
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = t(i, j);
    }
    const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m).eigenvalues();
    for (const auto& p : pts) {
      double best = 1e300;
      for (Eigen::Index k = 0; k < ev.size(); ++k) best = std::min(best, std::abs(ev(k) - p));
      CHECK(best < 1e-6);
    }
  }
}

TEST_CASE("operator norms") {
  for (const auto kind : {OperatorNormKind::ColSum, OperatorNormKind::Spectral, OperatorNormKind::RowSum}) {
    CHECK(operator_norm(DenseMatrix::identity(5), kind) == doctest::Approx(1.0).epsilon(1e-12));
  }
  const DenseMatrix d = DenseMatrix::from_rows({{3.0, 0.0}, {0.0, 4.0}});
  CHECK(operator_norm(d, OperatorNormKind::Spectral) == doctest::Approx(4.0).epsilon(1e-10));

  const DenseMatrix c = DenseMatrix::from_rows({{0.0, 0.25}, {1.0, 0.0}});
  CHECK(operator_norm(c, OperatorNormKind::ColSum) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(operator_norm(c, OperatorNormKind::RowSum) == doctest::Approx(1.0).epsilon(1e-15));
  // 2x2 oracle: singular values are the square roots of the eigenvalues of
  // T*T = [[1, 0], [0, 1/16]].
  const double tr = 1.0 + 1.0 / 16.0;
  const double det = 1.0 / 16.0;
  const double top = std::sqrt((tr + std::sqrt(tr * tr - 4.0 * det)) / 2.0);
  CHECK(operator_norm(c, OperatorNormKind::Spectral) == doctest::Approx(top).epsilon(1e-10));
  CHECK(top == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const DenseMatrix t = companion(random_points(rng, 12));
    const double s = operator_norm(t, OperatorNormKind::Spectral);
    const double cs = operator_norm(t, OperatorNormKind::ColSum);
    const double rs = operator_norm(t, OperatorNormKind::RowSum);
    CHECK(s <= std::sqrt(cs * rs) + 1e-9);
    Eigen::MatrixXcd m(12, 12);
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) m(i, j) = t(i, j);
    }
    CHECK(s == doctest::Approx(Eigen::JacobiSVD<Eigen::MatrixXcd>(m).singularValues()(0)).epsilon(1e-8));
  }
}

TEST_CASE("inverse and determinant") {
  const auto id = inverse_and_det(DenseMatrix::identity(4));
  CHECK(id.det == Complex(1.0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(id.inverse(i, j) == Complex(i == j ? 1.0 : 0.0));
  }
  const auto half = inverse_and_det(DenseMatrix::from_rows({{0.5}}));
  CHECK(half.inverse(0, 0) == Complex(2.0));
  CHECK(half.det == Complex(0.5));

  std::mt19937_64 rng(9);
  for (std::size_t n : {3, 10, 40}) {
    const auto pts = random_points(rng, n);
    const DenseMatrix t = companion(pts);
    const auto inv = inverse_and_det(t);
    Complex prod(1.0);
    for (const auto& z : pts) prod *= z;
    CHECK(std::abs(inv.det - prod) <= 1e-12 * std::max(1.0, std::abs(prod)));
    CHECK(std::abs(std::exp(inv.log_abs_det) - std::abs(prod)) <= 1e-12);
    // T T^-1 = I
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Complex acc(0.0);
        for (std::size_t k = 0; k < n; ++k) acc += t(i, k) * inv.inverse(k, j);
        worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
      }
    }
    const double scale = operator_norm(t, OperatorNormKind::RowSum) * operator_norm(inv.inverse, OperatorNormKind::RowSum);
    CHECK(worst <= 1e-12 * scale);
  }

  const DenseMatrix sing = DenseMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  CHECK_THROWS_AS(inverse_and_det(sing), SingularMatrixError);
}

TEST_CASE("Schaffer ratio") {
  for (const auto kind : {OperatorNormKind::ColSum, OperatorNormKind::Spectral, OperatorNormKind::RowSum}) {
    CHECK(schaffer_ratio(DenseMatrix::identity(3), kind) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(schaffer_ratio(DenseMatrix::from_rows({{0.5}}), kind) == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (int n = 2; n <= 5; ++n) {
    const auto pts = sigma_star_points(n);
    const DenseMatrix t = companion(pts);
    for (const auto kind : {OperatorNormKind::ColSum, OperatorNormKind::Spectral, OperatorNormKind::RowSum}) {
      const double r = schaffer_ratio(t, kind);
      CHECK(r > 0.0);
      CHECK(r <= schaffer_bound(pts.size()) * (1.0 + 1e-6));
    }
  }
  CHECK(parse_norm_kind("spectral") == OperatorNormKind::Spectral);
  CHECK(to_string(OperatorNormKind::ColSum) == "col-sum");
  CHECK_THROWS(parse_norm_kind("frobenius"));
}
