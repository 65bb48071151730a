#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "besovcap/angular_grid.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// Finite Blaschke product  B(z) = prod_i (z - l_i) / (1 - conj(l_i) z).
///
/// Zeros are kept in polar-complement form (see DiskPoint); multiplicities are
/// represented by repetition. Every factor is evaluated as
///
///   z - l       = u * [(v - 1) + eps - s v]
///   1 - conj(l) z = (1 - v) + (eps + s - eps s) v
///
/// with z = (1 - s) w, l = (1 - eps) u, v = w conj(u), which stays accurate
/// when both z and l hug the unit circle.
class BlaschkeProduct {
 public:
  /// Points with |z| <= 1 + kDomainSlack are accepted by the evaluators.
  static constexpr double kDomainSlack = 1e-9;
  /// The logarithmic-derivative form is used while min_i |z - l_i| exceeds this.
  static constexpr double kDerivativeSwitch = 1e-6;

  /// Throws DomainError if a zero has |l| >= 1 or the list is empty.
  explicit BlaschkeProduct(std::span<const Complex> zeros);
  explicit BlaschkeProduct(std::span<const DiskPoint> zeros);

  std::size_t degree() const { return points_.size(); }
  const std::vector<DiskPoint>& points() const { return points_; }
  std::vector<Complex> zeros() const;

  /// prod_i |l_i|, computed through log1p of the co-radii.
  double prod_moduli() const;
  double log_prod_moduli() const;
  /// min_i (1 - |l_i|).
  double min_co_radius() const { return min_co_radius_; }
  bool has_zero_at_origin() const;

  Complex eval(Complex z) const;
  Complex eval_deriv(Complex z) const;
  /// B' = sum_j b_j' prod_{k != j} b_k; finite at the zeros.
  Complex eval_deriv_cofactor(Complex z) const;
  /// B' = B * sum_j b_j'/b_j; undefined at the zeros.
  Complex eval_deriv_logarithmic(Complex z) const;

  /// B'((1 - s) e^{it}) without forming 1 - s, for circles closer to T than
  /// double precision can resolve.
  Complex eval_deriv_polar(double s, double t) const;
  /// B'((1 - s) e^{i t_j}) for j = first .. first + out.size() - 1.
  void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const;

  /// sup over the closed disk of |B'|, bounded by sum (1 + |l|)/(1 - |l|).
  double derivative_bound() const;

 private:
  void init();
  void check_point(Complex z) const;
  // Cofactor form at a point given in polar-complement coordinates.
  Complex deriv_cofactor_polar(double s, Complex w) const;
  Complex value_polar(double s, Complex w) const;
  Complex deriv_log_polar(double s, Complex w, double& min_dist2) const;

  std::vector<DiskPoint> points_;
  // Structure-of-arrays copies used by the kernels.
  std::vector<double> eps_;      // co-radius
  std::vector<double> ucr_;      // conj(u).real
  std::vector<double> uci_;      // conj(u).imag
  std::vector<double> weight_;   // 1 - |l|^2 = eps (2 - eps)
  Complex unit_product_{1.0, 0.0};  // prod u_i
  double min_co_radius_ = 1.0;
};

}  // namespace besovcap
