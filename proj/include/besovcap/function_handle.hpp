#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <span>

#include "besovcap/angular_grid.hpp"
#include "besovcap/blaschke.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// An analytic function on a neighbourhood of the closed disk, together with
/// the metadata the norm routines use to choose their sampling.
class AnalyticFunction {
 public:
  virtual ~AnalyticFunction() = default;

  virtual Complex value(Complex z) const = 0;
  virtual Complex derivative(Complex z) const = 0;

  /// Frequency-content hint (the degree for Blaschke products and polynomials).
  virtual std::optional<std::size_t> degree_hint() const { return std::nullopt; }
  /// log R where R > 1 is the modulus of the nearest singularity (inf if entire).
  virtual double log_singularity_radius() const { return std::numeric_limits<double>::infinity(); }
  /// Degree N when the function is a finite Blaschke product.
  virtual std::optional<std::size_t> blaschke_degree() const { return std::nullopt; }
  /// An upper bound for sup_{|z| <= 1} |f'(z)|, if one is known.
  virtual std::optional<double> derivative_bound() const { return std::nullopt; }
  /// Relative cost of one derivative evaluation (number of factors, terms, ...).
  virtual double evaluation_cost() const { return 1.0; }

  /// f'((1 - s) e^{it}). Overridden where 1 - s would lose the information in s.
  virtual Complex derivative_polar(double s, double t) const;

  /// f'((1 - s) e^{i t_j}) for j = first, first + 1, ...
  /// The default calls derivative() pointwise; structured functions override it.
  virtual void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const;
};

/// Immutable, cheaply copyable handle to an AnalyticFunction. Safe to share
/// across threads.
class FunctionHandle {
 public:
  explicit FunctionHandle(std::shared_ptr<const AnalyticFunction> impl);

  Complex eval(Complex z) const { return impl_->value(z); }
  Complex eval_deriv(Complex z) const { return impl_->derivative(z); }
  std::optional<std::size_t> degree_hint() const { return impl_->degree_hint(); }
  const AnalyticFunction& function() const { return *impl_; }

 private:
  std::shared_ptr<const AnalyticFunction> impl_;
};

FunctionHandle blaschke_handle(BlaschkeProduct product);
/// z^N. A Blaschke product with all zeros at the origin.
FunctionHandle monomial_handle(std::size_t degree);
FunctionHandle constant_handle(Complex c);
/// Wraps user callables. `log_singularity_radius` steers the angular sampling.
FunctionHandle make_handle(std::function<Complex(Complex)> value, std::function<Complex(Complex)> derivative,
                           std::optional<std::size_t> degree_hint = std::nullopt,
                           double log_singularity_radius = std::numeric_limits<double>::infinity());

/// Dilation radius used by the dilated test function: 1 - 1/N, and 1/2 for N = 1.
double dilation_radius(std::size_t degree);

/// f(z) = (-1)^N Bt(r z) / (r^N prod l_i), Bt the Blaschke product with zeros
/// r l_i and r = dilation_radius(N). f(0) = 1 and f vanishes on the sequence.
/// Throws DomainError if a point is zero or lies outside the open disk.
FunctionHandle dilated_test_function(std::span<const Complex> zeros);
FunctionHandle dilated_test_function(std::span<const DiskPoint> zeros);

}  // namespace besovcap
