#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace besovcap {

using Complex = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

/// Raised when an argument lies outside the domain of an operation
/// (a point outside the closed disk, a zero on or outside the circle, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A sweep whose predicted work exceeds the configured budget.
class CostGuardError : public std::runtime_error {
 public:
  CostGuardError(const std::string& what, double predicted, double budget)
      : std::runtime_error(what), predicted_(predicted), budget_(budget) {}
  double predicted() const { return predicted_; }
  double budget() const { return budget_; }

 private:
  double predicted_;
  double budget_;
};

/// A dual certificate that could not be closed, or an iterative solver that
/// stopped before reaching its tolerance.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point of the closed unit disk stored as (1 - |z|, arg z).
///
/// Points very close to the circle lose all their information when stored as
/// a Complex (1 - 2^-60 rounds to 1). Keeping the co-radius separately lets
/// the Blaschke kernels form z - w and 1 - conj(w) z without cancellation.
struct DiskPoint {
  double co_radius = 1.0;  // 1 - |z|, in [0, 1]
  double angle = 0.0;      // radians; irrelevant when co_radius == 1

  static DiskPoint from_complex(Complex z) {
    const double r = std::abs(z);
    return DiskPoint{1.0 - r, r > 0.0 ? std::arg(z) : 0.0};
  }
  static DiskPoint polar(double co_radius, double angle) { return DiskPoint{co_radius, angle}; }

  double modulus() const { return 1.0 - co_radius; }
  Complex direction() const { return std::polar(1.0, angle); }
  Complex to_complex() const { return std::polar(1.0 - co_radius, angle); }
};

/// Radius of a circle |z| = rho, stored through its complement s = 1 - rho.
class Radius {
 public:
  static Radius from_rho(double rho) { return Radius(1.0 - rho); }
  static Radius from_complement(double s) { return Radius(s); }

  double rho() const { return 1.0 - s_; }
  double complement() const { return s_; }

 private:
  explicit Radius(double s) : s_(s) {}
  double s_;
};

}  // namespace besovcap
