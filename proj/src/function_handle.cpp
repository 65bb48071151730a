#include "besovcap/function_handle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace besovcap {

void AnalyticFunction::sample_derivative(double s, const AngularGrid& grid, std::size_t first,
                                         std::span<Complex> out) const {
  const double rho = 1.0 - s;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = derivative(rho * grid.direction(first + i));
}

Complex AnalyticFunction::derivative_polar(double s, double t) const {
  return derivative((1.0 - s) * Complex(std::cos(t), std::sin(t)));
}

FunctionHandle::FunctionHandle(std::shared_ptr<const AnalyticFunction> impl) : impl_(std::move(impl)) {
  if (!impl_) throw std::invalid_argument("FunctionHandle: null function");
}

namespace {

class BlaschkeFunction final : public AnalyticFunction {
 public:
  explicit BlaschkeFunction(BlaschkeProduct b) : b_(std::move(b)) {}

  Complex value(Complex z) const override { return b_.eval(z); }
  Complex derivative(Complex z) const override { return b_.eval_deriv(z); }
  std::optional<std::size_t> degree_hint() const override { return b_.degree(); }
  double log_singularity_radius() const override {
    // poles at 1/conj(l)
    return -std::log1p(-b_.min_co_radius());
  }
  std::optional<std::size_t> blaschke_degree() const override { return b_.degree(); }
  std::optional<double> derivative_bound() const override { return b_.derivative_bound(); }
  double evaluation_cost() const override { return static_cast<double>(b_.degree()); }
  Complex derivative_polar(double s, double t) const override { return b_.eval_deriv_polar(s, t); }
  void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const override {
    b_.sample_derivative(s, grid, first, out);
  }

 private:
  BlaschkeProduct b_;
};

Complex int_power(Complex z, std::size_t n) {
  Complex acc(1.0, 0.0);
  Complex base = z;
  while (n > 0) {
    if (n & 1U) acc *= base;
    base *= base;
    n >>= 1U;
  }
  return acc;
}

class Monomial final : public AnalyticFunction {
 public:
  explicit Monomial(std::size_t n) : n_(n) {}

  Complex value(Complex z) const override { return int_power(z, n_); }
  Complex derivative(Complex z) const override { return static_cast<double>(n_) * int_power(z, n_ - 1); }
  std::optional<std::size_t> degree_hint() const override { return n_; }
  std::optional<std::size_t> blaschke_degree() const override { return n_; }
  std::optional<double> derivative_bound() const override { return static_cast<double>(n_); }
  Complex derivative_polar(double s, double t) const override {
    double mod = static_cast<double>(n_);
    if (n_ > 1) mod *= s < 1.0 ? std::exp(static_cast<double>(n_ - 1) * std::log1p(-s)) : 0.0;
    const double a = static_cast<double>(n_ - 1) * t;
    return mod * Complex(std::cos(a), std::sin(a));
  }
  void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const override {
    const std::size_t M = grid.size();
    const std::size_t k = (n_ - 1) % M;
    double mod = static_cast<double>(n_);
    if (n_ > 1) mod *= s < 1.0 ? std::exp(static_cast<double>(n_ - 1) * std::log1p(-s)) : 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod * grid.direction((k * ((first + i) % M)) % M);
  }

 private:
  std::size_t n_;
};

class Constant final : public AnalyticFunction {
 public:
  explicit Constant(Complex c) : c_(c) {}
  Complex value(Complex) const override { return c_; }
  Complex derivative(Complex) const override { return Complex(0.0, 0.0); }
  std::optional<std::size_t> degree_hint() const override { return 0; }
  std::optional<double> derivative_bound() const override { return 0.0; }
  void sample_derivative(double, const AngularGrid&, std::size_t, std::span<Complex> out) const override {
    for (Complex& v : out) v = Complex(0.0, 0.0);
  }

 private:
  Complex c_;
};

class Custom final : public AnalyticFunction {
 public:
  Custom(std::function<Complex(Complex)> value, std::function<Complex(Complex)> derivative,
         std::optional<std::size_t> degree_hint, double log_radius)
      : value_(std::move(value)), derivative_(std::move(derivative)), degree_hint_(degree_hint), log_radius_(log_radius) {}

  Complex value(Complex z) const override { return value_(z); }
  Complex derivative(Complex z) const override { return derivative_(z); }
  std::optional<std::size_t> degree_hint() const override { return degree_hint_; }
  double log_singularity_radius() const override { return log_radius_; }

 private:
  std::function<Complex(Complex)> value_;
  std::function<Complex(Complex)> derivative_;
  std::optional<std::size_t> degree_hint_;
  double log_radius_;
};

// f(z) = scale * Bt(r z), Bt with zeros r l_i.
class DilatedBlaschke final : public AnalyticFunction {
 public:
  DilatedBlaschke(BlaschkeProduct dilated, double r, Complex scale, double log_radius)
      : b_(std::move(dilated)), r_(r), scale_(scale), log_radius_(log_radius) {}

  Complex value(Complex z) const override { return scale_ * b_.eval(r_ * z); }
  Complex derivative(Complex z) const override { return scale_ * r_ * b_.eval_deriv(r_ * z); }
  std::optional<std::size_t> degree_hint() const override { return b_.degree(); }
  double log_singularity_radius() const override { return log_radius_; }
  std::optional<double> derivative_bound() const override {
    // Schwarz-Pick on |w| <= r.
    return std::abs(scale_) * r_ / (1.0 - r_ * r_);
  }
  double evaluation_cost() const override { return static_cast<double>(b_.degree()); }
  Complex derivative_polar(double s, double t) const override {
    return scale_ * r_ * b_.eval_deriv_polar((1.0 - r_) + r_ * s, t);
  }
  void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const override {
    // |r z| = r (1 - s) = 1 - ((1 - r) + r s)
    b_.sample_derivative((1.0 - r_) + r_ * s, grid, first, out);
    const Complex c = scale_ * r_;
    for (Complex& v : out) v *= c;
  }

 private:
  BlaschkeProduct b_;
  double r_;
  Complex scale_;
  double log_radius_;
};

}  // namespace

FunctionHandle blaschke_handle(BlaschkeProduct product) {
  return FunctionHandle(std::make_shared<BlaschkeFunction>(std::move(product)));
}

FunctionHandle monomial_handle(std::size_t degree) {
  if (degree == 0) return constant_handle(Complex(1.0, 0.0));
  return FunctionHandle(std::make_shared<Monomial>(degree));
}

FunctionHandle constant_handle(Complex c) { return FunctionHandle(std::make_shared<Constant>(c)); }

FunctionHandle make_handle(std::function<Complex(Complex)> value, std::function<Complex(Complex)> derivative,
                           std::optional<std::size_t> degree_hint, double log_singularity_radius) {
  if (!value || !derivative) throw std::invalid_argument("make_handle: empty callable");
  return FunctionHandle(
      std::make_shared<Custom>(std::move(value), std::move(derivative), degree_hint, log_singularity_radius));
}

double dilation_radius(std::size_t degree) {
  if (degree == 0) throw std::invalid_argument("dilation_radius: degree must be positive");
  if (degree == 1) return 0.5;
  return 1.0 - 1.0 / static_cast<double>(degree);
}

FunctionHandle dilated_test_function(std::span<const DiskPoint> zeros) {
  if (zeros.empty()) throw DomainError("dilated test function needs at least one point");
  const double r = dilation_radius(zeros.size());
  const double log_r = std::log(r);
  std::vector<DiskPoint> scaled;
  scaled.reserve(zeros.size());
  double log_abs = 0.0;  // log prod |l_i|
  double phase = 0.0;    // arg prod l_i
  double min_co = 1.0;
  for (const DiskPoint& p : zeros) {
    if (!(p.co_radius > 0.0 && p.co_radius < 1.0) || !std::isfinite(p.angle)) {
      throw DomainError("dilated test function needs points in the punctured open disk");
    }
    scaled.push_back(DiskPoint::polar((1.0 - r) + r * p.co_radius, p.angle));
    log_abs += std::log1p(-p.co_radius);
    phase += p.angle;
    min_co = std::min(min_co, p.co_radius);
  }
  const double n = static_cast<double>(zeros.size());
  // (-1)^N / (r^N prod l_i)
  const double sign = (zeros.size() % 2 == 0) ? 1.0 : -1.0;
  const Complex scale = sign * std::polar(std::exp(-n * log_r - log_abs), -phase);
  // poles of Bt(r z) at |z| = 1 / (r^2 |l|)
  const double log_radius = -2.0 * log_r - std::log1p(-min_co);
  return FunctionHandle(std::make_shared<DilatedBlaschke>(BlaschkeProduct(std::span<const DiskPoint>(scaled)), r,
                                                          scale, log_radius));
}

FunctionHandle dilated_test_function(std::span<const Complex> zeros) {
  std::vector<DiskPoint> pts;
  pts.reserve(zeros.size());
  for (const Complex& z : zeros) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("point is not finite");
    if (z == Complex(0.0, 0.0)) throw DomainError("dilated test function is undefined when a point is 0");
    if (!(std::abs(z) < 1.0)) throw DomainError("point outside the open disk");
    pts.push_back(DiskPoint::from_complex(z));
  }
  return dilated_test_function(std::span<const DiskPoint>(pts));
}

}  // namespace besovcap
