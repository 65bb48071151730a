#include "besovcap/angular_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace besovcap {

namespace {

// e^{2 pi i k / M} with the angle reduced to [-pi, pi] first.
Complex unit_root(std::size_t k, std::size_t m) {
  k %= m;
  long double frac = static_cast<long double>(k) / static_cast<long double>(m);
  if (frac > 0.5L) frac -= 1.0L;
  const long double t = 2.0L * 3.14159265358979323846264338327950288L * frac;
  return Complex(static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t)));
}

}  // namespace

AngularGrid::AngularGrid(std::size_t samples) : size_(samples) {
  if (samples < kMinSamples) {
    throw std::invalid_argument("angular grid needs at least 4 samples, got " + std::to_string(samples));
  }
  block_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
  fine_.resize(block_);
  for (std::size_t m = 0; m < block_; ++m) fine_[m] = unit_root(m, size_);
  const std::size_t coarse = size_ / block_ + 1;
  coarse_.resize(coarse);
  for (std::size_t k = 0; k < coarse; ++k) coarse_[k] = unit_root(k * block_, size_);
}

double AngularGrid::angle(std::size_t j) const {
  return 2.0 * kPi * static_cast<double>(j % size_) / static_cast<double>(size_);
}

Complex AngularGrid::direction(std::size_t j) const {
  j %= size_;
  const std::size_t hi = j / block_;
  const std::size_t lo = j % block_;
  if (lo == 0) return coarse_[hi];
  const Complex a = coarse_[hi];
  const Complex b = fine_[lo];
  return Complex(a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real());
}

void AngularGrid::directions(std::size_t first, std::span<double> re, std::span<double> im) const {
  for (std::size_t k = 0; k < re.size(); ++k) {
    const Complex d = direction(first + k);
    re[k] = d.real();
    im[k] = d.imag();
  }
}

}  // namespace besovcap
