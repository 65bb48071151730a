#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "besovcap/types.hpp"

namespace besovcap {

/// Uniform angular grid t_j = 2 pi j / M on the circle.
///
/// Directions e^{i t_j} come from a two-level table (O(sqrt M) sincos calls),
/// so large grids are cheap to build; each direction is accurate to a few ulp.
class AngularGrid {
 public:
  static constexpr std::size_t kMinSamples = 4;

  explicit AngularGrid(std::size_t samples);

  std::size_t size() const { return size_; }
  double angle(std::size_t j) const;
  /// e^{2 pi i j / M}; j is reduced mod M.
  Complex direction(std::size_t j) const;
  /// Directions for j = first, first + 1, ... written as split real/imag arrays.
  void directions(std::size_t first, std::span<double> re, std::span<double> im) const;

 private:
  std::size_t size_;
  std::size_t block_;
  std::vector<Complex> coarse_;  // e^{2 pi i k block / M}
  std::vector<Complex> fine_;    // e^{2 pi i m / M}, m < block
};

}  // namespace besovcap
