#pragma once

#include <cstddef>
#include <vector>

#include "besovcap/function_handle.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// The lacunary configuration: rings k = 1..n, ring k holding the 2^k points
/// r_k e^{2 pi i j / 2^k} with r_k = (1 - 1/n)^{2^-k}. Its Blaschke product is
///
///   B(z) = prod_{k=1}^n (z^{2^k} - a) / (1 - a z^{2^k}),   a = 1 - 1/n,
///
/// of degree N = 2^{n+1} - 2.
struct SigmaStarSpec {
  int n;
  double a;
  std::size_t N;

  /// Throws std::invalid_argument unless 2 <= n <= 30.
  static SigmaStarSpec make(int n);
  /// 1 - r_k, computed without cancellation.
  double ring_co_radius(int k) const;
  /// prod |l_i| = a^n.
  double prod_moduli() const;
};

std::vector<Complex> sigma_star_points(int n);
std::vector<DiskPoint> sigma_star_disk_points(int n);

/// O(n) evaluation of the closed form through repeated squaring of z.
FunctionHandle sigma_star_handle(const SigmaStarSpec& spec);
/// The dilated test function of the configuration, also in O(n) per point.
FunctionHandle dilated_sigma_star(const SigmaStarSpec& spec);

/// l_j = 1 - 2^-j, j = 1..N. Returned in polar-complement form because
/// 1 - 2^-j is not representable as a double once j > 53.
std::vector<DiskPoint> interp_sequence(std::size_t N);

}  // namespace besovcap
