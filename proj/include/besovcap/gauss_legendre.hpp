#pragma once

#include <vector>

namespace besovcap {

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes by Newton iteration on P_n from the Chebyshev initial guesses.
/// Throws std::invalid_argument for order < 1.
GaussRule gauss_legendre(int order);

}  // namespace besovcap
