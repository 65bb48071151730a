#pragma once

#include <span>
#include <string>
#include <vector>

#include "besovcap/besov.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// Checks that every point lies in the punctured open disk and returns
/// prod |l_i|. Throws DomainError otherwise.
double prod_moduli(std::span<const Complex> zeros);
double prod_moduli(std::span<const DiskPoint> zeros);

/// 1 / prod |l_i|.
double cap_hinfty(std::span<const Complex> zeros);
double cap_hinfty(std::span<const DiskPoint> zeros);

/// The H^2 capacity: the least-norm interpolant is B / B(0), so this is also
/// 1 / prod |l_i|.
double cap_h2(std::span<const Complex> zeros);

/// A capacity bound together with the norm computation behind it.
struct CapacityEstimate {
  double value = 0.0;
  NormReport norm;
};

/// ||B||_{B^0_{p,q}} / prod |l_i|, i.e. the norm of the test function B / B(0).
CapacityEstimate upper_bound_blaschke(std::span<const Complex> zeros, BesovParams params,
                                      const BesovQuadrature& quad = {});
/// Same, for a Blaschke handle with known prod |l_i| (fast paths such as
/// sigma_star_handle). One call per exponent pair, sharing the radial work.
std::vector<CapacityEstimate> upper_bound_blaschke(const FunctionHandle& blaschke, double prod_moduli,
                                                   std::span<const BesovParams> params,
                                                   const BesovQuadrature& quad = {});

/// ||f||_{B^0_{inf,q}} for the dilated test function; an upper bound for
/// cap_{B^0_{inf,q}}(zeros).
CapacityEstimate upper_bound_dilated(std::span<const Complex> zeros, Exponent q, const BesovQuadrature& quad = {});
CapacityEstimate upper_bound_dilated(const FunctionHandle& dilated, Exponent q, const BesovQuadrature& quad = {});

/// (1 - prod|l|^2) / ||B||*_{B^0_{p',q'}}. A lower bound for prod|l| * cap up
/// to an absolute constant that is not known explicitly.
CapacityEstimate duality_lower_ratio(std::span<const Complex> zeros, BesovParams params,
                                     const BesovQuadrature& quad = {});
std::vector<CapacityEstimate> duality_lower_ratio(const FunctionHandle& blaschke, double prod_moduli,
                                                  std::span<const BesovParams> params,
                                                  const BesovQuadrature& quad = {});

/// 1/p + 1/p' = 1.
Exponent conjugate_exponent(Exponent p);
BesovParams dual_params(BesovParams params);

struct CapacityBoundReport {
  enum class TestFunction { Blaschke, Dilated };

  double upper = 0.0;
  TestFunction test_function = TestFunction::Blaschke;
  NormReport upper_norm;
  double lower_ratio = 0.0;
  NormReport lower_norm;
  BesovParams dual;
  double prod_moduli = 0.0;
};

std::string to_string(CapacityBoundReport::TestFunction tag);

/// Upper bound from B / B(0) (and, for p = inf and q < inf, also from the
/// dilated test function, keeping the smaller) plus the duality ratio.
CapacityBoundReport capacity_bounds(std::span<const Complex> zeros, BesovParams params,
                                    const BesovQuadrature& quad = {});

}  // namespace besovcap
