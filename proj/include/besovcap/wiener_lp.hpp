#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "besovcap/types.hpp"

namespace besovcap {

/// Coefficient functional h_k = [k = 0] y0 + sum_i conj(l_i)^k y_i.
///
/// For every f = sum c_k z^k in the Wiener algebra with f(0) = 1 and f = 0 on
/// the zeros, sum conj(h_k) c_k = conj(y0). So sup_k |h_k| <= 1 implies
/// sum |c_k| >= |y0|, i.e. cap_W >= |y0|. The certificate stores y already
/// scaled so that sup_k |h_k| <= 1; indices k <= verified_through are checked
/// one by one and the rest are bounded by sum |y_i| r^{K+1}, r = max |l_i|.
struct DualCertificate {
  std::vector<Complex> zeros;
  Complex y0;
  std::vector<Complex> y;
  std::size_t verified_through = 0;
  /// 1 - (geometric tail bound beyond verified_through).
  double margin = 0.0;
  /// |y0|.
  double lower = 0.0;
};

enum class WienerMode { Auto, Complex, Real };

struct WienerOptions {
  double tol = 1e-9;
  std::size_t max_iter = 200000;
  WienerMode mode = WienerMode::Auto;
  /// Over-relaxation parameter of the splitting, in (0, 2).
  double relaxation = 1.6;
  /// Largest index the certificate verifier may scan.
  std::size_t max_verify = 50000000;
};

struct WienerResult {
  /// sum |c_k| of the final iterate; feasible up to rounding.
  double primal = 0.0;
  /// Certified lower bound for the unrestricted capacity, if the certificate closed.
  std::optional<double> lower;
  std::optional<DualCertificate> certificate;
  std::vector<Complex> coefficients;
  std::size_t iterations = 0;
  bool converged = false;
  /// primal - best in-loop dual estimate, relative to primal.
  double relative_gap = 0.0;
  /// max_i |sum_k c_k l_i^k| and |c_0 - 1|.
  double constraint_residual = 0.0;
  bool real_mode = false;
};

/// Minimises sum_{k<=D} |c_k| subject to c_0 = 1 and sum_k c_k l_i^k = 0 by
/// over-relaxed ADMM (affine projection + complex soft thresholding). The
/// points must be distinct and lie in the punctured open disk; D >= |zeros|.
WienerResult solve_wiener(std::span<const Complex> zeros, std::size_t degree, const WienerOptions& options = {});

/// Primal value of the degree-D problem: >= cap_W(zeros), non-increasing in D.
double cap_wiener_primal(std::span<const Complex> zeros, std::size_t degree, double tol = 1e-9,
                         std::size_t max_iter = 200000);

/// Certified lower bound for cap_W(zeros). Throws CertificateError when the
/// certificate does not close.
std::pair<double, DualCertificate> cap_wiener_certified_lower(std::span<const Complex> zeros, std::size_t degree,
                                                              double tol = 1e-9);

/// Re-checks a certificate from scratch; returns |y0| or throws CertificateError.
double verify_certificate(const DualCertificate& cert, std::size_t max_verify = 50000000);

/// prod |l_i| (cap_W - 1) with the certified lower bound; a lower bound for S_N.
double schaffer_lower_from_capacity(std::span<const Complex> zeros, std::size_t degree);

/// True when the multiset of points is closed under conjugation.
bool conjugation_closed(std::span<const Complex> zeros, double tol = 1e-12);

}  // namespace besovcap
