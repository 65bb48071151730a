#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besovcap/angular_grid.hpp"
#include "besovcap/exponent.hpp"
#include "besovcap/function_handle.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// How many angular samples to spend on the circle |z| = 1 - s.
struct AngularPolicy {
  int oversample = 8;
  /// Fixed M = oversample * ceil(p) * (deg + 1) on every circle.
  bool conservative = false;
  std::size_t max_samples = std::size_t{1} << 23;
  /// Cap used when every requested exponent is infinite (sample max only).
  std::size_t max_samples_sup = std::size_t{1} << 14;
};

/// Sample count for |f'|^p on the circle of radius 1 - s.
///
/// Two requirements are combined: the bandwidth of |f'|^p (about ceil(p)
/// times the degree, or 4/s for s > 4/N), and the width d = log R - log(1 - s)
/// of the strip where t -> f'((1 - s) e^{it}) is analytic, which controls the
/// geometric convergence of the trapezoid rule. The result is a multiple of 16.
std::size_t angular_samples(const AnalyticFunction& f, double s, std::span<const Exponent> ps,
                            const AngularPolicy& policy);
std::size_t angular_samples(const AnalyticFunction& f, double s, Exponent p, const AngularPolicy& policy);

/// ||f'_rho||_{L^p} with rho = 1 - s for every p in `ps`, from a single pass over
/// the grid. Normalized measure dt / 2 pi. For p = inf this is the sample max,
/// optionally improved by refine_sup around the largest samples.
std::vector<double> derivative_lp_norms(const AnalyticFunction& f, double s, std::span<const Exponent> ps,
                                        const AngularGrid& grid, bool refine_max = false);

/// Local search for max |f'((1 - s) e^{it})| near each start angle. Peaks of
/// width ~s can hide between samples when s is far below the grid spacing h,
/// so offsets h 2^{-k/4} down to s/8 are probed on both sides, followed by a
/// golden-section step around the best probe. Deterministic.
double refine_sup(const AnalyticFunction& f, double s, std::span<const double> start_angles, double spacing);

/// ||f'_rho||_{L^p(T)} by the trapezoid rule on `grid`; rho must lie in [0, 1].
double lp_norm_circle(const FunctionHandle& f, Radius rho, Exponent p, const AngularGrid& grid);

/// ||g_rho||_{L^p(T)} for a plain function; rho = 1 is allowed.
double lp_norm_values(const std::function<Complex(Complex)>& g, Radius rho, Exponent p, const AngularGrid& grid);

/// Set when the grid is coarser than oversample * degree_hint.
std::optional<std::string> coarse_grid_warning(const AnalyticFunction& f, std::size_t samples, int oversample);

/// (sum |a_k|^2)^{1/2}.
double h2_norm_series(std::span<const Complex> coeffs);

}  // namespace besovcap
