#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "besovcap/circle_norms.hpp"
#include "besovcap/exponent.hpp"
#include "besovcap/function_handle.hpp"

namespace besovcap {

/// Exponents of B^0_{p,q} (smoothness 0, first derivative).
struct BesovParams {
  Exponent p{1.0};
  Exponent q{1.0};
};

/// Dyadic graded Gauss-Legendre rule in s = 1 - rho: level j covers
/// [2^{-j-1}, 2^{-j}] for j = 0..J-1, J = ceil(log2(1/cutoff)), the last
/// level clipped at s = cutoff.
struct RadialQuadrature {
  /// 0 selects default_cutoff(f).
  double cutoff = 0.0;
  int order = 16;
};

struct BesovQuadrature {
  RadialQuadrature radial;
  AngularPolicy angular;
  /// Threads for the radial nodes; nullopt or 0 means hardware concurrency.
  /// The BESOVCAP_WORKERS environment variable takes precedence.
  std::optional<unsigned> workers;
};

struct NormReport {
  double value = 0.0;
  /// q < inf: bound on the q-th power integral over s < cutoff.
  /// q = inf: bound on sup_{s < cutoff} s ||f'_{1-s}||_p.
  /// inf when no bound is available.
  double tail_bound = 0.0;
  /// |value(G nodes) - value(G/2 nodes)|, level by level.
  double quad_error_est = 0.0;
  std::size_t nodes_used = 0;
  std::size_t samples = 0;
  double cutoff = 0.0;
  /// Set for p = inf or q = inf, where maxima are taken over samples.
  bool lower_estimate = false;
  std::vector<std::string> warnings;
};

struct RadialNode {
  enum class Kind { Fine, Coarse, Endpoint };
  double s;
  double weight;
  Kind kind;
};

std::vector<RadialNode> radial_nodes(double cutoff, int order, bool with_endpoints);

/// min(1/(4 N^2), 1e-6, d/64), where N is the degree hint and d the distance
/// from the circle to the nearest singularity.
double default_cutoff(const AnalyticFunction& f);

/// Bound on the part of the q-th power integral with s < delta for a Blaschke
/// product of degree N: ||B'_rho||_p^p <= N (1 - rho)^{1 - p} gives
///
///   int_0^delta s^{q-1} ||B'||_p^q ds <= N^{q/p} delta^{q/p} p / q.
///
/// Returns inf for p = inf. Throws std::invalid_argument for q = inf or
/// delta outside (0, 1/2].
double tail_bound(std::size_t N, BesovParams params, double delta);

/// Number of derivative evaluations times the per-evaluation cost.
double predicted_work(const AnalyticFunction& f, std::span<const BesovParams> params, const BesovQuadrature& quad);

/// ||f||*_{B^0_{p,q}} for several exponent pairs. The radial nodes and angular
/// samples are shared across pairs.
std::vector<NormReport> besov_seminorms(const FunctionHandle& f, std::span<const BesovParams> params,
                                        const BesovQuadrature& quad = {});
NormReport besov_seminorm(const FunctionHandle& f, BesovParams params, const BesovQuadrature& quad = {});

/// |f(0)| + seminorm.
std::vector<NormReport> besov_norms(const FunctionHandle& f, std::span<const BesovParams> params,
                                    const BesovQuadrature& quad = {});
NormReport besov_norm(const FunctionHandle& f, BesovParams params, const BesovQuadrature& quad = {});

/// Seminorm with p = q = inf.
NormReport bloch_seminorm(const FunctionHandle& f, const BesovQuadrature& quad = {});

}  // namespace besovcap
