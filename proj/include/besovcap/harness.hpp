#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "besovcap/besov.hpp"
#include "besovcap/function_handle.hpp"
#include "besovcap/schaffer.hpp"
#include "besovcap/types.hpp"

namespace besovcap {

/// Malformed config text, unknown keys or values out of range.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using KeyValues = std::map<std::string, std::string>;

/// Plain `key = value` lines; `#` starts a comment; later keys win.
KeyValues parse_key_values(std::string_view text);
/// Throws ConfigError naming the path if the file cannot be read.
KeyValues read_config_file(const std::string& path);
/// Applies one `key=value` assignment.
void apply_override(KeyValues& kv, std::string_view assignment);

/// Everything a sweep or a single computation needs.
///
/// Keys: experiment, n_min, n_max, N (list), pairs ("p:q" list, e.g.
/// "1:inf,4/3:2"), quantities (seminorm, lower, upper, norm), families (sigma_star,
/// random, interp, monomial), norms (col-sum, spectral, row-sum), points,
/// cutoff, order, oversample, conservative, seed, workers, out, svg, budget,
/// wiener_tol, degree_factor, degree. Lists are comma separated.
struct SweepConfig {
  std::string experiment = "sweep";
  int n_min = 2;
  int n_max = 4;
  std::vector<std::size_t> N_values{16, 64, 256, 1024};
  std::vector<BesovParams> pairs{{Exponent(1.0), Exponent::infinity()}};
  std::vector<std::string> quantities{"seminorm", "lower", "upper", "norm"};
  std::vector<std::string> families{"sigma_star", "random", "interp", "monomial"};
  std::vector<OperatorNormKind> norms{OperatorNormKind::ColSum, OperatorNormKind::Spectral, OperatorNormKind::RowSum};
  /// Point set for the single-set commands; see parse_points.
  std::string points;
  /// Radial cutoff, order, oversampling and worker count.
  BesovQuadrature quad;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool svg = true;
  /// Largest predicted number of factor evaluations a sweep may start with.
  double budget = 2e10;
  double wiener_tol = 1e-9;
  /// LP degree D = degree_factor * N unless `degree` is set.
  std::size_t degree_factor = 8;
  std::size_t degree = 0;

  static SweepConfig from_key_values(const KeyValues& kv);
  /// Every value-affecting setting in a fixed order (no workers, no paths).
  std::string canonical() const;
  /// FNV-1a of canonical().
  std::uint64_t hash() const;
};

struct SweepRow {
  std::string experiment;
  /// sigma-star level, 0 for other families.
  int n = 0;
  std::size_t N = 0;
  /// Exponents the value refers to; empty for Wiener and matrix rows.
  std::optional<BesovParams> params;
  double value = 0.0;
  /// Growth law evaluated at N (natural log).
  double normalizer = 1.0;
  double ratio = 0.0;
  double tail_bound = 0.0;
  double quad_err = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Footer lines: run-wide constants, warnings, per-row failures.
  std::vector<std::string> summary;
  /// Rows that could not be produced (certificate or convergence failures).
  std::size_t failures = 0;
};

/// Growth of ||B*||*_{B0_{p,q}}: loglog N / (log N)^{1-1/q} for p = 1,
/// (log N)^{-(1/p-1/q)} for 1 < p <= q, and 1 for p > q.
double seminorm_law(BesovParams params, std::size_t N);
/// Growth of prod|l| * cap_{B0_{p,q}} from the test function B / B(0):
/// (log N)^{1/q-1/2} on [1,2]^2, 1 for p <= q with q >= 2,
/// (log N)^{1/q-1/p} for q <= p with p >= 2.
double region_law(BesovParams params, std::size_t N);
/// Growth of ||B||_{B0_{p,q}} over all Blaschke products of degree N: the
/// region law for p < inf, N^{1/q} for p = inf and q < inf.
double blaschke_norm_law(BesovParams params, std::size_t N);
/// log N / loglog N.
double wiener_law(std::size_t N);

/// Counter-based generator: the same (seed, N, index) always gives the same draw.
std::uint64_t splitmix64(std::uint64_t x);
double uniform_draw(std::uint64_t seed, std::uint64_t N, std::uint64_t index);
/// N points with |l| = 1 - 1/N and independent uniform phases.
std::vector<DiskPoint> random_circle_points(std::uint64_t seed, std::size_t N);

/// A point set or function named by a spec string:
///   sigma_star:<n>, interp:<N>, random:<N>, monomial:<N>, zeros:<z1>;<z2>;...
/// with complex numbers written as 0.5, -0.2i or 0.3+0.4i.
struct PointSet {
  std::string family;
  int n = 0;
  std::vector<DiskPoint> points;
  /// Fast handle for the Blaschke product (or z^N).
  FunctionHandle handle;
  /// prod |l|; 0 for monomials.
  double prod_moduli = 0.0;
};
PointSet parse_points(std::string_view spec, std::uint64_t seed);
Complex parse_complex(std::string_view text);

/// Sigma-star growth sweep over n_min..n_max. For each configured (p,q) the
/// rows are ||B*||*_{B0_{p,q}}, the duality ratio (a lower bound for
/// prod|l| * cap in the conjugate pair) and prod|l| * upper bound in the
/// conjugate pair. Throws CostGuardError before any work if the predicted
/// work exceeds the budget.
SweepResult run_sigma_star_sweep(const SweepConfig& cfg);
/// Capacity bounds for each configured (p,q) over the witness families:
/// `norm` rows ||B||_{B0_{p,q}}, `upper` rows prod|l| * upper bound and `lower`
/// rows the duality ratio, as selected by cfg.quantities.
SweepResult run_region_table(const SweepConfig& cfg);
/// Certified Wiener capacities and companion-matrix Schaffer ratios.
SweepResult run_wiener_schaffer(const SweepConfig& cfg);

/// Single point set (cfg.points) commands.
SweepResult run_besov_norm(const SweepConfig& cfg);
SweepResult run_capacity_bounds(const SweepConfig& cfg);
SweepResult run_wiener_cap(const SweepConfig& cfg);
SweepResult run_schaffer(const SweepConfig& cfg);

/// %.17g, with "inf", "-inf" and "nan".
std::string format_double(double v);
/// Header `experiment,n,N,p,q,value,normalizer,ratio,tail_bound,quad_err`, LF endings.
std::string to_csv(const std::vector<SweepRow>& rows);
/// Log-log plot of value and normalizer against N, one series per experiment,
/// with the config hash in a leading comment.
std::string to_svg(const std::vector<SweepRow>& rows, const SweepConfig& cfg);

struct EmittedFiles {
  std::string csv;
  std::string svg;
  std::string summary;
};
/// Writes <out>/<experiment>.csv, .svg (if enabled) and .summary.txt.
/// Throws std::invalid_argument for an empty row list and std::runtime_error
/// naming the path on I/O failure.
EmittedFiles emit(const SweepResult& result, const SweepConfig& cfg);

}  // namespace besovcap
