// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "besovcap/besov.hpp"
#include "besovcap/blaschke.hpp"
#include "besovcap/capacity.hpp"
#include "besovcap/circle_norms.hpp"
#include "besovcap/harness.hpp"
#include "besovcap/schaffer.hpp"
#include "besovcap/sigma_star.hpp"
#include "besovcap/wiener_lp.hpp"

using namespace besovcap;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

struct Window {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double ratio() const { return hi / lo; }
};

SweepConfig make_config(const std::string& text) { return SweepConfig::from_key_values(parse_key_values(text)); }

bool has_params(const SweepRow& r, double p, double q) {
  if (!r.params) return false;
  const auto match = [](Exponent e, double v) {
    return std::isinf(v) ? e.is_infinite() : (!e.is_infinite() && std::abs(e.value() - v) < 1e-12);
  };
  return match(r.params->p, p) && match(r.params->q, q);
}

BlaschkeProduct random_product(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> t(-kPi, kPi);
  std::vector<Complex> zeros;
  for (int i = 0; i < degree; ++i) zeros.push_back(std::polar(0.999 * std::sqrt(u(rng)), t(rng)));
  return BlaschkeProduct(zeros);
}

// N (Gamma(q) Gamma((N-1) q + 1) / Gamma(N q + 1))^{1/q}
double monomial_seminorm(int n, double q) {
  const long double lg = std::lgamma(static_cast<long double>(q)) +
                         std::lgamma(static_cast<long double>((n - 1) * q + 1.0)) -
                         std::lgamma(static_cast<long double>(n * q + 1.0));
  return static_cast<double>(n * std::exp(lg / static_cast<long double>(q)));
}

Outcome exact_identities() {
  Outcome o;
  const AngularGrid grid(8192);
  double worst = 0.0;
  for (const double b : {0.3, 0.5, 0.9}) {
    for (const int n : {1, 3, 8}) {
      auto g = [b, n](Complex z) { return 1.0 / (1.0 - b * std::pow(z, n)); };
      const double v = lp_norm_values(g, Radius::from_rho(1.0), Exponent(2.0), grid);
      worst = std::max(worst, std::abs(v * v - 1.0 / (1.0 - b * b)));
    }
  }
  o.require(worst < 1e-10, fmt("H2 identity error %.3g", worst));

  worst = 0.0;
  for (const Complex w : {Complex(0.2, 0.1), Complex(-0.5, 0.5), Complex(0.0, 0.9), Complex(0.95, 0.0)}) {
    auto g = [w](Complex z) { return 1.0 / (1.0 - std::conj(w) * z); };
    const double v = lp_norm_values(g, Radius::from_rho(1.0), Exponent(2.0), grid);
    const double expect = 1.0 / (1.0 - std::norm(w));
    worst = std::max(worst, std::abs(v * v - expect) / expect);
  }
  o.require(worst < 1e-10, fmt("Forelli-Rudin error %.3g", worst));

  std::mt19937_64 rng(11);
  double cap_err = 0.0;
  double det_err = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const BlaschkeProduct b = random_product(rng, 1 + trial % 20);
    const std::vector<Complex> z = b.zeros();
    long double prod = 1.0L;
    for (const Complex& l : z) prod *= std::abs(std::complex<long double>(l.real(), l.imag()));
    const double p = static_cast<double>(prod);
    cap_err = std::max(cap_err, std::abs(cap_hinfty(z) * p - 1.0));
    cap_err = std::max(cap_err, std::abs(cap_hinfty(z) * std::abs(b.eval(0.0)) - 1.0));
    det_err = std::max(det_err, std::abs(std::abs(inverse_and_det(companion(z)).det) / p - 1.0));
  }
  for (int n = 2; n <= 5; ++n) {
    const std::vector<Complex> z = sigma_star_points(n);
    const double p = std::pow(1.0 - 1.0 / n, n);
    cap_err = std::max(cap_err, std::abs(cap_hinfty(z) * p - 1.0));
    det_err = std::max(det_err, std::abs(std::abs(inverse_and_det(companion(z)).det) / p - 1.0));
  }
  o.require(cap_err < 1e-12, fmt("cap_Hinf relative error %.3g", cap_err));
  o.require(det_err < 1e-12, fmt("|det companion| relative error %.3g", det_err));

  BesovQuadrature quad;
  quad.radial.cutoff = 1e-13;
  double beta_err = 0.0;
  for (const int n : {2, 4, 16, 64, 256}) {
    for (const double q : {1.0, 2.0, 4.0}) {
      const double v = besov_seminorm(monomial_handle(n), {Exponent(2.0), Exponent(q)}, quad).value;
      const double expect = monomial_seminorm(n, q);
      beta_err = std::max(beta_err, std::abs(v - expect) / expect);
    }
  }
  o.require(beta_err < 1e-8, fmt("monomial Beta relative error %.3g", beta_err));
  if (o.pass) o.detail = fmt("worst monomial error %.2g", beta_err);
  return o;
}

// rho(a, b) = |a - b| / |1 - conj(b) a|
double pseudo_hyperbolic(Complex a, Complex b) { return std::abs(a - b) / std::abs(1.0 - std::conj(b) * a); }

Outcome schwarz_pick() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> degree(1, 24);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_real_distribution<double> t(-kPi, kPi);
  const double tol = 1e-9;
  int violations = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const BlaschkeProduct b = random_product(rng, degree(rng));
    const Complex z = std::polar(std::sqrt(u(rng)) * 0.9999, t(rng));
    const Complex w = std::polar(std::sqrt(u(rng)) * 0.9999, t(rng));
    const Complex bz = b.eval(z);
    if ((1.0 - std::norm(z)) * std::abs(b.eval_deriv(z)) > 1.0 - std::norm(bz) + tol) ++violations;
    if (pseudo_hyperbolic(bz, b.eval(w)) > pseudo_hyperbolic(z, w) + tol) ++violations;
    if (std::abs(std::abs(b.eval(std::polar(1.0, t(rng)))) - 1.0) > tol) ++violations;
    if (std::abs(std::abs(b.eval(0.0)) - b.prod_moduli()) > tol) ++violations;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  if (o.pass) o.detail = "10000 pairs, 0 violations";
  return o;
}

// Criteria 3 and 4 share one sigma-star sweep.
struct SigmaSweep {
  Outcome prop1;
  Outcome sandwich;
};

SigmaSweep sigma_star_growth() {
  SigmaSweep out;
  const SweepResult r = run_sigma_star_sweep(make_config("n_min = 3\nn_max = 12\npairs = 1:inf, 4/3:2"));
  Window rw;
  double r3 = 0.0;
  double r12 = 0.0;
  double worst_tail = 0.0;
  Window uw;
  Window lw;
  int seen = 0;
  for (const SweepRow& row : r.rows) {
    const double L = std::log(static_cast<double>(row.N));
    if (row.experiment == "sigma_star.seminorm" && has_params(row, 1.0, INFINITY)) {
      const double v = row.value * L / std::log(L);
      rw.add(v);
      if (row.n == 3) r3 = v;
      if (row.n == 12) r12 = v;
      worst_tail = std::max(worst_tail, row.tail_bound / row.value);
      ++seen;
    }
    if (row.experiment == "sigma_star.upper" && has_params(row, 4.0, 2.0)) uw.add(row.value / std::pow(L, 0.25));
    if (row.experiment == "sigma_star.lower" && has_params(row, 4.0, 2.0)) lw.add(row.value / std::pow(L, 0.25));
  }
  out.prop1.require(seen == 10, "expected 10 seminorm rows, got " + std::to_string(seen));
  out.prop1.require(rw.ratio() <= 4.0, fmt("max r / min r = %.4g", rw.ratio()));
  out.prop1.require(r12 <= 2.0 * r3, fmt("r(12) = %.4g vs r(3) = %.4g", r12, r3));
  out.prop1.require(worst_tail < 0.01, fmt("tail fraction %.3g", worst_tail));
  if (out.prop1.pass) {
    out.prop1.detail = fmt("max/min r = %.4g, r(12)/r(3) = %.4g", rw.ratio(), r12 / r3) +
                       fmt(", worst tail %.2g", worst_tail);
  }
  out.sandwich.require(uw.hi > 0.0 && lw.hi > 0.0, "missing (4,2) rows");
  out.sandwich.require(uw.ratio() <= 4.0, fmt("U window %.4g", uw.ratio()));
  out.sandwich.require(lw.ratio() <= 4.0, fmt("L window %.4g", lw.ratio()));
  if (out.sandwich.pass) out.sandwich.detail = fmt("U window %.4g, L window %.4g", uw.ratio(), lw.ratio());
  return out;
}

Outcome region_two() {
  Outcome o;
  const SweepResult r = run_region_table(make_config(
      "families = random, monomial\nN = 16, 64, 256, 1024\npairs = 1:2, 2:4, 1:inf\nquantities = upper\nseed = 1"));
  std::map<std::string, Window> windows;
  std::map<std::string, int> counts;
  for (const SweepRow& row : r.rows) {
    if (row.experiment != "region.random.upper" && row.experiment != "region.monomial.norm") continue;
    const std::string key = row.experiment + " " + row.params->p.to_string() + ":" + row.params->q.to_string();
    windows[key].add(row.value);
    ++counts[key];
  }
  o.require(windows.size() == 6, "expected 6 series, got " + std::to_string(windows.size()));
  double worst = 0.0;
  for (const auto& [key, w] : windows) {
    o.require(counts[key] == 4, key + ": missing N values");
    o.require(w.ratio() <= 2.5, key + fmt(" window %.4g", w.ratio()));
    worst = std::max(worst, w.ratio());
  }
  if (o.pass) o.detail = fmt("worst window %.4g over 6 series", worst);
  return o;
}

Outcome case_four() {
  Outcome o;
  const SweepResult r =
      run_region_table(make_config("families = interp\nN = 8, 16, 32, 64\npairs = inf:2\nquantities = norm"));
  Window w;
  double first = 0.0;
  double worst_growth = 0.0;
  for (const SweepRow& row : r.rows) {
    if (row.experiment != "region.interp.norm") continue;
    const double v = row.value * row.value / static_cast<double>(row.N);
    w.add(v);
    if (row.N == 8) first = v;
  }
  o.require(w.hi > 0.0 && first > 0.0, "missing rows");
  // the constant fitted at the smallest N must cover every larger N
  worst_growth = w.hi / first;
  o.require(w.ratio() <= 4.0, fmt("window %.4g", w.ratio()));
  o.require(worst_growth <= 1.0 + 1e-12, fmt("norm^2 / N exceeds its N = 8 value by %.4g", worst_growth));
  if (o.pass) o.detail = fmt("norm^2/N in [%.4g, %.4g]", w.lo, w.hi);
  return o;
}

Outcome wiener() {
  Outcome o;
  const std::vector<std::pair<std::vector<Complex>, double>> cases{{{0.5}, 3.0}, {{0.5, -0.5}, 5.0}};
  for (const auto& [zeros, expect] : cases) {
    const WienerResult w = solve_wiener(zeros, 16);
    o.require(std::abs(w.primal - expect) < 1e-5, fmt("primal %.12g vs %.0f", w.primal, expect));
    o.require(w.lower.has_value(), "no certified lower bound");
    if (w.lower) {
      o.require(*w.lower <= w.primal, "lower above primal");
      o.require(std::abs(*w.lower - expect) < 1e-5, fmt("lower %.12g vs %.0f", *w.lower, expect));
      o.require(w.primal - *w.lower < 1e-4, fmt("gap %.3g", w.primal - *w.lower));
    }
  }
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<Complex> z = random_product(rng, 1 + trial % 6).zeros();
    const WienerResult w = solve_wiener(z, 64);
    if (w.lower) o.require(*w.lower <= w.primal, "lower above primal on a random set");
  }
  if (o.pass) o.detail = "cap_W(0.5) = 3, cap_W(+-0.5) = 5, lower <= primal";
  return o;
}

Outcome schaffer() {
  Outcome o;
  const SweepResult r =
      run_wiener_schaffer(make_config("n_min = 2\nn_max = 5\nfamilies = random\nN = 16, 64, 256\nseed = 1"));
  o.require(r.failures == 0, std::to_string(r.failures) + " failed rows");
  std::map<int, double> excess;
  int matrices = 0;
  double worst = 0.0;
  for (const SweepRow& row : r.rows) {
    if (row.experiment.rfind("schaffer.", 0) == 0) {
      const double bound = std::sqrt(std::exp(1.0) * static_cast<double>(row.N));
      o.require(row.value <= bound * (1.0 + 1e-6), row.experiment + fmt(" N = %.0f ratio %.6g", row.N, row.value));
      worst = std::max(worst, row.value / bound);
      ++matrices;
    }
    if (row.experiment == "wiener.excess") excess[row.n] = row.value;
  }
  o.require(matrices == 21, "expected 21 matrix rows, got " + std::to_string(matrices));
  o.require(excess.size() == 4, "missing Wiener rows");
  for (int n = 2; n < 5; ++n) {
    if (excess.count(n) && excess.count(n + 1)) {
      o.require(excess[n + 1] >= 0.9 * excess[n], fmt("prod*(cap_W - 1) drops at n = %.0f", n + 1));
    }
  }
  // the same bound for interp_sequence companions
  for (const std::size_t N : {8, 16, 32}) {
    std::vector<Complex> z;
    for (const DiskPoint& p : interp_sequence(N)) z.push_back(p.to_complex());
    const DenseMatrix t = companion(z);
    for (const OperatorNormKind k : {OperatorNormKind::ColSum, OperatorNormKind::Spectral, OperatorNormKind::RowSum}) {
      const double v = schaffer_ratio(t, k);
      const double bound = std::sqrt(std::exp(1.0) * static_cast<double>(N));
      o.require(v <= bound * (1.0 + 1e-6), "interp companion exceeds the bound");
      worst = std::max(worst, v / bound);
    }
  }
  if (o.pass) {
    o.detail = fmt("largest ratio / sqrt(eN) = %.3g", worst) +
               fmt(", prod*(cap_W - 1) from %.4g to %.4g", excess[2], excess[5]);
  }
  return o;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "besovcap_acceptance";
  std::filesystem::remove_all(base);
  std::vector<std::string> csv;
  for (const int workers : {1, 4}) {
    const std::filesystem::path dir = base / ("w" + std::to_string(workers));
    const std::string cmd = "\"" + cli + "\" sigma-star-sweep --n-min 2 --n-max 6 --pairs 1:inf,4/3:2 --workers " +
                            std::to_string(workers) + " --out \"" + dir.string() + "\" > /dev/null";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "CLI exited with " + std::to_string(rc));
    csv.push_back(read_file(dir / "sigma-star-sweep.csv"));
  }
  o.require(!csv[0].empty(), "empty CSV");
  o.require(csv[0] == csv[1], "CSV differs between worker counts");
  if (o.pass) o.detail = std::to_string(csv[0].size()) + " identical bytes";
  std::filesystem::remove_all(base);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : BESOVCAP_CLI_PATH;
  int failed = 0;
  const auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s (%s)\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  };
  report(1, "exact identities", exact_identities);
  report(2, "Schwarz-Pick and unimodularity", schwarz_pick);
  SigmaSweep sweep;
  bool sweep_ok = true;
  std::string sweep_error;
  try {
    sweep = sigma_star_growth();
  } catch (const std::exception& e) {
    sweep_ok = false;
    sweep_error = std::string("exception: ") + e.what();
  }
  report(3, "sigma-star seminorm window", [&] { return sweep_ok ? sweep.prop1 : Outcome{false, sweep_error}; });
  report(4, "(4,2) sandwich windows", [&] { return sweep_ok ? sweep.sandwich : Outcome{false, sweep_error}; });
  report(5, "region II boundedness", region_two);
  report(6, "interpolating sequence at (inf,2)", case_four);
  report(7, "Wiener oracles", wiener);
  report(8, "Schaffer bound", schaffer);
  report(9, "determinism across worker counts", [&] { return determinism(cli); });
  std::printf("%d of 9 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
