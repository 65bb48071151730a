#include "besovcap/circle_norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "besovcap/reduction.hpp"

namespace besovcap {

namespace {

constexpr std::size_t kChunk = 4096;

std::size_t round_up16(double m) {
  const double c = std::ceil(m / 16.0) * 16.0;
  if (!(c < 1e18)) return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(c);
}

// |w|^p from |w|^2 without pow() for the exponents that show up in sweeps.
class PowerKernel {
 public:
  explicit PowerKernel(Exponent p) : p_(p.value()) {
    const double half = p_ / 2.0;
    if (p.is_infinite()) {
      kind_ = Kind::Max;
    } else if (p_ == 1.0) {
      kind_ = Kind::Sqrt;
    } else if (half == std::floor(half) && half <= 8.0) {
      kind_ = Kind::IntHalf;
      k_ = static_cast<int>(half);
    } else if (3.0 * half == std::floor(3.0 * half) && 3.0 * half <= 8.0) {
      // |w|^p = cbrt(|w|^2)^(3p/2)
      kind_ = Kind::Cbrt;
      k_ = static_cast<int>(3.0 * half);
    } else {
      kind_ = Kind::Pow;
    }
  }

  bool is_max() const { return kind_ == Kind::Max; }

  double operator()(double mag2) const {
    switch (kind_) {
      case Kind::Sqrt:
        return std::sqrt(mag2);
      case Kind::IntHalf:
        return ipow(mag2, k_);
      case Kind::Cbrt:
        return ipow(std::cbrt(mag2), k_);
      case Kind::Pow:
        return std::pow(mag2, p_ / 2.0);
      case Kind::Max:
        break;
    }
    return std::sqrt(mag2);
  }

  double finish(double mean) const {
    if (kind_ == Kind::Max) return mean;
    if (kind_ == Kind::Sqrt) return mean;
    if (kind_ == Kind::IntHalf && k_ == 1) return std::sqrt(mean);
    return std::pow(mean, 1.0 / p_);
  }

 private:
  enum class Kind { Sqrt, IntHalf, Cbrt, Pow, Max };

  static double ipow(double x, int k) {
    double acc = x;
    for (int i = 1; i < k; ++i) acc *= x;
    return acc;
  }

  double p_;
  Kind kind_ = Kind::Pow;
  int k_ = 1;
};

double finite_rule(const AnalyticFunction& f, double s, int cp, int oversample) {
  const double os = static_cast<double>(oversample);
  const auto deg = f.degree_hint();
  double band = 4.0 / std::max(s, 1e-300);
  if (deg) band = std::min(band, static_cast<double>(*deg) + 1.0);
  double m = std::max(16.0, os * cp * band);
  const double strip = f.log_singularity_radius() - std::log1p(-std::min(s, 1.0 - 1e-16));
  if (std::isfinite(strip) && strip > 0.0) m = std::max(m, os * (7.0 + cp) / 2.0 / strip);
  return m;
}

}  // namespace

std::size_t angular_samples(const AnalyticFunction& f, double s, std::span<const Exponent> ps,
                            const AngularPolicy& policy) {
  if (ps.empty()) throw std::invalid_argument("angular_samples: no exponents");
  if (policy.oversample < 1) throw std::invalid_argument("angular_samples: oversample must be positive");
  int cp = 1;
  bool all_infinite = true;
  for (const Exponent& p : ps) {
    cp = std::max(cp, p.sampling_weight());
    all_infinite = all_infinite && p.is_infinite();
  }
  if (policy.conservative) {
    const double deg = static_cast<double>(f.degree_hint().value_or(0));
    return round_up16(std::max(16.0, policy.oversample * cp * (deg + 1.0)));
  }
  const std::size_t m = round_up16(finite_rule(f, s, cp, policy.oversample));
  const std::size_t cap = all_infinite ? policy.max_samples_sup : policy.max_samples;
  return std::max<std::size_t>(16, std::min(m, cap));
}

std::size_t angular_samples(const AnalyticFunction& f, double s, Exponent p, const AngularPolicy& policy) {
  return angular_samples(f, s, std::span<const Exponent>(&p, 1), policy);
}

double refine_sup(const AnalyticFunction& f, double s, std::span<const double> start_angles, double spacing) {
  const double floor_s = std::max(s, 1e-300);
  const int levels = std::clamp(static_cast<int>(std::ceil(4.0 * (std::log2(spacing / floor_s) + 3.0))), 1, 4400);
  const auto mag = [&](double t) {
    const double v = std::abs(f.derivative_polar(s, t));
    return std::isfinite(v) ? v : 0.0;
  };
  double best = 0.0;
  for (const double tc : start_angles) {
    // signed offsets, sorted
    std::vector<double> offs;
    offs.reserve(2 * static_cast<std::size_t>(levels) + 3);
    for (int k = levels; k >= 0; --k) offs.push_back(-spacing * std::exp2(-0.25 * k));
    offs.push_back(0.0);
    for (int k = 0; k <= levels; ++k) offs.push_back(spacing * std::exp2(-0.25 * (levels - k)));
    std::sort(offs.begin(), offs.end());
    std::size_t arg = 0;
    double local = -1.0;
    for (std::size_t i = 0; i < offs.size(); ++i) {
      const double v = mag(tc + offs[i]);
      if (v > local) {
        local = v;
        arg = i;
      }
    }
    double lo = offs[arg > 0 ? arg - 1 : arg];
    double hi = offs[arg + 1 < offs.size() ? arg + 1 : arg];
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo);
    double x2 = lo + g * (hi - lo);
    double f1 = mag(tc + x1);
    double f2 = mag(tc + x2);
    for (int it = 0; it < 60 && hi - lo > 1e-3 * floor_s; ++it) {
      if (f1 >= f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = mag(tc + x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = mag(tc + x2);
      }
    }
    best = std::max({best, local, f1, f2});
  }
  return best;
}

std::vector<double> derivative_lp_norms(const AnalyticFunction& f, double s, std::span<const Exponent> ps,
                                        const AngularGrid& grid, bool refine_max) {
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("circle radius outside [0, 1]");
  std::vector<PowerKernel> kernels;
  kernels.reserve(ps.size());
  for (const Exponent& p : ps) kernels.emplace_back(p);
  std::vector<PairwiseSum> sums(ps.size());
  double max_mag2 = 0.0;
  // largest samples (value, index), kept for refine_sup
  constexpr std::size_t kCandidates = 8;
  std::vector<std::pair<double, std::size_t>> top;
  const std::size_t M = grid.size();
  std::vector<Complex> buf(std::min(kChunk, M));
  std::vector<double> mag2(buf.size());
  for (std::size_t base = 0; base < M; base += kChunk) {
    const std::size_t len = std::min(kChunk, M - base);
    f.sample_derivative(s, grid, base, std::span(buf).first(len));
    for (std::size_t j = 0; j < len; ++j) {
      mag2[j] = std::norm(buf[j]);
      if (!std::isfinite(mag2[j])) throw std::runtime_error("non-finite derivative sample");
      max_mag2 = std::max(max_mag2, mag2[j]);
      if (refine_max && (top.size() < kCandidates || mag2[j] > top.back().first)) {
        const std::pair<double, std::size_t> c{mag2[j], base + j};
        top.insert(std::upper_bound(top.begin(), top.end(), c,
                                    [](const auto& a, const auto& b) { return a.first > b.first; }),
                   c);
        if (top.size() > kCandidates) top.pop_back();
      }
    }
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      if (kernels[k].is_max()) continue;
      for (std::size_t j = 0; j < len; ++j) sums[k].add(kernels[k](mag2[j]));
    }
  }
  double sup = std::sqrt(max_mag2);
  const bool want_max = std::any_of(kernels.begin(), kernels.end(), [](const PowerKernel& k) { return k.is_max(); });
  if (refine_max && want_max && !top.empty()) {
    std::vector<double> starts;
    for (const auto& c : top) starts.push_back(grid.angle(c.second));
    sup = std::max(sup, refine_sup(f, s, starts, 2.0 * kPi / static_cast<double>(M)));
  }
  std::vector<double> out(ps.size());
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    if (kernels[k].is_max()) {
      out[k] = sup;
    } else {
      out[k] = kernels[k].finish(sums[k].total() / static_cast<double>(M));
    }
  }
  return out;
}

double lp_norm_circle(const FunctionHandle& f, Radius rho, Exponent p, const AngularGrid& grid) {
  return derivative_lp_norms(f.function(), rho.complement(), std::span<const Exponent>(&p, 1), grid)[0];
}

double lp_norm_values(const std::function<Complex(Complex)>& g, Radius rho, Exponent p, const AngularGrid& grid) {
  const double r = rho.rho();
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("circle radius outside [0, 1]");
  const PowerKernel kernel(p);
  PairwiseSum sum;
  double max_abs = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double m2 = std::norm(g(r * grid.direction(j)));
    if (kernel.is_max()) {
      max_abs = std::max(max_abs, std::sqrt(m2));
    } else {
      sum.add(kernel(m2));
    }
  }
  if (kernel.is_max()) return max_abs;
  return kernel.finish(sum.total() / static_cast<double>(grid.size()));
}

std::optional<std::string> coarse_grid_warning(const AnalyticFunction& f, std::size_t samples, int oversample) {
  const auto deg = f.degree_hint();
  if (!deg) return std::nullopt;
  const double need = static_cast<double>(oversample) * static_cast<double>(*deg);
  if (static_cast<double>(samples) >= need) return std::nullopt;
  return "angular grid too coarse: M = " + std::to_string(samples) + " < oversample * degree = " +
         std::to_string(static_cast<std::size_t>(need));
}

double h2_norm_series(std::span<const Complex> coeffs) {
  PairwiseSum sum;
  for (const Complex& c : coeffs) sum.add(std::norm(c));
  return std::sqrt(sum.total());
}

}  // namespace besovcap
