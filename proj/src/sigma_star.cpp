#include "besovcap/sigma_star.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>

namespace besovcap {

namespace {

constexpr int kMaxRings = 30;

// f(z) = scale * prod_{k=1}^n h_k(z^{2^k}),  h_k(w) = (beta_k w - alpha_k) / (1 - gamma_k w).
class LacunaryProduct final : public AnalyticFunction {
 public:
  struct Ring {
    double beta;
    double alpha;
    double gamma;
  };

  LacunaryProduct(Complex scale, std::vector<Ring> rings, std::optional<std::size_t> blaschke_degree,
                  std::optional<double> derivative_bound)
      : scale_(scale), rings_(std::move(rings)), blaschke_degree_(blaschke_degree), derivative_bound_(derivative_bound) {
    log_radius_ = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < rings_.size(); ++k) {
      const double m = std::ldexp(1.0, static_cast<int>(k) + 1);
      log_radius_ = std::min(log_radius_, -std::log(rings_[k].gamma) / m);
    }
    degree_ = (std::size_t{1} << (rings_.size() + 1)) - 2;
  }

  Complex value(Complex z) const override {
    Complex w = z;
    Complex acc = scale_;
    for (const Ring& r : rings_) {
      w = w * w;
      acc *= (r.beta * w - r.alpha) / (1.0 - r.gamma * w);
    }
    return acc;
  }

  Complex derivative(Complex z) const override {
    const std::size_t n = rings_.size();
    std::array<Complex, kMaxRings> h{};
    std::array<Complex, kMaxRings> dterm{};
    Complex w = z;      // z^{2^k}
    Complex e = z;      // z^{2^k - 1}
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0) e *= w;
      w = w * w;
      const Ring& r = rings_[k];
      const Complex den = 1.0 - r.gamma * w;
      h[k] = (r.beta * w - r.alpha) / den;
      const double m = std::ldexp(1.0, static_cast<int>(k) + 1);
      dterm[k] = (r.beta - r.gamma * r.alpha) / (den * den) * m * e;
    }
    return scale_ * cofactor_sum(std::span(h).first(n), std::span(dterm).first(n));
  }

  std::optional<std::size_t> degree_hint() const override { return degree_; }
  double log_singularity_radius() const override { return log_radius_; }
  std::optional<std::size_t> blaschke_degree() const override { return blaschke_degree_; }
  std::optional<double> derivative_bound() const override { return derivative_bound_; }
  double evaluation_cost() const override { return static_cast<double>(rings_.size()); }

  void sample_derivative(double s, const AngularGrid& grid, std::size_t first, std::span<Complex> out) const override {
    const std::size_t n = rings_.size();
    const std::size_t M = grid.size();
    const double log_rho = std::log1p(-s);
    std::array<double, kMaxRings> mod_w{};
    std::array<double, kMaxRings> mod_e{};
    for (std::size_t k = 0; k < n; ++k) {
      const double m = std::ldexp(1.0, static_cast<int>(k) + 1);
      mod_w[k] = std::exp(m * log_rho);
      mod_e[k] = std::exp((m - 1.0) * log_rho);
    }
    std::array<Complex, kMaxRings> h{};
    std::array<Complex, kMaxRings> dterm{};
    for (std::size_t idx = 0; idx < out.size(); ++idx) {
      const std::size_t j = (first + idx) % M;
      for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = std::size_t{2} << k;
        const Complex w = mod_w[k] * grid.direction((m * j) % M);
        const Complex e = mod_e[k] * grid.direction(((m - 1) * j) % M);
        const Ring& r = rings_[k];
        const double dr = 1.0 - r.gamma * w.real();
        const double di = -r.gamma * w.imag();
        const double inv = 1.0 / (dr * dr + di * di);
        const double nr = r.beta * w.real() - r.alpha;
        const double ni = r.beta * w.imag();
        h[k] = Complex((nr * dr + ni * di) * inv, (ni * dr - nr * di) * inv);
        // h'(w) = (beta - gamma alpha) / den^2
        const double c = (r.beta - r.gamma * r.alpha) * inv * inv * static_cast<double>(m);
        const double d2r = dr * dr - di * di;
        const double d2i = -2.0 * dr * di;  // conj(den)^2
        const Complex hp(c * d2r, c * d2i);
        dterm[k] = hp * e;
      }
      out[idx] = scale_ * cofactor_sum(std::span(h).first(n), std::span(dterm).first(n));
    }
  }

 private:
  // sum_k dterm_k prod_{j != k} h_j, finite when some h_j vanish.
  static Complex cofactor_sum(std::span<const Complex> h, std::span<const Complex> dterm) {
    const std::size_t n = h.size();
    std::array<Complex, kMaxRings + 1> suffix{};
    suffix[n] = Complex(1.0, 0.0);
    for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] * h[k];
    Complex prefix(1.0, 0.0);
    Complex acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      acc += dterm[k] * (prefix * suffix[k + 1]);
      prefix *= h[k];
    }
    return acc;
  }

  Complex scale_;
  std::vector<Ring> rings_;
  std::optional<std::size_t> blaschke_degree_;
  std::optional<double> derivative_bound_;
  double log_radius_;
  std::size_t degree_;
};

}  // namespace

SigmaStarSpec SigmaStarSpec::make(int n) {
  if (n < 2 || n > kMaxRings) throw std::invalid_argument("sigma-star needs 2 <= n <= 30, got " + std::to_string(n));
  return SigmaStarSpec{n, 1.0 - 1.0 / n, (std::size_t{1} << (n + 1)) - 2};
}

double SigmaStarSpec::ring_co_radius(int k) const {
  // 1 - a^{2^-k}
  return -std::expm1(std::ldexp(std::log1p(-1.0 / n), -k));
}

double SigmaStarSpec::prod_moduli() const { return std::pow(a, n); }

std::vector<DiskPoint> sigma_star_disk_points(int n) {
  const SigmaStarSpec spec = SigmaStarSpec::make(n);
  std::vector<DiskPoint> pts;
  pts.reserve(spec.N);
  for (int k = 1; k <= n; ++k) {
    const double co = spec.ring_co_radius(k);
    const std::size_t count = std::size_t{1} << k;
    for (std::size_t j = 1; j <= count; ++j) {
      // angle 2 pi j / 2^k, reduced to (-pi, pi]
      double frac = static_cast<double>(j % count) / static_cast<double>(count);
      if (frac > 0.5) frac -= 1.0;
      pts.push_back(DiskPoint::polar(co, 2.0 * kPi * frac));
    }
  }
  return pts;
}

std::vector<Complex> sigma_star_points(int n) {
  std::vector<Complex> out;
  for (const DiskPoint& p : sigma_star_disk_points(n)) out.push_back(p.to_complex());
  return out;
}

FunctionHandle sigma_star_handle(const SigmaStarSpec& spec) {
  std::vector<LacunaryProduct::Ring> rings(static_cast<std::size_t>(spec.n), {1.0, spec.a, spec.a});
  double bound = 0.0;
  for (int k = 1; k <= spec.n; ++k) {
    const double eps = spec.ring_co_radius(k);
    bound += std::ldexp(1.0, k) * (2.0 - eps) / eps;
  }
  return FunctionHandle(
      std::make_shared<LacunaryProduct>(Complex(1.0, 0.0), std::move(rings), spec.N, bound));
}

FunctionHandle dilated_sigma_star(const SigmaStarSpec& spec) {
  const double r = dilation_radius(spec.N);
  const double log_r = std::log(r);
  std::vector<LacunaryProduct::Ring> rings;
  for (int k = 1; k <= spec.n; ++k) {
    const double rm = std::exp(std::ldexp(log_r, k));  // r^{2^k}
    rings.push_back({rm, rm * spec.a, rm * rm * spec.a});
  }
  // (-1)^N / (r^N prod l_i) with prod l_i = (-a)^n and N even.
  const double denom = std::exp(static_cast<double>(spec.N) * log_r) * std::pow(-spec.a, spec.n);
  const double scale = 1.0 / denom;
  const double bound = std::abs(scale) * r / (1.0 - r * r);
  return FunctionHandle(std::make_shared<LacunaryProduct>(Complex(scale, 0.0), std::move(rings), std::nullopt, bound));
}

std::vector<DiskPoint> interp_sequence(std::size_t N) {
  if (N < 1) throw std::invalid_argument("interp_sequence needs N >= 1");
  if (N > 1000) throw std::invalid_argument("interp_sequence: co-radius 2^-N underflows for N > 1000");
  std::vector<DiskPoint> out;
  out.reserve(N);
  for (std::size_t j = 1; j <= N; ++j) out.push_back(DiskPoint::polar(std::ldexp(1.0, -static_cast<int>(j)), 0.0));
  return out;
}

}  // namespace besovcap
