#include "besovcap/blaschke.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace besovcap {

namespace {

constexpr std::size_t kChunk = 256;

struct Polar {
  double s;
  Complex w;
};

Polar to_polar(Complex z) {
  const double r = std::abs(z);
  if (r == 0.0) return {1.0, Complex(1.0, 0.0)};
  return {1.0 - r, z / r};
}

// Numerator (without the u factor) and denominator of one Moebius factor.
struct Factor {
  Complex num;
  Complex den;
};

inline Factor factor_at(double s, Complex w, double eps, double ucr, double uci) {
  const double vr = w.real() * ucr - w.imag() * uci;
  const double vi = w.real() * uci + w.imag() * ucr;
  const double kap = eps + s - eps * s;
  return {Complex((vr - 1.0) + eps - s * vr, vi - s * vi), Complex((1.0 - vr) + kap * vr, vi * (kap - 1.0))};
}

}  // namespace

BlaschkeProduct::BlaschkeProduct(std::span<const Complex> zeros) {
  points_.reserve(zeros.size());
  for (const Complex& z : zeros) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("Blaschke zero is not finite");
    if (!(std::abs(z) < 1.0)) {
      throw DomainError("Blaschke zero outside the open disk: |l| = " + std::to_string(std::abs(z)));
    }
    points_.push_back(DiskPoint::from_complex(z));
  }
  init();
}

BlaschkeProduct::BlaschkeProduct(std::span<const DiskPoint> zeros) : points_(zeros.begin(), zeros.end()) {
  for (const DiskPoint& p : points_) {
    if (!(p.co_radius > 0.0 && p.co_radius <= 1.0) || !std::isfinite(p.angle)) {
      throw DomainError("Blaschke zero outside the open disk: 1 - |l| = " + std::to_string(p.co_radius));
    }
  }
  init();
}

void BlaschkeProduct::init() {
  if (points_.empty()) throw DomainError("Blaschke product needs at least one zero");
  const std::size_t n = points_.size();
  eps_.resize(n);
  ucr_.resize(n);
  uci_.resize(n);
  weight_.resize(n);
  unit_product_ = Complex(1.0, 0.0);
  min_co_radius_ = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const DiskPoint& p = points_[i];
    const double angle = p.co_radius == 1.0 ? 0.0 : p.angle;
    eps_[i] = p.co_radius;
    ucr_[i] = std::cos(angle);
    uci_[i] = -std::sin(angle);
    weight_[i] = p.co_radius * (2.0 - p.co_radius);
    unit_product_ *= Complex(ucr_[i], -uci_[i]);
    min_co_radius_ = std::min(min_co_radius_, p.co_radius);
  }
}

std::vector<Complex> BlaschkeProduct::zeros() const {
  std::vector<Complex> out;
  out.reserve(points_.size());
  for (const DiskPoint& p : points_) out.push_back(p.co_radius == 1.0 ? Complex(0.0, 0.0) : p.to_complex());
  return out;
}

double BlaschkeProduct::log_prod_moduli() const {
  double acc = 0.0;
  for (double e : eps_) acc += std::log1p(-e);
  return acc;
}

double BlaschkeProduct::prod_moduli() const { return std::exp(log_prod_moduli()); }

bool BlaschkeProduct::has_zero_at_origin() const {
  return std::any_of(eps_.begin(), eps_.end(), [](double e) { return e == 1.0; });
}

double BlaschkeProduct::derivative_bound() const {
  double acc = 0.0;
  for (double e : eps_) acc += (2.0 - e) / e;
  return acc;
}

void BlaschkeProduct::check_point(Complex z) const {
  if (!(std::abs(z) <= 1.0 + kDomainSlack)) {
    throw DomainError("evaluation point outside the closed disk: |z| = " + std::to_string(std::abs(z)));
  }
}

Complex BlaschkeProduct::value_polar(double s, Complex w) const {
  Complex acc = unit_product_;
  for (std::size_t i = 0; i < eps_.size(); ++i) {
    const Factor f = factor_at(s, w, eps_[i], ucr_[i], uci_[i]);
    acc *= f.num / f.den;
  }
  return acc;
}

Complex BlaschkeProduct::deriv_log_polar(double s, Complex w, double& min_dist2) const {
  Complex prod(1.0, 0.0);
  Complex sum(0.0, 0.0);
  min_dist2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < eps_.size(); ++i) {
    const Factor f = factor_at(s, w, eps_[i], ucr_[i], uci_[i]);
    min_dist2 = std::min(min_dist2, std::norm(f.num));
    prod *= f.num / f.den;
    sum += weight_[i] * Complex(ucr_[i], uci_[i]) / (f.num * f.den);
  }
  return unit_product_ * prod * sum;
}

Complex BlaschkeProduct::deriv_cofactor_polar(double s, Complex w) const {
  const std::size_t n = eps_.size();
  std::vector<Complex> ratio(n);
  std::vector<Complex> dfac(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Factor f = factor_at(s, w, eps_[i], ucr_[i], uci_[i]);
    ratio[i] = f.num / f.den;
    dfac[i] = weight_[i] * Complex(ucr_[i], uci_[i]) / (f.den * f.den);
  }
  // suffix[i] = prod_{k > i} ratio[k]
  std::vector<Complex> suffix(n + 1, Complex(1.0, 0.0));
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * ratio[i];
  Complex prefix(1.0, 0.0);
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    acc += dfac[i] * prefix * suffix[i + 1];
    prefix *= ratio[i];
  }
  return unit_product_ * acc;
}

Complex BlaschkeProduct::eval(Complex z) const {
  check_point(z);
  const Polar p = to_polar(z);
  return value_polar(p.s, p.w);
}

Complex BlaschkeProduct::eval_deriv(Complex z) const {
  check_point(z);
  const Polar p = to_polar(z);
  double min_dist2 = 0.0;
  const Complex d = deriv_log_polar(p.s, p.w, min_dist2);
  if (min_dist2 > kDerivativeSwitch * kDerivativeSwitch && std::isfinite(d.real()) && std::isfinite(d.imag())) return d;
  return deriv_cofactor_polar(p.s, p.w);
}

Complex BlaschkeProduct::eval_deriv_polar(double s, double t) const {
  if (!(s >= -kDomainSlack)) throw DomainError("evaluation circle outside the closed disk");
  const Complex w(std::cos(t), std::sin(t));
  double min_dist2 = 0.0;
  const Complex d = deriv_log_polar(s, w, min_dist2);
  if (min_dist2 > kDerivativeSwitch * kDerivativeSwitch && std::isfinite(d.real()) && std::isfinite(d.imag())) return d;
  return deriv_cofactor_polar(s, w);
}

Complex BlaschkeProduct::eval_deriv_cofactor(Complex z) const {
  check_point(z);
  const Polar p = to_polar(z);
  return deriv_cofactor_polar(p.s, p.w);
}

Complex BlaschkeProduct::eval_deriv_logarithmic(Complex z) const {
  check_point(z);
  const Polar p = to_polar(z);
  double unused = 0.0;
  return deriv_log_polar(p.s, p.w, unused);
}

void BlaschkeProduct::sample_derivative(double s, const AngularGrid& grid, std::size_t first,
                                        std::span<Complex> out) const {
  if (!(s >= -kDomainSlack)) throw DomainError("sampling circle outside the closed disk");
  const double threshold = kDerivativeSwitch * kDerivativeSwitch;
  const std::size_t n = eps_.size();

  alignas(64) std::array<double, kChunk> wr, wi, pr, pi, sr, si, md;
  for (std::size_t base = 0; base < out.size(); base += kChunk) {
    const std::size_t len = std::min(kChunk, out.size() - base);
    grid.directions(first + base, std::span(wr).first(len), std::span(wi).first(len));
    for (std::size_t j = 0; j < len; ++j) {
      pr[j] = 1.0;
      pi[j] = 0.0;
      sr[j] = 0.0;
      si[j] = 0.0;
      md[j] = std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double e = eps_[i];
      const double ur = ucr_[i];
      const double ui = uci_[i];
      const double kap = e + s - e * s;
      const double cr = weight_[i] * ur;
      const double ci = weight_[i] * ui;
      for (std::size_t j = 0; j < len; ++j) {
        const double vr = wr[j] * ur - wi[j] * ui;
        const double vi = wr[j] * ui + wi[j] * ur;
        const double nr = (vr - 1.0) + e - s * vr;
        const double ni = vi - s * vi;
        const double dr = (1.0 - vr) + kap * vr;
        const double di = vi * (kap - 1.0);
        const double n2 = nr * nr + ni * ni;
        const double d2 = dr * dr + di * di;
        const double inv = 1.0 / (n2 * d2);
        const double pdr = nr * dr - ni * di;
        const double pdi = nr * di + ni * dr;
        sr[j] += (cr * pdr + ci * pdi) * inv;
        si[j] += (ci * pdr - cr * pdi) * inv;
        const double qr = nr * dr + ni * di;
        const double qi = ni * dr - nr * di;
        const double sc = n2 * inv;
        const double tr = (pr[j] * qr - pi[j] * qi) * sc;
        pi[j] = (pr[j] * qi + pi[j] * qr) * sc;
        pr[j] = tr;
        md[j] = n2 < md[j] ? n2 : md[j];
      }
    }
    for (std::size_t j = 0; j < len; ++j) {
      const Complex prod(pr[j], pi[j]);
      const Complex sum(sr[j], si[j]);
      Complex d = unit_product_ * (prod * sum);
      if (!(md[j] > threshold) || !std::isfinite(d.real()) || !std::isfinite(d.imag())) {
        d = deriv_cofactor_polar(s, Complex(wr[j], wi[j]));
      }
      out[base + j] = d;
    }
  }
}

}  // namespace besovcap
