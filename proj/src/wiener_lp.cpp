#include "besovcap/wiener_lp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace besovcap {

namespace {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

constexpr std::size_t kCheckEvery = 50;
constexpr std::size_t kAdaptEvery = 10;

void check_points(std::span<const Complex> zeros, std::size_t degree) {
  if (zeros.empty()) throw std::invalid_argument("Wiener capacity needs at least one point");
  for (const Complex& z : zeros) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("point is not finite");
    if (z == Complex(0.0, 0.0) || !(std::abs(z) < 1.0)) throw DomainError("points must lie in the punctured open disk");
  }
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    for (std::size_t j = i + 1; j < zeros.size(); ++j) {
      if (std::abs(zeros[i] - zeros[j]) <= 1e-12) throw std::invalid_argument("Wiener capacity needs distinct points");
    }
  }
  if (degree < zeros.size()) {
    throw std::invalid_argument("degree cap " + std::to_string(degree) + " is below the number of points " +
                                std::to_string(zeros.size()));
  }
}

// Row layout of the real formulation: one row per real point, two (Re, Im)
// per conjugate pair represented by its member in the upper half-plane.
struct RealLayout {
  std::vector<Complex> real_points;
  std::vector<Complex> upper_points;
};

RealLayout real_layout(std::span<const Complex> zeros, double tol) {
  RealLayout lay;
  for (const Complex& z : zeros) {
    if (std::abs(z.imag()) <= tol) {
      lay.real_points.push_back(z);
    } else if (z.imag() > 0.0) {
      lay.upper_points.push_back(z);
    }
  }
  return lay;
}

Mat<Complex> complex_constraints(std::span<const Complex> zeros, std::size_t degree) {
  const Eigen::Index m = static_cast<Eigen::Index>(zeros.size()) + 1;
  const Eigen::Index n = static_cast<Eigen::Index>(degree) + 1;
  Mat<Complex> a = Mat<Complex>::Zero(m, n);
  a(0, 0) = 1.0;
  for (Eigen::Index i = 1; i < m; ++i) {
    Complex pw(1.0, 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
      a(i, k) = pw;
      pw *= zeros[static_cast<std::size_t>(i - 1)];
    }
  }
  return a;
}

Mat<double> real_constraints(const RealLayout& lay, std::size_t degree) {
  const Eigen::Index m = static_cast<Eigen::Index>(lay.real_points.size() + 2 * lay.upper_points.size()) + 1;
  const Eigen::Index n = static_cast<Eigen::Index>(degree) + 1;
  Mat<double> a = Mat<double>::Zero(m, n);
  a(0, 0) = 1.0;
  Eigen::Index row = 1;
  for (const Complex& z : lay.real_points) {
    double pw = 1.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      a(row, k) = pw;
      pw *= z.real();
    }
    ++row;
  }
  for (const Complex& z : lay.upper_points) {
    Complex pw(1.0, 0.0);
    for (Eigen::Index k = 0; k < n; ++k) {
      a(row, k) = pw.real();
      a(row + 1, k) = pw.imag();
      pw *= z;
    }
    row += 2;
  }
  return a;
}

// Orthogonal projection onto {x : A x = e_0} from a column-pivoted QR of A^H.
template <class S>
class AffineProjector {
 public:
  explicit AffineProjector(const Mat<S>& a) {
    const Mat<S> ah = a.adjoint();
    Eigen::ColPivHouseholderQR<Mat<S>> qr(ah.rows(), ah.cols());
    qr.setThreshold(1e-14);
    qr.compute(ah);
    rank_ = qr.rank();
    if (rank_ == 0) throw std::runtime_error("constraint matrix has rank 0");
    q_ = Mat<S>(qr.householderQ()) .leftCols(rank_);
    r_ = qr.matrixR().topLeftCorner(rank_, rank_).template triangularView<Eigen::Upper>();
    perm_ = qr.colsPermutation();
    rows_ = a.rows();
    Vec<S> b = Vec<S>::Zero(a.rows());
    b(0) = S(1.0);
    const Vec<S> pb = perm_.transpose() * b;
    // R11^H w = (P^T b)_{1..r}
    const Vec<S> w = r_.adjoint().template triangularView<Eigen::Lower>().solve(pb.head(rank_));
    xp_ = q_ * w;
  }

  Vec<S> project(const Vec<S>& v) const { return v - q_ * (q_.adjoint() * v) + xp_; }

  // Least-squares y with A^H y ~ h.
  Vec<S> multipliers(const Vec<S>& h) const {
    Vec<S> yt = Vec<S>::Zero(rows_);
    yt.head(rank_) = r_.template triangularView<Eigen::Upper>().solve(q_.adjoint() * h);
    return perm_ * yt;
  }

  const Vec<S>& particular() const { return xp_; }
  Eigen::Index rank() const { return rank_; }

 private:
  Mat<S> q_;
  Mat<S> r_;
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic> perm_;
  Vec<S> xp_;
  Eigen::Index rank_ = 0;
  Eigen::Index rows_ = 0;
};

template <class S>
Vec<S> soft_threshold(const Vec<S>& v, double kappa) {
  Vec<S> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    out(i) = mag > kappa ? v(i) * ((mag - kappa) / mag) : S(0.0);
  }
  return out;
}

template <class S>
double l1_norm(const Vec<S>& v) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::abs(v(i));
  return acc;
}

struct AdmmOutput {
  Vec<Complex> x;
  Vec<Complex> y;  // multipliers in the formulation's row order
  std::size_t iterations = 0;
  bool converged = false;
  double relative_gap = std::numeric_limits<double>::infinity();
};

template <class S>
AdmmOutput run_admm(const Mat<S>& a, const WienerOptions& opt) {
  const AffineProjector<S> proj(a);
  const Eigen::Index n = a.cols();
  Vec<S> z = proj.particular();
  Vec<S> u = Vec<S>::Zero(n);
  Vec<S> x = z;
  double rho = 1.0;
  const double alpha = opt.relaxation;
  AdmmOutput out;
  Vec<S> best_y;
  double best_lower = 0.0;
  double r_norm = 0.0;
  double s_norm = 0.0;
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    x = proj.project(z - u);
    const Vec<S> xh = alpha * x + (1.0 - alpha) * z;
    const Vec<S> z_old = z;
    z = soft_threshold<S>(xh + u, 1.0 / rho);
    u += xh - z;
    out.iterations = it;

    if (it % kAdaptEvery == 0) {
      r_norm = (x - z).norm();
      s_norm = rho * (z - z_old).norm();
      if (r_norm > 10.0 * s_norm) {
        rho *= 2.0;
        u /= 2.0;
      } else if (s_norm > 10.0 * r_norm) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
    if (it % kCheckEvery == 0 || it == opt.max_iter) {
      const Vec<S> y = proj.multipliers(rho * u);
      const Vec<S> h = a.adjoint() * y;
      const double hmax = h.cwiseAbs().maxCoeff();
      const double lower = hmax > 0.0 ? std::abs(y(0)) / hmax : 0.0;
      if (lower > best_lower) {
        best_lower = lower;
        best_y = y;
      }
      const double primal = l1_norm<S>(x);
      out.relative_gap = (primal - best_lower) / primal;
      if (out.relative_gap < opt.tol && (x - z).norm() <= opt.tol * std::max(1.0, primal)) {
        out.converged = true;
        break;
      }
    }
  }
  out.x = x.template cast<Complex>();
  if (best_y.size() == 0) best_y = proj.multipliers(rho * u);
  out.y = best_y.template cast<Complex>();
  return out;
}

std::optional<DualCertificate> close_certificate(std::span<const Complex> zeros, Complex y0,
                                                 const std::vector<Complex>& y, std::size_t degree,
                                                 std::size_t max_verify, std::string* why) {
  const std::size_t m = zeros.size();
  double r = 0.0;
  double ysum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    r = std::max(r, std::abs(zeros[i]));
    ysum += std::abs(y[i]);
  }
  std::vector<Complex> pw(m, Complex(1.0, 0.0));
  std::vector<Complex> cz(m);
  for (std::size_t i = 0; i < m; ++i) cz[i] = std::conj(zeros[i]);
  double hmax = 0.0;
  std::size_t k = 0;
  std::size_t target = degree;
  for (;; ++k) {
    Complex h = k == 0 ? y0 : Complex(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      h += pw[i] * y[i];
      pw[i] *= cz[i];
    }
    hmax = std::max(hmax, std::abs(h));
    if (k == degree) {
      if (!(hmax > 0.0)) {
        if (why) *why = "certificate functional vanishes";
        return std::nullopt;
      }
      // smallest K with ysum r^{K+1} <= hmax
      const double need = std::log(hmax / ysum) / std::log(r) - 1.0;
      const double kneed = std::ceil(std::max(need, static_cast<double>(degree)));
      if (!(kneed <= static_cast<double>(max_verify))) {
        if (why) *why = "geometric tail does not close before index " + std::to_string(max_verify);
        return std::nullopt;
      }
      target = static_cast<std::size_t>(kneed);
    }
    if (k >= target) break;
  }
  const double tail = ysum * std::pow(r, static_cast<double>(k + 1));
  const double scale = std::max(hmax, tail);
  DualCertificate cert;
  cert.zeros.assign(zeros.begin(), zeros.end());
  cert.y0 = y0 / scale;
  cert.y.resize(m);
  for (std::size_t i = 0; i < m; ++i) cert.y[i] = y[i] / scale;
  cert.verified_through = k;
  cert.margin = 1.0 - tail / scale;
  cert.lower = std::abs(cert.y0);
  return cert;
}

}  // namespace

bool conjugation_closed(std::span<const Complex> zeros, double tol) {
  std::vector<bool> used(zeros.size(), false);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (used[i]) continue;
    if (std::abs(zeros[i].imag()) <= tol) {
      used[i] = true;
      continue;
    }
    bool found = false;
    for (std::size_t j = 0; j < zeros.size(); ++j) {
      if (!used[j] && j != i && std::abs(zeros[j] - std::conj(zeros[i])) <= tol) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

WienerResult solve_wiener(std::span<const Complex> zeros, std::size_t degree, const WienerOptions& opt) {
  check_points(zeros, degree);
  if (!(opt.relaxation > 0.0 && opt.relaxation < 2.0)) throw std::invalid_argument("relaxation must lie in (0, 2)");
  const double real_tol = 1e-12;
  bool real_mode = opt.mode == WienerMode::Real;
  if (opt.mode == WienerMode::Auto) real_mode = conjugation_closed(zeros, real_tol);
  if (real_mode && !conjugation_closed(zeros, real_tol)) {
    throw std::invalid_argument("real mode needs a conjugation-closed point set");
  }

  WienerResult res;
  res.real_mode = real_mode;
  AdmmOutput out;
  Complex y0;
  std::vector<Complex> y(zeros.size());
  std::vector<Complex> cert_zeros;
  if (real_mode) {
    const RealLayout lay = real_layout(zeros, real_tol);
    out = run_admm<double>(real_constraints(lay, degree), opt);
    y0 = out.y(0);
    std::size_t row = 1;
    std::size_t idx = 0;
    for (const Complex& z : lay.real_points) {
      cert_zeros.push_back(z);
      y[idx++] = out.y(static_cast<Eigen::Index>(row++));
    }
    for (const Complex& z : lay.upper_points) {
      // y_re Re(l^k) + y_im Im(l^k) = conj(l)^k c/2 + l^k conj(c)/2 with c = y_re + i y_im
      const Complex c(out.y(static_cast<Eigen::Index>(row)).real(), out.y(static_cast<Eigen::Index>(row + 1)).real());
      row += 2;
      cert_zeros.push_back(z);
      y[idx++] = c / 2.0;
      cert_zeros.push_back(std::conj(z));
      y[idx++] = std::conj(c) / 2.0;
    }
  } else {
    out = run_admm<Complex>(complex_constraints(zeros, degree), opt);
    y0 = out.y(0);
    cert_zeros.assign(zeros.begin(), zeros.end());
    for (std::size_t i = 0; i < zeros.size(); ++i) y[i] = out.y(static_cast<Eigen::Index>(i + 1));
  }

  res.iterations = out.iterations;
  res.converged = out.converged;
  res.relative_gap = out.relative_gap;
  res.coefficients.assign(out.x.data(), out.x.data() + out.x.size());
  res.primal = l1_norm<Complex>(out.x);
  double resid = std::abs(res.coefficients[0] - 1.0);
  for (const Complex& z : zeros) {
    Complex acc(0.0, 0.0);
    for (std::size_t k = res.coefficients.size(); k-- > 0;) acc = acc * z + res.coefficients[k];
    resid = std::max(resid, std::abs(acc));
  }
  res.constraint_residual = resid;

  std::string why;
  if (auto cert = close_certificate(cert_zeros, y0, y, degree, opt.max_verify, &why)) {
    res.lower = cert->lower;
    res.certificate = std::move(cert);
  }
  return res;
}

double cap_wiener_primal(std::span<const Complex> zeros, std::size_t degree, double tol, std::size_t max_iter) {
  WienerOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return solve_wiener(zeros, degree, opt).primal;
}

std::pair<double, DualCertificate> cap_wiener_certified_lower(std::span<const Complex> zeros, std::size_t degree,
                                                              double tol) {
  WienerOptions opt;
  opt.tol = tol;
  WienerResult res = solve_wiener(zeros, degree, opt);
  if (!res.certificate) throw CertificateError("dual certificate did not close; try a larger degree");
  const double lower = verify_certificate(*res.certificate, opt.max_verify);
  return {lower, std::move(*res.certificate)};
}

double verify_certificate(const DualCertificate& cert, std::size_t max_verify) {
  const std::size_t m = cert.zeros.size();
  if (cert.y.size() != m) throw CertificateError("certificate has mismatched sizes");
  if (cert.verified_through > max_verify) throw CertificateError("certificate verification range too long");
  double r = 0.0;
  double ysum = 0.0;
  std::vector<Complex> pw(m, Complex(1.0, 0.0));
  std::vector<Complex> cz(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(std::abs(cert.zeros[i]) < 1.0)) throw CertificateError("certificate point outside the disk");
    r = std::max(r, std::abs(cert.zeros[i]));
    ysum += std::abs(cert.y[i]);
    cz[i] = std::conj(cert.zeros[i]);
  }
  double hmax = 0.0;
  for (std::size_t k = 0; k <= cert.verified_through; ++k) {
    Complex h = k == 0 ? cert.y0 : Complex(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      h += pw[i] * cert.y[i];
      pw[i] *= cz[i];
    }
    hmax = std::max(hmax, std::abs(h));
  }
  const double tail = ysum * std::pow(r, static_cast<double>(cert.verified_through + 1));
  if (tail > 1.0) throw CertificateError("geometric tail exceeds 1 beyond the verified range");
  if (hmax > 1.0 + 1e-9) {
    throw CertificateError("coefficient functional exceeds 1 at a checked index: " + std::to_string(hmax));
  }
  return std::abs(cert.y0) / std::max({1.0, hmax, tail});
}

double schaffer_lower_from_capacity(std::span<const Complex> zeros, std::size_t degree) {
  double log_prod = 0.0;
  for (const Complex& z : zeros) log_prod += std::log(std::abs(z));
  const double lower = cap_wiener_certified_lower(zeros, degree).first;
  return std::exp(log_prod) * (lower - 1.0);
}

}  // namespace besovcap
