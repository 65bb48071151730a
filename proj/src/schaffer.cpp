#include "besovcap/schaffer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace besovcap {

namespace {

constexpr double kPivotTol = 1e-13;
constexpr double kPowerTol = 1e-10;
constexpr int kPowerMaxIter = 2000;

std::vector<Complex> mat_vec(const DenseMatrix& t, const std::vector<Complex>& v) {
  const std::size_t n = t.order();
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) acc += t(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

std::vector<Complex> apply_adjoint(const DenseMatrix& t, const std::vector<Complex>& v) {
  const std::size_t n = t.order();
  std::vector<Complex> out(n, Complex(0.0, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[j] += std::conj(t(i, j)) * v[i];
  }
  return out;
}

double norm2(const std::vector<Complex>& v) {
  double acc = 0.0;
  for (const Complex& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

double spectral_by_svd(const DenseMatrix& t) {
  const Eigen::Index n = static_cast<Eigen::Index>(t.order());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = t(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double spectral_norm(const DenseMatrix& t) {
  const std::size_t n = t.order();
  std::vector<Complex> v(n);
  for (std::size_t j = 0; j < n; ++j) v[j] = Complex(1.0 + 0.1 * static_cast<double>(j) / n, 0.05 * std::sin(1.0 + j));
  double nv = norm2(v);
  for (Complex& x : v) x /= nv;
  for (int it = 0; it < kPowerMaxIter; ++it) {
    const std::vector<Complex> tv = mat_vec(t, v);
    const std::vector<Complex> w = apply_adjoint(t, tv);
    const double lambda = std::pow(norm2(tv), 2);  // Rayleigh quotient v* T*T v
    if (!(lambda > 0.0)) break;
    double resid = 0.0;
    for (std::size_t j = 0; j < n; ++j) resid += std::norm(w[j] - lambda * v[j]);
    resid = std::sqrt(resid);
    nv = norm2(w);
    for (std::size_t j = 0; j < n; ++j) v[j] = w[j] / nv;
    // The residual certifies an eigenpair; convergence to the top one is
    // the generic case from this start vector.
    if (resid <= kPowerTol * lambda) return std::sqrt(lambda);
  }
  return spectral_by_svd(t);
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t order) : n_(order), data_(order * order, Complex(0.0, 0.0)) {
  if (order == 0) throw std::invalid_argument("matrix order must be positive");
}

DenseMatrix DenseMatrix::identity(std::size_t order) {
  DenseMatrix m(order);
  for (std::size_t i = 0; i < order; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
  DenseMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix must be square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!std::isfinite(rows[i][j].real()) || !std::isfinite(rows[i][j].imag())) {
        throw std::invalid_argument("matrix entries must be finite");
      }
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

std::string to_string(OperatorNormKind kind) {
  switch (kind) {
    case OperatorNormKind::ColSum:
      return "col-sum";
    case OperatorNormKind::Spectral:
      return "spectral";
    case OperatorNormKind::RowSum:
      return "row-sum";
  }
  return "?";
}

OperatorNormKind parse_norm_kind(std::string_view text) {
  if (text == "col-sum") return OperatorNormKind::ColSum;
  if (text == "spectral") return OperatorNormKind::Spectral;
  if (text == "row-sum") return OperatorNormKind::RowSum;
  throw std::invalid_argument("unknown norm kind '" + std::string(text) + "'");
}

std::vector<Complex> monic_coefficients(std::span<const Complex> roots) {
  // poly[k] = coefficient of z^k, highest first implicit
  std::vector<Complex> poly{Complex(1.0, 0.0)};
  for (const Complex& r : roots) {
    std::vector<Complex> next(poly.size() + 1, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= r * poly[k];
    }
    poly = std::move(next);
  }
  poly.pop_back();
  return poly;
}

DenseMatrix companion(std::span<const Complex> roots) {
  if (roots.empty()) throw std::invalid_argument("companion needs at least one root");
  for (const Complex& r : roots) {
    if (r == Complex(0.0, 0.0) || !(std::abs(r) < 1.0)) throw DomainError("roots must lie in the punctured open disk");
  }
  const std::vector<Complex> c = monic_coefficients(roots);
  const std::size_t n = roots.size();
  DenseMatrix t(n);
  for (std::size_t i = 1; i < n; ++i) t(i, i - 1) = 1.0;
  for (std::size_t i = 0; i < n; ++i) t(i, n - 1) = -c[i];
  return t;
}

double operator_norm(const DenseMatrix& t, OperatorNormKind kind) {
  const std::size_t n = t.order();
  double best = 0.0;
  switch (kind) {
    case OperatorNormKind::ColSum:
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::abs(t(i, j));
        best = std::max(best, s);
      }
      return best;
    case OperatorNormKind::RowSum:
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(t(i, j));
        best = std::max(best, s);
      }
      return best;
    case OperatorNormKind::Spectral:
      return spectral_norm(t);
  }
  return best;
}

Inversion inverse_and_det(const DenseMatrix& t) {
  const std::size_t n = t.order();
  DenseMatrix a = t;
  // Row equilibration: T = D^{-1} A with A's rows scaled to max entry 1.
  std::vector<double> row_scale(n);
  double log_abs_det = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double m = 0.0;
    for (std::size_t j = 0; j < n; ++j) m = std::max(m, std::abs(a(i, j)));
    if (!(m > 0.0)) throw SingularMatrixError("matrix has a zero row " + std::to_string(i), i);
    row_scale[i] = 1.0 / m;
    for (std::size_t j = 0; j < n; ++j) a(i, j) *= row_scale[i];
    log_abs_det += std::log(m);
  }
  std::vector<double> col_max(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col_max[j] = std::max(col_max[j], std::abs(a(i, j)));
  }

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  Complex det_phase(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(a(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        piv = i;
      }
    }
    if (!(best > kPivotTol * col_max[k])) {
      throw SingularMatrixError("matrix is singular to tolerance at pivot " + std::to_string(k) + " (|u_kk| = " +
                                    std::to_string(best) + ")",
                                k);
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
      std::swap(perm[k], perm[piv]);
      det_phase = -det_phase;
    }
    const Complex p = a(k, k);
    det_phase *= p / std::abs(p);
    log_abs_det += std::log(std::abs(p));
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = a(i, k) / p;
      a(i, k) = l;
      if (l == Complex(0.0, 0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }

  // Solve A X = P^T ... column by column; T^{-1} = A^{-1} D.
  DenseMatrix inv(n);
  std::vector<Complex> x(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) x[i] = perm[i] == col ? Complex(row_scale[col], 0.0) : Complex(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) x[i] -= a(i, j) * x[j];
    }
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= a(i, j) * x[j];
      x[i] /= a(i, i);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  const Complex det = std::polar(std::exp(log_abs_det), std::arg(det_phase));
  return Inversion{std::move(inv), det, log_abs_det};
}

double schaffer_ratio(const DenseMatrix& t, OperatorNormKind kind) {
  const Inversion inv = inverse_and_det(t);
  const double nt = operator_norm(t, kind);
  const double ninv = operator_norm(inv.inverse, kind);
  const double n = static_cast<double>(t.order());
  return std::exp(inv.log_abs_det + std::log(ninv) - (n - 1.0) * std::log(nt));
}

double schaffer_bound(std::size_t order) { return std::sqrt(std::exp(1.0) * static_cast<double>(order)); }

}  // namespace besovcap
