#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "besovcap/types.hpp"

namespace besovcap {

/// Square complex matrix, row-major.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t order);
  static DenseMatrix identity(std::size_t order);
  static DenseMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  std::size_t order() const { return n_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<Complex>& data() const { return data_; }

 private:
  std::size_t n_;
  std::vector<Complex> data_;
};

enum class OperatorNormKind { ColSum, Spectral, RowSum };

std::string to_string(OperatorNormKind kind);
/// "col-sum", "spectral" or "row-sum".
OperatorNormKind parse_norm_kind(std::string_view text);

/// Raised when LU meets a pivot below tolerance.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t pivot) : std::runtime_error(what), pivot_(pivot) {}
  std::size_t pivot() const { return pivot_; }

 private:
  std::size_t pivot_;
};

/// c_0, ..., c_{N-1} with prod (z - l_i) = z^N + sum c_k z^k.
std::vector<Complex> monic_coefficients(std::span<const Complex> roots);

/// Ones on the subdiagonal, last column -c_0, ..., -c_{N-1}. Its
/// characteristic polynomial is prod (z - l_i).
DenseMatrix companion(std::span<const Complex> roots);

/// ColSum: l1 -> l1. RowSum: l_inf -> l_inf. Spectral: largest singular value
/// by power iteration on T*T, with a full SVD when the iteration stagnates.
double operator_norm(const DenseMatrix& t, OperatorNormKind kind);

struct Inversion {
  DenseMatrix inverse;
  Complex det;
  double log_abs_det = 0.0;
};

/// LU with partial pivoting on the row-equilibrated matrix. A pivot counts as
/// singular when it is below 1e-13 times the largest entry of its
/// (equilibrated) column.
Inversion inverse_and_det(const DenseMatrix& t);

/// |det T| ||T^-1|| / ||T||^{N-1}, evaluated in log space.
double schaffer_ratio(const DenseMatrix& t, OperatorNormKind kind);

/// sqrt(e N).
double schaffer_bound(std::size_t order);

}  // namespace besovcap
