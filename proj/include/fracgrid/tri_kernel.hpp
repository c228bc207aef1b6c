#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fracgrid {

class SingularKernelError : public std::runtime_error {
 public:
  SingularKernelError(int row, double value);
  int row() const { return row_; }

 private:
  int row_;
};

/// Lower-triangular array kernel (a_{n-j}^n), closed under pseudo-convolution.
///
/// Row n (1-based) owns n contiguous coefficients in the order
/// a_{n-1}^n, ..., a_0^n, i.e. column order j = 1..n of the triangular
/// matrix M[n][j] = a_{n-j}^n. Lookups outside the triangle are contract
/// violations and throw; there is no zero-fill.
///
/// Kernels are treated as immutable once built and are safe to share.
class TriKernel {
 public:
  explicit TriKernel(int n_rows);

  int rows() const { return n_rows_; }

  /// a_k^n with k the distance from the diagonal, 0 <= k <= n-1.
  double entry(int n, int k) const { return coef(n, n - k); }

  /// Matrix-style coefficient a_{n-j}^n at row n, column j.
  double coef(int n, int j) const {
    check(n, j);
    return data_[offset(n) + static_cast<std::size_t>(j) - 1];
  }
  double& coef(int n, int j) {
    check(n, j);
    return data_[offset(n) + static_cast<std::size_t>(j) - 1];
  }

  double diagonal(int n) const { return coef(n, n); }

  std::span<const double> row(int n) const;
  std::span<double> row(int n);

  double max_abs() const;

  bool operator==(const TriKernel&) const = default;

 private:
  static std::size_t offset(int n) {
    return static_cast<std::size_t>(n - 1) * static_cast<std::size_t>(n) / 2;
  }
  void check(int n, int j) const;

  int n_rows_;
  std::vector<double> data_;
};

/// I: 1 on the diagonal, the identity for pseudo-convolution.
TriKernel identity_kernel(int n);
/// L: all ones, the array analogue of the Heaviside function.
TriKernel heaviside_kernel(int n);
/// L^{(-1)}: 1 on the diagonal, -1 on the first subdiagonal; the finite
/// difference operator.
TriKernel heaviside_inverse(int n);

/// c_{n-k}^n = sum_{j=k}^n a_{n-j}^n b_{j-k}^j, the matrix product of the
/// two triangular arrays.
TriKernel pseudo_convolve(const TriKernel& a, const TriKernel& b);

/// Kernel-vector action: y_n = sum_{j=1}^n a_{n-j}^n x_j with x = (x_1..x_N).
std::vector<double> pseudo_convolve(const TriKernel& a, std::span<const double> x);

/// Inverse under pseudo-convolution by forward substitution. Rows whose
/// diagonal entry is below 1e-300 in magnitude raise SingularKernelError.
TriKernel invert(const TriKernel& a);

/// C_R with A ̄* C_R = L (the RCC kernel), computed as A^{(-1)} ̄* L.
TriKernel right_complementary(const TriKernel& a);
/// C_L with C_L ̄* A = L (the DCC kernel), computed as L ̄* A^{(-1)}.
TriKernel left_complementary(const TriKernel& a);

/// R_lambda solving R + lambda R ̄* A = lambda A, by per-row back
/// substitution on R ̄* (I + lambda A) = lambda A. Requires lambda > 0 and a
/// positive diagonal.
TriKernel resolvent(const TriKernel& a, double lambda);

bool approx_equal(const TriKernel& a, const TriKernel& b, double atol = 1e-14,
                  double rtol = 1e-12);

}  // namespace fracgrid
