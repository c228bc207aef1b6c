#include "fracgrid/tri_kernel.hpp"

#include <cmath>
#include <string>

namespace fracgrid {

SingularKernelError::SingularKernelError(int row, double value)
    : std::runtime_error("kernel diagonal entry a_0^" + std::to_string(row) +
                         " = " + std::to_string(value) +
                         " is below the singularity threshold"),
      row_(row) {}

TriKernel::TriKernel(int n_rows) : n_rows_(n_rows) {
  if (n_rows < 1) throw std::invalid_argument("kernel needs at least one row");
  data_.assign(offset(n_rows) + static_cast<std::size_t>(n_rows), 0.0);
}

void TriKernel::check(int n, int j) const {
  if (n < 1 || n > n_rows_ || j < 1 || j > n) {
    throw std::out_of_range("kernel lookup (" + std::to_string(n) + ", " +
                            std::to_string(j) + ") outside the triangle");
  }
}

std::span<const double> TriKernel::row(int n) const {
  check(n, 1);
  return {data_.data() + offset(n), static_cast<std::size_t>(n)};
}

std::span<double> TriKernel::row(int n) {
  check(n, 1);
  return {data_.data() + offset(n), static_cast<std::size_t>(n)};
}

double TriKernel::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

TriKernel identity_kernel(int n) {
  TriKernel k(n);
  for (int i = 1; i <= n; ++i) k.coef(i, i) = 1.0;
  return k;
}

TriKernel heaviside_kernel(int n) {
  TriKernel k(n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) k.coef(i, j) = 1.0;
  }
  return k;
}

TriKernel heaviside_inverse(int n) {
  TriKernel k(n);
  for (int i = 1; i <= n; ++i) {
    k.coef(i, i) = 1.0;
    if (i > 1) k.coef(i, i - 1) = -1.0;
  }
  return k;
}

TriKernel pseudo_convolve(const TriKernel& a, const TriKernel& b) {
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("pseudo-convolution size mismatch: " +
                                std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()));
  }
  const int n_rows = a.rows();
  TriKernel c(n_rows);
  for (int n = 1; n <= n_rows; ++n) {
    for (int k = 1; k <= n; ++k) {
      double s = 0.0;
      for (int j = k; j <= n; ++j) s += a.coef(n, j) * b.coef(j, k);
      c.coef(n, k) = s;
    }
  }
  return c;
}

std::vector<double> pseudo_convolve(const TriKernel& a, std::span<const double> x) {
  if (static_cast<int>(x.size()) != a.rows()) {
    throw std::invalid_argument("kernel-vector size mismatch");
  }
  std::vector<double> y(x.size());
  for (int n = 1; n <= a.rows(); ++n) {
    double s = 0.0;
    for (int j = 1; j <= n; ++j) s += a.coef(n, j) * x[static_cast<std::size_t>(j - 1)];
    y[static_cast<std::size_t>(n - 1)] = s;
  }
  return y;
}

TriKernel invert(const TriKernel& a) {
  const int n_rows = a.rows();
  for (int n = 1; n <= n_rows; ++n) {
    if (std::abs(a.diagonal(n)) < 1e-300) {
      throw SingularKernelError(n, a.diagonal(n));
    }
  }
  TriKernel b(n_rows);
  for (int k = 1; k <= n_rows; ++k) {
    b.coef(k, k) = 1.0 / a.diagonal(k);
    for (int n = k + 1; n <= n_rows; ++n) {
      double s = 0.0;
      for (int j = k; j < n; ++j) s += a.coef(n, j) * b.coef(j, k);
      b.coef(n, k) = -s / a.diagonal(n);
    }
  }
  return b;
}

TriKernel right_complementary(const TriKernel& a) {
  return pseudo_convolve(invert(a), heaviside_kernel(a.rows()));
}

TriKernel left_complementary(const TriKernel& a) {
  return pseudo_convolve(heaviside_kernel(a.rows()), invert(a));
}

TriKernel resolvent(const TriKernel& a, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolvent needs lambda > 0");
  const int n_rows = a.rows();
  for (int n = 1; n <= n_rows; ++n) {
    if (!(a.diagonal(n) > 0.0)) {
      throw std::invalid_argument("resolvent needs a positive diagonal (row " +
                                  std::to_string(n) + ")");
    }
  }
  // Solve R ̄* M = lambda A with M = I + lambda A. Each row of R satisfies an
  // independent triangular system, swept from the diagonal outwards.
  TriKernel r(n_rows);
  auto m_coef = [&a, lambda](int n, int j) {
    double v = lambda * a.coef(n, j);
    if (n == j) v += 1.0;
    return v;
  };
  for (int n = 1; n <= n_rows; ++n) {
    for (int k = n; k >= 1; --k) {
      double s = lambda * a.coef(n, k);
      for (int j = k + 1; j <= n; ++j) s -= r.coef(n, j) * m_coef(j, k);
      r.coef(n, k) = s / m_coef(k, k);
    }
  }
  return r;
}

bool approx_equal(const TriKernel& a, const TriKernel& b, double atol, double rtol) {
  if (a.rows() != b.rows()) return false;
  for (int n = 1; n <= a.rows(); ++n) {
    for (int j = 1; j <= n; ++j) {
      const double x = a.coef(n, j);
      const double y = b.coef(n, j);
      if (std::abs(x - y) > atol + rtol * std::max(std::abs(x), std::abs(y))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace fracgrid
