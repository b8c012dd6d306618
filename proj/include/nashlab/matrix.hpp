#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <vector>

namespace nashlab {

// Dense row-major matrix of doubles. Small and value-semantic; the games in
// this project top out at a few thousand rows, so no sparse or blocked
// storage is needed.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c, double fill = 0.0)
      : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, fill) {}

  double& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }

  std::span<const double> row(int r) const {
    return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
  }

  bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

  // M * v, deterministic left-to-right summation per row.
  std::vector<double> mul_vec(std::span<const double> v) const {
    assert(static_cast<int>(v.size()) == cols);
    std::vector<double> out(static_cast<std::size_t>(rows), 0.0);
    for (int r = 0; r < rows; ++r) {
      const double* p = data.data() + static_cast<std::size_t>(r) * cols;
      double s = 0.0;
      for (int c = 0; c < cols; ++c) s += p[c] * v[c];
      out[r] = s;
    }
    return out;
  }

  // v^T * M, deterministic: accumulates row-by-row in index order.
  std::vector<double> vec_mul(std::span<const double> v) const {
    assert(static_cast<int>(v.size()) == rows);
    std::vector<double> out(static_cast<std::size_t>(cols), 0.0);
    for (int r = 0; r < rows; ++r) {
      const double* p = data.data() + static_cast<std::size_t>(r) * cols;
      const double xr = v[r];
      if (xr == 0.0) continue;
      for (int c = 0; c < cols; ++c) out[c] += xr * p[c];
    }
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (double a : data) m = a < 0 ? (m < -a ? -a : m) : (m < a ? a : m);
    return m;
  }

  double min_entry() const {
    double m = data.empty() ? 0.0 : data[0];
    for (double a : data)
      if (a < m) m = a;
    return m;
  }

  Matrix& operator+=(const Matrix& o) {
    assert(same_shape(o));
    for (std::size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    assert(same_shape(o));
    for (std::size_t i = 0; i < data.size(); ++i) data[i] -= o.data[i];
    return *this;
  }
  Matrix& operator*=(double s) {
    for (double& a : data) a *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator-(Matrix a) { return a *= -1.0; }
};

// x^T M y with the fixed summation order: t_r = sum_c M[r][c] y[c]
// (left-to-right), then sum_r x[r] t_r (left-to-right). Replays are
// bit-identical.
inline double bilinear(std::span<const double> x, const Matrix& m, std::span<const double> y) {
  assert(static_cast<int>(x.size()) == m.rows && static_cast<int>(y.size()) == m.cols);
  double total = 0.0;
  for (int r = 0; r < m.rows; ++r) {
    const double* p = m.data.data() + static_cast<std::size_t>(r) * m.cols;
    double t = 0.0;
    for (int c = 0; c < m.cols; ++c) t += p[c] * y[c];
    total += x[r] * t;
  }
  return total;
}

}  // namespace nashlab
