#pragma once

// Column-major dense blocks and scalar traits shared by the kernel and the
// predefined drivers.

#include <cassert>
#include <complex>
#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

namespace feast {

template <typename T>
struct ScalarTraits {
  using Real = T;
  static constexpr bool is_complex = false;
};

template <typename R>
struct ScalarTraits<std::complex<R>> {
  using Real = R;
  static constexpr bool is_complex = true;
};

template <typename T>
using RealOf = typename ScalarTraits<std::remove_const_t<T>>::Real;

template <typename T>
inline constexpr bool is_complex_v = ScalarTraits<std::remove_const_t<T>>::is_complex;

template <typename T>
constexpr T conj_if(const T& x) {
  if constexpr (is_complex_v<T>)
    return std::conj(x);
  else
    return x;
}

template <typename T>
constexpr RealOf<T> real_part(const T& x) {
  if constexpr (is_complex_v<T>)
    return x.real();
  else
    return x;
}

/// |x|^2 without the square root.
template <typename T>
constexpr RealOf<T> abs2(const T& x) {
  if constexpr (is_complex_v<T>)
    return std::norm(x);
  else
    return x * x;
}

/// Non-owning column-major view with leading dimension `ld`.
template <typename T>
class MatrixView {
 public:
  MatrixView() = default;
  MatrixView(T* data, int rows, int cols, int ld)
      : data_(data), rows_(rows), cols_(cols), ld_(ld) {
    assert(rows >= 0 && cols >= 0 && ld >= (rows > 0 ? rows : 0));
  }
  MatrixView(T* data, int rows, int cols) : MatrixView(data, rows, cols, rows) {}

  operator MatrixView<const T>() const { return {data_, rows_, cols_, ld_}; }

  T& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * ld_];
  }

  std::span<T> col(int j) const {
    return {data_ + static_cast<std::size_t>(j) * ld_, static_cast<std::size_t>(rows_)};
  }

  /// Columns [first, first + count).
  MatrixView block_cols(int first, int count) const {
    assert(first >= 0 && count >= 0 && first + count <= cols_);
    return {data_ + static_cast<std::size_t>(first) * ld_, rows_, count, ld_};
  }

  /// Leading rows x cols sub-block.
  MatrixView leading(int rows, int cols) const {
    assert(rows <= rows_ && cols <= cols_);
    return {data_, rows, cols, ld_};
  }

  T* data() const { return data_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int ld() const { return ld_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

 private:
  T* data_ = nullptr;
  int rows_ = 0;
  int cols_ = 0;
  int ld_ = 0;
};

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  T& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_];
  }
  const T& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return data_[static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * rows_];
  }

  MatrixView<T> view() { return {data_.data(), rows_, cols_, rows_ > 0 ? rows_ : 0}; }
  MatrixView<const T> view() const { return {data_.data(), rows_, cols_, rows_ > 0 ? rows_ : 0}; }
  operator MatrixView<T>() { return view(); }
  operator MatrixView<const T>() const { return view(); }

  std::span<T> col(int j) { return view().col(j); }
  std::span<const T> col(int j) const { return view().col(j); }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  bool operator==(const Matrix&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<std::remove_const_t<T>> to_matrix(MatrixView<T> v) {
  Matrix<std::remove_const_t<T>> m(v.rows(), v.cols());
  for (int j = 0; j < v.cols(); ++j)
    for (int i = 0; i < v.rows(); ++i) m(i, j) = v(i, j);
  return m;
}

template <typename T>
void copy(MatrixView<const T> src, MatrixView<T> dst) {
  assert(src.rows() == dst.rows() && src.cols() == dst.cols());
  for (int j = 0; j < src.cols(); ++j)
    for (int i = 0; i < src.rows(); ++i) dst(i, j) = src(i, j);
}

template <typename T>
void fill(MatrixView<T> dst, const T& value) {
  for (int j = 0; j < dst.cols(); ++j)
    for (int i = 0; i < dst.rows(); ++i) dst(i, j) = value;
}

/// c = a * b
template <typename T>
void gemm(MatrixView<const T> a, MatrixView<const T> b, MatrixView<T> c) {
  assert(a.cols() == b.rows() && c.rows() == a.rows() && c.cols() == b.cols());
  for (int j = 0; j < c.cols(); ++j) {
    auto cj = c.col(j);
    for (auto& v : cj) v = T{};
    for (int k = 0; k < a.cols(); ++k) {
      const T bkj = b(k, j);
      if (bkj == T{}) continue;
      auto ak = a.col(k);
      for (int i = 0; i < c.rows(); ++i) cj[i] += ak[i] * bkj;
    }
  }
}

/// c = a^H * b
template <typename T>
void gemm_adjoint(MatrixView<const T> a, MatrixView<const T> b, MatrixView<T> c) {
  assert(a.rows() == b.rows() && c.rows() == a.cols() && c.cols() == b.cols());
  for (int j = 0; j < c.cols(); ++j) {
    auto bj = b.col(j);
    for (int i = 0; i < c.rows(); ++i) {
      auto ai = a.col(i);
      T s{};
      for (int k = 0; k < a.rows(); ++k) s += conj_if(ai[k]) * bj[k];
      c(i, j) = s;
    }
  }
}

/// Replace a square matrix by its Hermitian part (a + a^H) / 2.
template <typename T>
void hermitize(MatrixView<T> a) {
  assert(a.rows() == a.cols());
  for (int j = 0; j < a.cols(); ++j) {
    a(j, j) = T{real_part(a(j, j))};
    for (int i = j + 1; i < a.rows(); ++i) {
      const T avg = (a(i, j) + conj_if(a(j, i))) / RealOf<T>(2);
      a(i, j) = avg;
      a(j, i) = conj_if(avg);
    }
  }
}

template <typename T>
RealOf<T> norm1(std::span<const T> v) {
  RealOf<T> s{};
  for (const auto& x : v) s += std::abs(x);
  return s;
}

}  // namespace feast
