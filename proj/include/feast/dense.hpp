#pragma once

// Full-storage pencils and the dense predefined drivers.

#include <complex>
#include <vector>

#include "feast/driver.hpp"

namespace feast {

/// LU factorization with partial pivoting of a square complex matrix.
template <typename R>
class DenseLu final {
 public:
  using Complex = std::complex<R>;

  /// Throws SolverError on an exactly zero pivot.
  explicit DenseLu(Matrix<Complex> a);

  int size() const { return lu_.rows(); }
  void solve(MatrixView<Complex> rhs) const;
  void solve_adjoint(MatrixView<Complex> rhs) const;

 private:
  Matrix<Complex> lu_;
  std::vector<int> pivots_;
};

/// Expands a symmetric/Hermitian matrix stored with uplo 'F', 'L' or 'U'
/// into full storage. Only the referenced triangle is read.
template <typename F>
Matrix<F> expand_dense(char uplo, int n, const F* a, int lda);

template <typename F>
class DensePencil final : public Pencil<F> {
 public:
  using Complex = std::complex<RealOf<F>>;

  /// `b == nullptr` selects the standard problem.
  DensePencil(char uplo, int n, const F* a, int lda, const F* b = nullptr, int ldb = 0);

  int size() const override { return a_.rows(); }
  bool generalized() const override { return generalized_; }
  std::unique_ptr<ShiftedFactorization<F>> factorize(Complex z) const override;
  void apply_a(MatrixView<const F> x, MatrixView<F> y) const override;
  void apply_b(MatrixView<const F> x, MatrixView<F> y) const override;

  const Matrix<F>& a() const { return a_; }
  const Matrix<F>& b() const { return b_; }

 private:
  Matrix<F> a_, b_;
  bool generalized_ = false;
};

/// 0 or the info code of the first invalid argument in the dense argument
/// list {UPLO, N, A, LDA, B, LDB}.
int check_dense_arguments(char uplo, int n, int lda, int ldb, bool generalized);

/// Dense predefined driver; b == nullptr for standard problems.
template <typename F>
void dense_driver(char uplo, int n, const F* a, int lda, const F* b, int ldb, Params& fpm,
                  RealOf<F>& epsout, int& loop, RealOf<F> emin, RealOf<F> emax, int& m0,
                  RealOf<F>* e, F* x, int& m, RealOf<F>* res, int& info,
                  const DriverOptions& options = {});

}  // namespace feast
