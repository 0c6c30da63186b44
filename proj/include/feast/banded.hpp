#pragma once

// Band-storage pencils. Storage follows LAPACK: with uplo 'F' entry (i, j)
// lives in row kl+i-j of an lda x n array (lda >= 2kl+1); 'U' keeps the
// upper triangle in rows 0..kl (row kl+i-j) and 'L' keeps the lower
// triangle in rows 0..kl (row i-j), both with lda >= kl+1.

#include <complex>
#include <vector>

#include "feast/driver.hpp"

namespace feast {

/// Symmetric/Hermitian band matrix held as its full band: (2k+1) x n with
/// entry (i, j) in row k+i-j.
template <typename F>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(char uplo, int n, int kl, const F* a, int lda);

  int size() const { return n_; }
  int bandwidth() const { return k_; }
  /// Zero outside the band.
  F operator()(int i, int j) const {
    const int d = i - j;
    if (d > k_ || d < -k_) return F{};
    return band_(k_ + d, j);
  }
  /// y = M x
  void apply(MatrixView<const F> x, MatrixView<F> y) const;

 private:
  int n_ = 0;
  int k_ = 0;
  Matrix<F> band_;
};

/// Banded LU with partial pivoting (kl = ku = k, k extra rows of fill).
template <typename R>
class BandLu final {
 public:
  using Complex = std::complex<R>;

  /// `ab` is (3k+1) x n with entry (i, j) of the matrix in row 2k+i-j.
  /// Throws SolverError on an exactly zero pivot.
  BandLu(int n, int k, Matrix<Complex> ab);

  void solve(MatrixView<Complex> rhs) const;
  void solve_adjoint(MatrixView<Complex> rhs) const;

 private:
  int n_, k_;
  Matrix<Complex> ab_;
  std::vector<int> pivots_;
};

template <typename F>
class BandedPencil final : public Pencil<F> {
 public:
  using Complex = std::complex<RealOf<F>>;

  BandedPencil(char uplo, int n, int kla, const F* a, int lda, int klb = 0, const F* b = nullptr,
               int ldb = 0);

  int size() const override { return a_.size(); }
  bool generalized() const override { return generalized_; }
  std::unique_ptr<ShiftedFactorization<F>> factorize(Complex z) const override;
  void apply_a(MatrixView<const F> x, MatrixView<F> y) const override;
  void apply_b(MatrixView<const F> x, MatrixView<F> y) const override;

 private:
  BandMatrix<F> a_, b_;
  bool generalized_ = false;
};

/// 0 or the info code of the first invalid argument in the banded argument
/// list {UPLO, N, kla, A, LDA, klb, B, LDB}.
int check_banded_arguments(char uplo, int kla, int lda, int klb, int ldb,
                           bool generalized);

template <typename F>
void banded_driver(char uplo, int n, int kla, const F* a, int lda, int klb, const F* b, int ldb,
                   Params& fpm, RealOf<F>& epsout, int& loop, RealOf<F> emin, RealOf<F> emax,
                   int& m0, RealOf<F>* e, F* x, int& m, RealOf<F>* res, int& info,
                   const DriverOptions& options = {});

}  // namespace feast
