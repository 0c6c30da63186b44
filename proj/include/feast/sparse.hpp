#pragma once

// Compressed sparse row pencils. Public index arrays are 1-based.

#include <complex>
#include <vector>

#include "feast/driver.hpp"

namespace feast {

template <typename F>
struct CsrMatrix {
  int n = 0;
  std::vector<int> ia;  // n+1 row offsets, ia[0] == 1
  std::vector<int> ja;  // column indices, 1-based
  std::vector<F> values;

  int nnz() const { return static_cast<int>(ja.size()); }
};

enum class CsrIssue { none, bad_offsets, bad_columns };

/// Checks offsets (ia[0] == 1, non-decreasing, ia[n]-1 == nnz) and columns
/// (within [1, n], inside the triangle selected by uplo 'L'/'U').
CsrIssue validate_csr(char uplo, int n, const int* ia, const int* ja);

/// Copies raw arrays, sorting columns within rows and summing duplicates.
template <typename F>
CsrMatrix<F> make_csr(int n, const int* ia, const int* ja, const F* values);

/// Mirrors a triangle ('L' or 'U') into full storage; 'F' returns a copy.
template <typename F>
CsrMatrix<F> expand_csr(const CsrMatrix<F>& m, char uplo);

/// y = M x where M is the symmetric/Hermitian matrix represented by `m`
/// under `uplo`.
template <typename F>
void csr_matvec(const CsrMatrix<F>& m, char uplo, MatrixView<const F> x, MatrixView<F> y);

enum class SparseSolverKind { direct, iterative };

struct SparseSolverOptions {
  SparseSolverKind kind = SparseSolverKind::direct;
  /// Relative residual target of the iterative solver.
  double iterative_tolerance = 1e-3;
  int iterative_max_iterations = 1000;
};

template <typename F>
class SparsePencil final : public Pencil<F> {
 public:
  using Complex = std::complex<RealOf<F>>;

  /// `b == nullptr` selects the standard problem.
  SparsePencil(char uplo, int n, const F* a, const int* ia, const int* ja, const F* b = nullptr,
               const int* ib = nullptr, const int* jb = nullptr, SparseSolverOptions solver = {});
  ~SparsePencil() override;

  int size() const override { return n_; }
  bool generalized() const override { return generalized_; }
  std::unique_ptr<ShiftedFactorization<F>> factorize(Complex z) const override;
  void apply_a(MatrixView<const F> x, MatrixView<F> y) const override;
  void apply_b(MatrixView<const F> x, MatrixView<F> y) const override;

 private:
  struct Pattern;
  int n_ = 0;
  bool generalized_ = false;
  CsrMatrix<F> a_, b_;  // full storage
  SparseSolverOptions solver_;
  std::unique_ptr<Pattern> pattern_;
};

/// 0 or the info code of the first invalid argument in the CSR argument list
/// {UPLO, N, A, IA, JA, B, IB, JB}.
int check_csr_arguments(char uplo, int n, const int* ia, const int* ja, const int* ib,
                        const int* jb, bool generalized);

template <typename F>
void csr_driver(char uplo, int n, const F* a, const int* ia, const int* ja, const F* b,
                const int* ib, const int* jb, Params& fpm, RealOf<F>& epsout, int& loop,
                RealOf<F> emin, RealOf<F> emax, int& m0, RealOf<F>* e, F* x, int& m,
                RealOf<F>* res, int& info, const DriverOptions& options = {},
                const SparseSolverOptions& solver = {});

}  // namespace feast
