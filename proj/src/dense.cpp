#include "feast/dense.hpp"

#include <cmath>

namespace feast {

namespace {

template <typename R>
R cabs1(const std::complex<R>& v) {
  return std::abs(v.real()) + std::abs(v.imag());
}

bool valid_uplo(char uplo) { return uplo == 'F' || uplo == 'L' || uplo == 'U'; }

}  // namespace

template <typename R>
DenseLu<R>::DenseLu(Matrix<Complex> a) : lu_(std::move(a)) {
  const int n = lu_.rows();
  pivots_.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    int p = k;
    R best = cabs1(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const R v = cabs1(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    pivots_[k] = p;
    if (best == 0) throw SolverError("singular shifted matrix");
    if (p != k)
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
    const Complex inv = Complex(1) / lu_(k, k);
    for (int i = k + 1; i < n; ++i) lu_(i, k) *= inv;
    for (int j = k + 1; j < n; ++j) {
      const Complex ukj = lu_(k, j);
      if (ukj == Complex{}) continue;
      for (int i = k + 1; i < n; ++i) lu_(i, j) -= lu_(i, k) * ukj;
    }
  }
}

template <typename R>
void DenseLu<R>::solve(MatrixView<Complex> rhs) const {
  const int n = size();
  for (int c = 0; c < rhs.cols(); ++c) {
    auto b = rhs.col(c);
    for (int k = 0; k < n; ++k)
      if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
    for (int j = 0; j < n; ++j) {
      const Complex bj = b[j];
      if (bj == Complex{}) continue;
      for (int i = j + 1; i < n; ++i) b[i] -= lu_(i, j) * bj;
    }
    for (int j = n - 1; j >= 0; --j) {
      b[j] /= lu_(j, j);
      const Complex bj = b[j];
      for (int i = 0; i < j; ++i) b[i] -= lu_(i, j) * bj;
    }
  }
}

template <typename R>
void DenseLu<R>::solve_adjoint(MatrixView<Complex> rhs) const {
  const int n = size();
  for (int c = 0; c < rhs.cols(); ++c) {
    auto b = rhs.col(c);
    // U^H w = b
    for (int j = 0; j < n; ++j) {
      Complex s = b[j];
      for (int i = 0; i < j; ++i) s -= std::conj(lu_(i, j)) * b[i];
      b[j] = s / std::conj(lu_(j, j));
    }
    // L^H v = w
    for (int j = n - 1; j >= 0; --j) {
      Complex s = b[j];
      for (int i = j + 1; i < n; ++i) s -= std::conj(lu_(i, j)) * b[i];
      b[j] = s;
    }
    for (int k = n - 1; k >= 0; --k)
      if (pivots_[k] != k) std::swap(b[k], b[pivots_[k]]);
  }
}

template <typename F>
Matrix<F> expand_dense(char uplo, int n, const F* a, int lda) {
  MatrixView<const F> src(a, n, n, lda);
  Matrix<F> full(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (uplo == 'F')
        full(i, j) = src(i, j);
      else if (uplo == 'L')
        full(i, j) = i >= j ? src(i, j) : conj_if(src(j, i));
      else
        full(i, j) = i <= j ? src(i, j) : conj_if(src(j, i));
    }
  return full;
}

namespace {

template <typename F>
class DenseFactorization final : public ShiftedFactorization<F> {
 public:
  using Complex = std::complex<RealOf<F>>;
  explicit DenseFactorization(Matrix<Complex> m) : lu_(std::move(m)) {}
  void solve(MatrixView<Complex> rhs) const override { lu_.solve(rhs); }
  void solve_adjoint(MatrixView<Complex> rhs) const override { lu_.solve_adjoint(rhs); }

 private:
  DenseLu<RealOf<F>> lu_;
};

}  // namespace

template <typename F>
DensePencil<F>::DensePencil(char uplo, int n, const F* a, int lda, const F* b, int ldb)
    : a_(expand_dense(uplo, n, a, lda)), generalized_(b != nullptr) {
  if (b) b_ = expand_dense(uplo, n, b, ldb);
}

template <typename F>
std::unique_ptr<ShiftedFactorization<F>> DensePencil<F>::factorize(Complex z) const {
  const int n = size();
  Matrix<Complex> m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Complex bij = generalized_ ? Complex(b_(i, j)) : Complex(i == j ? 1 : 0);
      m(i, j) = z * bij - Complex(a_(i, j));
    }
  return std::make_unique<DenseFactorization<F>>(std::move(m));
}

template <typename F>
void DensePencil<F>::apply_a(MatrixView<const F> x, MatrixView<F> y) const {
  gemm(MatrixView<const F>(a_.view()), x, y);
}

template <typename F>
void DensePencil<F>::apply_b(MatrixView<const F> x, MatrixView<F> y) const {
  if (generalized_)
    gemm(MatrixView<const F>(b_.view()), x, y);
  else
    copy(x, y);
}

int check_dense_arguments(char uplo, int n, int lda, int ldb, bool generalized) {
  if (!valid_uplo(uplo)) return info::bad_argument(1);
  if (lda < std::max(1, n)) return info::bad_argument(4);
  if (generalized && ldb < std::max(1, n)) return info::bad_argument(6);
  return 0;
}

template <typename F>
void dense_driver(char uplo, int n, const F* a, int lda, const F* b, int ldb, Params& fpm,
                  RealOf<F>& epsout, int& loop, RealOf<F> emin, RealOf<F> emax, int& m0,
                  RealOf<F>* e, F* x, int& m, RealOf<F>* res, int& info,
                  const DriverOptions& options) {
  m = 0;
  loop = 0;
  info = valid_uplo(uplo) ? 0 : info::bad_argument(1);
  if (info == 0) info = check_problem(n, m0, emin, emax).value;
  if (info == 0) info = check_dense_arguments(uplo, n, lda, ldb, b != nullptr);
  if (info != 0) return;
  DensePencil<F> pencil(uplo, n, a, lda, b, ldb);
  DriverOptions opts = options;
  if (opts.routine.empty()) opts.routine = routine_name<F>(is_complex_v<F> ? "HE" : "SY", b != nullptr);
  run_pencil(pencil, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info, opts);
}

template class DenseLu<float>;
template class DenseLu<double>;

#define FEAST_INSTANTIATE(F)                                                                  \
  template Matrix<F> expand_dense<F>(char, int, const F*, int);                               \
  template class DensePencil<F>;                                                              \
  template void dense_driver<F>(char, int, const F*, int, const F*, int, Params&, RealOf<F>&, \
                                int&, RealOf<F>, RealOf<F>, int&, RealOf<F>*, F*, int&,       \
                                RealOf<F>*, int&, const DriverOptions&);

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

}  // namespace feast
