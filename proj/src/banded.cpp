#include "feast/banded.hpp"

#include <algorithm>
#include <cmath>

namespace feast {

namespace {

template <typename R>
R cabs1(const std::complex<R>& v) {
  return std::abs(v.real()) + std::abs(v.imag());
}

bool valid_uplo(char uplo) { return uplo == 'F' || uplo == 'L' || uplo == 'U'; }

}  // namespace

template <typename F>
BandMatrix<F>::BandMatrix(char uplo, int n, int kl, const F* a, int lda)
    : n_(n), k_(std::clamp(kl, 0, std::max(n - 1, 0))), band_(2 * k_ + 1, n) {
  const auto at = [&](int row, int col) {
    return a[static_cast<std::size_t>(row) + static_cast<std::size_t>(col) * lda];
  };
  for (int j = 0; j < n; ++j)
    for (int i = std::max(0, j - k_); i <= std::min(n - 1, j + k_); ++i) {
      F v;
      if (uplo == 'F')
        v = at(kl + i - j, j);
      else if (uplo == 'U')
        v = i <= j ? at(kl + i - j, j) : conj_if(at(kl + j - i, i));
      else
        v = i >= j ? at(i - j, j) : conj_if(at(j - i, i));
      band_(k_ + i - j, j) = v;
    }
}

template <typename F>
void BandMatrix<F>::apply(MatrixView<const F> x, MatrixView<F> y) const {
  fill(y, F{});
  for (int c = 0; c < x.cols(); ++c)
    for (int j = 0; j < n_; ++j) {
      const F xj = x(j, c);
      if (xj == F{}) continue;
      for (int i = std::max(0, j - k_); i <= std::min(n_ - 1, j + k_); ++i)
        y(i, c) += band_(k_ + i - j, j) * xj;
    }
}

template <typename R>
BandLu<R>::BandLu(int n, int k, Matrix<Complex> ab) : n_(n), k_(k), ab_(std::move(ab)) {
  const int kv = 2 * k_;
  pivots_.resize(static_cast<std::size_t>(n_));
  // Element (r, c) of the working matrix lives at ab_(kv + r - c, c).
  const auto el = [&](int r, int c) -> Complex& { return ab_(kv + r - c, c); };
  int ju = 0;
  for (int j = 0; j < n_; ++j) {
    const int km = std::min(k_, n_ - 1 - j);
    int jp = 0;
    R best = cabs1(el(j, j));
    for (int p = 1; p <= km; ++p) {
      const R v = cabs1(el(j + p, j));
      if (v > best) {
        best = v;
        jp = p;
      }
    }
    pivots_[j] = j + jp;
    if (best == 0) throw SolverError("singular shifted band matrix");
    ju = std::max(ju, std::min(j + k_ + jp, n_ - 1));
    if (jp != 0)
      for (int c = j; c <= ju; ++c) std::swap(el(j, c), el(j + jp, c));
    if (km > 0) {
      const Complex inv = Complex(1) / el(j, j);
      for (int p = 1; p <= km; ++p) el(j + p, j) *= inv;
      for (int c = j + 1; c <= ju; ++c) {
        const Complex u = el(j, c);
        if (u == Complex{}) continue;
        for (int p = 1; p <= km; ++p) el(j + p, c) -= el(j + p, j) * u;
      }
    }
  }
}

template <typename R>
void BandLu<R>::solve(MatrixView<Complex> rhs) const {
  const int kv = 2 * k_;
  for (int c = 0; c < rhs.cols(); ++c) {
    auto b = rhs.col(c);
    for (int j = 0; j + 1 < n_; ++j) {
      const int lm = std::min(k_, n_ - 1 - j);
      if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
      const Complex bj = b[j];
      for (int p = 1; p <= lm; ++p) b[j + p] -= ab_(kv + p, j) * bj;
    }
    for (int j = n_ - 1; j >= 0; --j) {
      b[j] /= ab_(kv, j);
      const Complex bj = b[j];
      for (int i = std::max(0, j - kv); i < j; ++i) b[i] -= ab_(kv + i - j, j) * bj;
    }
  }
}

template <typename R>
void BandLu<R>::solve_adjoint(MatrixView<Complex> rhs) const {
  const int kv = 2 * k_;
  for (int c = 0; c < rhs.cols(); ++c) {
    auto b = rhs.col(c);
    for (int j = 0; j < n_; ++j) {
      Complex s = b[j];
      for (int i = std::max(0, j - kv); i < j; ++i) s -= std::conj(ab_(kv + i - j, j)) * b[i];
      b[j] = s / std::conj(ab_(kv, j));
    }
    for (int j = n_ - 2; j >= 0; --j) {
      const int lm = std::min(k_, n_ - 1 - j);
      Complex s = b[j];
      for (int p = 1; p <= lm; ++p) s -= std::conj(ab_(kv + p, j)) * b[j + p];
      b[j] = s;
      if (pivots_[j] != j) std::swap(b[j], b[pivots_[j]]);
    }
  }
}

namespace {

template <typename F>
class BandFactorization final : public ShiftedFactorization<F> {
 public:
  using Complex = std::complex<RealOf<F>>;
  BandFactorization(int n, int k, Matrix<Complex> ab) : lu_(n, k, std::move(ab)) {}
  void solve(MatrixView<Complex> rhs) const override { lu_.solve(rhs); }
  void solve_adjoint(MatrixView<Complex> rhs) const override { lu_.solve_adjoint(rhs); }

 private:
  BandLu<RealOf<F>> lu_;
};

}  // namespace

template <typename F>
BandedPencil<F>::BandedPencil(char uplo, int n, int kla, const F* a, int lda, int klb,
                              const F* b, int ldb)
    : a_(uplo, n, kla, a, lda), generalized_(b != nullptr) {
  if (b) b_ = BandMatrix<F>(uplo, n, klb, b, ldb);
}

template <typename F>
std::unique_ptr<ShiftedFactorization<F>> BandedPencil<F>::factorize(Complex z) const {
  const int n = size();
  const int k = std::max(a_.bandwidth(), generalized_ ? b_.bandwidth() : 0);
  Matrix<Complex> ab(3 * k + 1, n);
  for (int j = 0; j < n; ++j)
    for (int i = std::max(0, j - k); i <= std::min(n - 1, j + k); ++i) {
      const Complex bij = generalized_ ? Complex(b_(i, j)) : Complex(i == j ? 1 : 0);
      ab(2 * k + i - j, j) = z * bij - Complex(a_(i, j));
    }
  return std::make_unique<BandFactorization<F>>(n, k, std::move(ab));
}

template <typename F>
void BandedPencil<F>::apply_a(MatrixView<const F> x, MatrixView<F> y) const {
  a_.apply(x, y);
}

template <typename F>
void BandedPencil<F>::apply_b(MatrixView<const F> x, MatrixView<F> y) const {
  if (generalized_)
    b_.apply(x, y);
  else
    copy(x, y);
}

int check_banded_arguments(char uplo, int kla, int lda, int klb, int ldb,
                           bool generalized) {
  if (!valid_uplo(uplo)) return info::bad_argument(1);
  if (kla < 0) return info::bad_argument(3);
  const auto need = [&](int kl) { return uplo == 'F' ? 2 * kl + 1 : kl + 1; };
  if (lda < need(kla)) return info::bad_argument(5);
  if (generalized) {
    if (klb < 0) return info::bad_argument(6);
    if (ldb < need(klb)) return info::bad_argument(8);
  }
  return 0;
}

template <typename F>
void banded_driver(char uplo, int n, int kla, const F* a, int lda, int klb, const F* b, int ldb,
                   Params& fpm, RealOf<F>& epsout, int& loop, RealOf<F> emin, RealOf<F> emax,
                   int& m0, RealOf<F>* e, F* x, int& m, RealOf<F>* res, int& info,
                   const DriverOptions& options) {
  m = 0;
  loop = 0;
  info = valid_uplo(uplo) ? 0 : info::bad_argument(1);
  if (info == 0) info = check_problem(n, m0, emin, emax).value;
  if (info == 0) info = check_banded_arguments(uplo, kla, lda, klb, ldb, b != nullptr);
  if (info != 0) return;
  BandedPencil<F> pencil(uplo, n, kla, a, lda, klb, b, ldb);
  DriverOptions opts = options;
  if (opts.routine.empty()) opts.routine = routine_name<F>(is_complex_v<F> ? "HB" : "SB", b != nullptr);
  run_pencil(pencil, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info, opts);
}

template class BandLu<float>;
template class BandLu<double>;

#define FEAST_INSTANTIATE(F)                                                                   \
  template class BandMatrix<F>;                                                                \
  template class BandedPencil<F>;                                                              \
  template void banded_driver<F>(char, int, int, const F*, int, int, const F*, int, Params&,   \
                                 RealOf<F>&, int&, RealOf<F>, RealOf<F>, int&, RealOf<F>*, F*, \
                                 int&, RealOf<F>*, int&, const DriverOptions&);

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

}  // namespace feast
