#pragma once
// Shared helpers for the test suites: random pencils, an Eigen-based oracle
// and a scripted reverse-communication caller that records task traces.

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <random>
#include <vector>

#include "feast/dense.hpp"
#include "feast/kernel.hpp"
#include "feast/sparse.hpp"

namespace feast::testing {

template <typename F>
F random_scalar(std::mt19937_64& rng) {
  std::uniform_real_distribution<RealOf<F>> u(-1, 1);
  if constexpr (is_complex_v<F>) {
    const auto re = u(rng);
    return F(re, u(rng));
  } else {
    return u(rng);
  }
}

template <typename F>
Matrix<F> random_hermitian(int n, std::mt19937_64& rng) {
  Matrix<F> a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) {
      const F v = i == j ? F(real_part(random_scalar<F>(rng))) : random_scalar<F>(rng);
      a(i, j) = v;
      a(j, i) = conj_if(v);
    }
  return a;
}

/// G^H G + n I with G uniform in [-1, 1].
template <typename F>
Matrix<F> random_spd(int n, std::mt19937_64& rng) {
  Matrix<F> g(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g(i, j) = random_scalar<F>(rng);
  Matrix<F> b(n, n);
  gemm_adjoint<F>(g.view(), g.view(), b.view());
  for (int i = 0; i < n; ++i) b(i, i) += F(RealOf<F>(n));
  hermitize<F>(b.view());
  return b;
}

/// Random Hermitian band matrix with bandwidth k.
template <typename F>
Matrix<F> random_band(int n, int k, std::mt19937_64& rng) {
  Matrix<F> a = random_hermitian<F>(n, rng);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (std::abs(i - j) > k) a(i, j) = F{};
  return a;
}

template <typename F>
using EigenMat = Eigen::Matrix<F, Eigen::Dynamic, Eigen::Dynamic>;

template <typename F>
EigenMat<F> to_eigen(const Matrix<F>& m) {
  EigenMat<F> out(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) out(i, j) = m(i, j);
  return out;
}

/// Full spectrum of A x = lambda B x (B == nullptr: standard), ascending.
template <typename F>
std::vector<double> oracle_spectrum(const Matrix<F>& a, const Matrix<F>* b = nullptr) {
  std::vector<double> out;
  if (b) {
    Eigen::GeneralizedSelfAdjointEigenSolver<EigenMat<F>> es(to_eigen(a), to_eigen(*b),
                                                             Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  } else {
    Eigen::SelfAdjointEigenSolver<EigenMat<F>> es(to_eigen(a), Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  }
  return out;
}

inline std::vector<double> inside(const std::vector<double>& v, double emin, double emax) {
  std::vector<double> out;
  for (double x : v)
    if (x >= emin && x <= emax) out.push_back(x);
  return out;
}

/// Lower and upper interval bounds placed midway between consecutive
/// eigenvalues so that exactly eigenvalues [first, first+count) are inside.
inline std::pair<double, double> interval_around(const std::vector<double>& spectrum, int first,
                                                 int count) {
  const int n = static_cast<int>(spectrum.size());
  const int last = first + count - 1;
  const double spread = spectrum.back() - spectrum.front() + 1.0;
  const double lo = first == 0 ? spectrum.front() - 0.1 * spread
                               : 0.5 * (spectrum[first - 1] + spectrum[first]);
  const double hi = last == n - 1 ? spectrum.back() + 0.1 * spread
                                  : 0.5 * (spectrum[last] + spectrum[last + 1]);
  return {lo, hi};
}

/// 1-D Laplacian tridiag(-1, 2, -1) in full CSR storage.
inline CsrMatrix<double> laplacian_1d(int n) {
  CsrMatrix<double> m;
  m.n = n;
  m.ia.push_back(1);
  for (int i = 0; i < n; ++i) {
    if (i > 0) {
      m.ja.push_back(i);
      m.values.push_back(-1.0);
    }
    m.ja.push_back(i + 1);
    m.values.push_back(2.0);
    if (i < n - 1) {
      m.ja.push_back(i + 2);
      m.values.push_back(-1.0);
    }
    m.ia.push_back(m.nnz() + 1);
  }
  return m;
}

/// Exact spectrum of the n-point 1-D Laplacian, ascending.
inline std::vector<double> laplacian_1d_spectrum(int n) {
  std::vector<double> out;
  const double pi = std::acos(-1.0);
  for (int k = 1; k <= n; ++k) {
    const double s = std::sin(k * pi / (2.0 * (n + 1)));
    out.push_back(4.0 * s * s);
  }
  return out;
}

struct TaskRecord {
  RciTask task;
  int first = 0;  // fpm slot 24
  int count = 0;  // fpm slot 25
  int m0 = 0;
};

/// Drives the reverse-communication kernel by hand using dense
/// factorizations, recording every task it hands out.
template <typename F>
EigenResult<F> scripted_solve(const DensePencil<F>& pencil, Params fpm, RealOf<F> emin,
                              RealOf<F> emax, int m0, KernelOptions options,
                              std::vector<TaskRecord>* trace = nullptr,
                              const Matrix<F>* x0 = nullptr) {
  using R = RealOf<F>;
  using C = std::complex<R>;
  const int n = pencil.size();
  RciKernel<F> kernel(options);
  EigenResult<F> r;
  r.m0 = m0;
  r.e.assign(static_cast<std::size_t>(m0), R{});
  r.res.assign(static_cast<std::size_t>(m0), R{});
  r.x = x0 ? *x0 : Matrix<F>(n, m0);
  std::vector<F> work1(static_cast<std::size_t>(n) * m0);
  std::vector<C> work2(static_cast<std::size_t>(n) * m0);
  std::unique_ptr<ShiftedFactorization<F>> fact, fact_adjoint_source;
  C ze;
  RciTask task = RciTask::Init;
  for (;;) {
    kernel.step(task, n, ze, work1.data(), work2.data(), fpm, r.epsout, r.loop, emin, emax, r.m0,
                r.e.data(), r.x.data(), r.m, r.res.data(), r.info);
    if (trace) trace->push_back({task, fpm.slot(24), fpm.slot(25), r.m0});
    if (task == RciTask::Done) break;
    MatrixView<C> w2(work2.data(), n, r.m0, n);
    switch (task) {
      case RciTask::Factorize: fact = pencil.factorize(ze); break;
      case RciTask::FactorizeAdjoint: fact_adjoint_source = pencil.factorize(ze); break;
      case RciTask::Solve: fact->solve(w2); break;
      case RciTask::SolveAdjoint:
        (fact_adjoint_source ? fact_adjoint_source : fact)->solve_adjoint(w2);
        break;
      case RciTask::MultiplyA:
      case RciTask::MultiplyB: {
        const int first = fpm.slot(24) - 1, count = fpm.slot(25);
        MatrixView<const F> xs(r.x.data() + static_cast<std::size_t>(first) * n, n, count, n);
        MatrixView<F> ys(work1.data() + static_cast<std::size_t>(first) * n, n, count, n);
        if (task == RciTask::MultiplyA)
          pencil.apply_a(xs, ys);
        else
          pencil.apply_b(xs, ys);
        break;
      }
      default: break;
    }
  }
  return r;
}

}  // namespace feast::testing
