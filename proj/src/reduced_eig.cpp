#include "feast/reduced_eig.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace feast {

namespace {

/// Implicit-shift QL on a real symmetric tridiagonal matrix. `d` holds the
/// diagonal, `e[i]` couples i and i+1 (e[n-1] unused). Rotations are
/// accumulated into the columns of `z`. Returns false when an eigenvalue
/// needs more than kQlIterationsPerEigenvalue sweeps.
template <typename R>
bool tridiagonal_ql(std::vector<R>& d, std::vector<R>& e, Matrix<R>& z) {
  const int n = static_cast<int>(d.size());
  const R eps = std::numeric_limits<R>::epsilon();
  if (n > 0) e[n - 1] = 0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const R dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (iter++ == kQlIterationsPerEigenvalue) return false;

      R g = (d[l + 1] - d[l]) / (2 * e[l]);
      R r = std::hypot(g, R(1));
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      R s = 1, c = 1, p = 0;
      int i = m - 1;
      for (; i >= l; --i) {
        R f = s * e[i];
        const R b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0) {
          // Underflow: deflate and restart this eigenvalue.
          d[i + 1] -= p;
          e[m] = 0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        for (int k = 0; k < z.rows(); ++k) {
          f = z(k, i + 1);
          z(k, i + 1) = s * z(k, i) + c * f;
          z(k, i) = c * z(k, i) - s * f;
        }
      }
      if (r == 0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0;
    } while (m != l);
  }
  return true;
}

/// Sort eigenpairs ascending; ties keep their relative order.
template <typename F>
void sort_ascending(ReducedEigen<F>& out) {
  const int n = static_cast<int>(out.values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.values[a] < out.values[b]; });
  std::vector<RealOf<F>> values(n);
  Matrix<F> vectors(out.vectors.rows(), n);
  for (int j = 0; j < n; ++j) {
    values[j] = out.values[order[j]];
    for (int i = 0; i < vectors.rows(); ++i) vectors(i, j) = out.vectors(i, order[j]);
  }
  out.values = std::move(values);
  out.vectors = std::move(vectors);
}

}  // namespace

template <typename F>
CholeskyFactor<F> spd_factor(MatrixView<const F> b) {
  using R = RealOf<F>;
  const int n = b.rows();
  CholeskyFactor<F> out;
  out.lower = Matrix<F>(n, n);
  auto& l = out.lower;
  for (int j = 0; j < n; ++j) {
    R d = real_part(b(j, j));
    for (int k = 0; k < j; ++k) d -= abs2(l(j, k));
    if (!(d > 0)) {
      out.failed_pivot = j + 1;
      return out;
    }
    const R ljj = std::sqrt(d);
    l(j, j) = F(ljj);
    for (int i = j + 1; i < n; ++i) {
      F s = b(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * conj_if(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return out;
}

template <typename F>
ReducedEigen<F> hermitian_eig(MatrixView<const F> a) {
  using R = RealOf<F>;
  const int n = a.rows();
  ReducedEigen<F> out;
  out.values.assign(n, R(0));
  out.vectors = Matrix<F>::identity(n);
  if (n == 0) return out;
  if (n == 1) {
    out.values[0] = real_part(a(0, 0));
    return out;
  }

  Matrix<F> c(n, n);
  for (int j = 0; j < n; ++j) {
    c(j, j) = F(real_part(a(j, j)));
    for (int i = j + 1; i < n; ++i) {
      c(i, j) = a(i, j);
      c(j, i) = conj_if(a(i, j));
    }
  }

  // Householder reduction: H = I - tau v v^H maps C(k+1:, k) onto a multiple
  // of the first unit vector. The product of the reflectors goes into z.
  Matrix<F>& z = out.vectors;
  std::vector<F> v(n), p(n), w(n);
  for (int k = 0; k + 2 < n; ++k) {
    const int m = n - k - 1;
    R xnorm2 = 0;
    for (int i = 0; i < m; ++i) xnorm2 += abs2(c(k + 1 + i, k));
    R tail2 = xnorm2 - abs2(c(k + 1, k));
    if (xnorm2 == 0 || tail2 == 0) continue;
    const R xnorm = std::sqrt(xnorm2);
    const F x0 = c(k + 1, k);
    F phase{1};
    if (std::abs(x0) != 0) phase = x0 / F(std::abs(x0));

    for (int i = 0; i < m; ++i) v[i] = c(k + 1 + i, k);
    v[0] += phase * xnorm;
    R vnorm2 = 0;
    for (int i = 0; i < m; ++i) vnorm2 += abs2(v[i]);
    const R tau = 2 / vnorm2;

    // p = tau * C_sub v
    for (int i = 0; i < m; ++i) p[i] = F{};
    for (int jj = 0; jj < m; ++jj) {
      const F vj = v[jj];
      for (int i = 0; i < m; ++i) p[i] += c(k + 1 + i, k + 1 + jj) * vj;
    }
    F vp{};
    for (int i = 0; i < m; ++i) {
      p[i] *= tau;
      vp += conj_if(v[i]) * p[i];
    }
    const R kappa = tau / 2 * real_part(vp);
    for (int i = 0; i < m; ++i) w[i] = p[i] - kappa * v[i];
    for (int jj = 0; jj < m; ++jj)
      for (int i = 0; i < m; ++i)
        c(k + 1 + i, k + 1 + jj) -= v[i] * conj_if(w[jj]) + w[i] * conj_if(v[jj]);

    const F beta = -phase * xnorm;
    c(k + 1, k) = beta;
    c(k, k + 1) = conj_if(beta);
    for (int i = 1; i < m; ++i) {
      c(k + 1 + i, k) = F{};
      c(k, k + 1 + i) = F{};
    }

    // z <- z H
    for (int r = 0; r < n; ++r) {
      F s{};
      for (int i = 0; i < m; ++i) s += z(r, k + 1 + i) * v[i];
      s *= tau;
      for (int i = 0; i < m; ++i) z(r, k + 1 + i) -= s * conj_if(v[i]);
    }
  }

  // Rotate the off-diagonal to real non-negative values: T = D T' D^H.
  std::vector<R> d(n), e(n, R(0));
  std::vector<F> delta(n, F{1});
  for (int i = 0; i < n; ++i) d[i] = real_part(c(i, i));
  for (int i = 0; i + 1 < n; ++i) {
    const F sub = c(i + 1, i);
    const R mag = std::abs(sub);
    e[i] = mag;
    delta[i + 1] = mag == 0 ? delta[i] : delta[i] * sub / F(mag);
  }

  Matrix<R> rot = Matrix<R>::identity(n);
  if (!tridiagonal_ql(d, e, rot)) {
    out.status = ReducedStatus::no_convergence;
    return out;
  }

  // vectors = z * diag(delta) * rot
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) z(i, j) *= delta[j];
  Matrix<F> vectors(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const R rkj = rot(k, j);
      if (rkj == 0) continue;
      for (int i = 0; i < n; ++i) vectors(i, j) += z(i, k) * rkj;
    }
  out.values = std::move(d);
  out.vectors = std::move(vectors);
  sort_ascending(out);
  return out;
}

template <typename F>
ReducedEigen<F> generalized_eig(MatrixView<const F> a, MatrixView<const F> b) {
  using R = RealOf<F>;
  const int n = a.rows();
  ReducedEigen<F> out;

  if (n == 1) {
    const R b00 = real_part(b(0, 0));
    if (!(b00 > 0)) {
      out.status = ReducedStatus::not_positive_definite;
      out.failed_pivot = 1;
      return out;
    }
    out.values = {real_part(a(0, 0)) / b00};
    out.vectors = Matrix<F>(1, 1, F(1 / std::sqrt(b00)));
    return out;
  }

  CholeskyFactor<F> chol = spd_factor(b);
  if (!chol.ok()) {
    out.status = ReducedStatus::not_positive_definite;
    out.failed_pivot = chol.failed_pivot;
    return out;
  }
  const Matrix<F>& l = chol.lower;

  // W = L^{-1} A, using the Hermitian expansion of the lower triangle of A.
  Matrix<F> w(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) w(i, j) = i >= j ? a(i, j) : conj_if(a(j, i));
  const auto forward = [&](Matrix<F>& x) {
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        F s = x(i, j);
        for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
        x(i, j) = s / l(i, i);
      }
  };
  forward(w);
  // C = L^{-1} W^H = L^{-1} A L^{-H}
  Matrix<F> cm(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) cm(i, j) = conj_if(w(j, i));
  forward(cm);
  hermitize(cm.view());

  out = hermitian_eig<F>(cm.view());
  if (!out.ok()) return out;

  // phi = L^{-H} V
  Matrix<F>& v = out.vectors;
  for (int j = 0; j < n; ++j)
    for (int i = n - 1; i >= 0; --i) {
      F s = v(i, j);
      for (int k = i + 1; k < n; ++k) s -= conj_if(l(k, i)) * v(k, j);
      v(i, j) = s / conj_if(l(i, i));
    }
  return out;
}

#define FEAST_INSTANTIATE(F)                                                   \
  template CholeskyFactor<F> spd_factor<F>(MatrixView<const F>);               \
  template ReducedEigen<F> hermitian_eig<F>(MatrixView<const F>);              \
  template ReducedEigen<F> generalized_eig<F>(MatrixView<const F>, MatrixView<const F>);

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

}  // namespace feast
