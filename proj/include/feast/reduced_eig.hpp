#pragma once

// Dense eigen-solvers for the small projected problem A_Q phi = eps B_Q phi.

#include <vector>

#include "feast/linalg.hpp"

namespace feast {

template <typename F>
struct CholeskyFactor {
  Matrix<F> lower;       // L with L L^H = B (valid when ok())
  int failed_pivot = 0;  // 1-based index of the first non-positive pivot, 0 on success

  bool ok() const { return failed_pivot == 0; }
};

/// Cholesky factorization reading only the lower triangle of `b`.
template <typename F>
CholeskyFactor<F> spd_factor(MatrixView<const F> b);

enum class ReducedStatus { ok, not_positive_definite, no_convergence };

template <typename F>
struct ReducedEigen {
  ReducedStatus status = ReducedStatus::ok;
  int failed_pivot = 0;               // set when status == not_positive_definite
  std::vector<RealOf<F>> values;      // ascending
  Matrix<F> vectors;                  // columns B-orthonormal

  bool ok() const { return status == ReducedStatus::ok; }
};

/// Eigen-decomposition of a Hermitian (real symmetric) matrix by Householder
/// tridiagonalization and implicit-shift QL. Only the lower triangle is read.
template <typename F>
ReducedEigen<F> hermitian_eig(MatrixView<const F> a);

/// Generalized problem A phi = eps B phi with B Hermitian positive definite,
/// reduced to standard form through the Cholesky factor of B.
template <typename F>
ReducedEigen<F> generalized_eig(MatrixView<const F> a, MatrixView<const F> b);

/// Largest number of QL sweeps allowed per eigenvalue.
inline constexpr int kQlIterationsPerEigenvalue = 30;

}  // namespace feast
