#pragma once

// Generic driver loop: answers the kernel's requests with a matrix pencil
// that knows how to factorize shifted systems and apply A and B.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>

#include "feast/kernel.hpp"
#include "feast/linalg.hpp"
#include "feast/params.hpp"

namespace feast {

/// Raised by factorizations and solves that cannot proceed (exactly
/// singular pivot, breakdown). The driver turns it into info -2.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A factorization of z*B - A. Both solves overwrite the n x k block in place
/// and must be safe to call concurrently on distinct blocks.
template <typename F>
class ShiftedFactorization {
 public:
  using Complex = std::complex<RealOf<F>>;
  virtual ~ShiftedFactorization() = default;
  /// rhs <- (z B - A)^{-1} rhs
  virtual void solve(MatrixView<Complex> rhs) const = 0;
  /// rhs <- (z B - A)^{-H} rhs
  virtual void solve_adjoint(MatrixView<Complex> rhs) const = 0;
};

/// Read-only access to a symmetric or Hermitian pencil (A, B).
template <typename F>
class Pencil {
 public:
  using Complex = std::complex<RealOf<F>>;
  virtual ~Pencil() = default;
  virtual int size() const = 0;
  virtual bool generalized() const = 0;
  /// Thread-safe; throws SolverError on failure.
  virtual std::unique_ptr<ShiftedFactorization<F>> factorize(Complex z) const = 0;
  virtual void apply_a(MatrixView<const F> x, MatrixView<F> y) const = 0;
  /// Copies x into y for standard problems.
  virtual void apply_b(MatrixView<const F> x, MatrixView<F> y) const = 0;
};

struct DriverOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Threads used to factorize and solve all contour points at once; 1 keeps
  /// the strictly sequential request/answer loop.
  int contour_workers = 1;
  int multiply_block = 0;
  std::ostream* report = nullptr;
  std::string routine;
};

/// Runs the kernel to completion against `pencil`, in place on caller arrays
/// (x is n x m0 with leading dimension n; e and res hold m0 entries).
template <typename F>
void run_pencil(const Pencil<F>& pencil, Params& fpm, RealOf<F>& epsout, int& loop,
                RealOf<F> emin, RealOf<F> emax, int& m0, RealOf<F>* e, F* x, int& m,
                RealOf<F>* res, int& info, const DriverOptions& options = {});

/// Convenience wrapper returning an owned result. `x0` seeds X when fpm slot 5
/// is set.
template <typename F>
EigenResult<F> solve_pencil(const Pencil<F>& pencil, Params fpm, RealOf<F> emin, RealOf<F> emax,
                            int m0, const DriverOptions& options = {},
                            const Matrix<F>* x0 = nullptr);

/// Routine label used in the runtime report, e.g. "DFEAST_SYGV".
template <typename F>
std::string routine_name(const char* family, bool generalized) {
  return std::string(precision_letter<F>()) + "FEAST_" + family + (generalized ? "GV" : "EV");
}

}  // namespace feast
