#pragma once

// Reverse-communication contour-integration kernel. The kernel never touches
// the matrices: it asks the caller to factorize shifted systems, solve with
// them, and apply A or B to blocks of columns.

#include <cmath>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "feast/linalg.hpp"
#include "feast/params.hpp"
#include "feast/quadrature.hpp"

namespace feast {

enum class RciTask : int {
  Init = -1,
  Done = 0,
  Factorize = 10,
  Solve = 11,
  FactorizeAdjoint = 20,
  SolveAdjoint = 21,
  MultiplyA = 30,
  MultiplyB = 40,
};

inline constexpr std::uint64_t kDefaultSeed = 0x853c49e6748fea9bULL;

struct KernelOptions {
  std::uint64_t seed = kDefaultSeed;
  /// Hermitian kernels only: when false, FactorizeAdjoint is requested before
  /// every SolveAdjoint.
  bool adjoint_capable = true;
  /// Columns per MultiplyA/MultiplyB request; 0 means the whole subspace.
  int multiply_block = 0;
  /// Destination of the runtime report (fpm slot 1); null selects stdout.
  std::ostream* report = nullptr;
  std::string routine;
};

/// Uniform deviates in [-1, 1) from a 64-bit LCG (Knuth's MMIX constants).
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return 2.0 * std::ldexp(static_cast<double>(engine_() >> 11), -53) - 1.0; }

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL,
                                  1442695040888963407ULL, 0>
      engine_;
};

enum class AccumulateVariant { symmetric, hermitian_direct, hermitian_adjoint };

/// q -= coefficient * work2, with the coefficient selected by `variant`.
template <typename F>
void accumulate_subspace(MatrixView<F> q, MatrixView<const std::complex<RealOf<F>>> work2,
                         double weight, double radius, double theta, AccumulateVariant variant);

/// Relative trace change scaled by max(|emin|, |emax|).
double trace_error(double trace_cur, double trace_prev, double emin, double emax);

/// ||ax - lambda bx||_1 / ||max(|emin|,|emax|) bx||_1; +inf when the
/// denominator vanishes.
template <typename F>
RealOf<F> relative_residual(std::span<const F> ax, std::span<const F> bx, RealOf<F> lambda,
                            double emin, double emax);

/// Marks in-interval pairs whose residual is an outlier: above
/// max(100 * median in-interval residual, 10^(4 - tolerance_exponent)).
/// Flagged entries get res = -1. Returns the number flagged.
template <typename R>
int flag_spurious(std::span<const R> e, std::span<R> res, double emin, double emax,
                  int tolerance_exponent);

/// Reorders e, the columns of x and res: in-interval unflagged pairs
/// ascending, then out-of-interval pairs in their current order, then
/// flagged pairs (res == -1). Returns the in-interval count.
template <typename F>
int filter_sort_flag(std::span<RealOf<F>> e, MatrixView<F> x, std::span<RealOf<F>> res,
                     double emin, double emax);

/// Final state of a solve.
template <typename F>
struct EigenResult {
  using Real = RealOf<F>;
  int info = 0;
  int m = 0;
  int m0 = 0;  // subspace size on exit (may have shrunk)
  int loop = 0;
  Real epsout = 0;
  std::vector<Real> e;
  Matrix<F> x;
  std::vector<Real> res;
};

/// The kernel state. Instantiated for float, double, complex<float> and
/// complex<double>; complex types select the Hermitian variant.
template <typename F>
class RciKernel {
 public:
  using Real = RealOf<F>;
  using Complex = std::complex<Real>;
  static constexpr bool kHermitian = is_complex_v<F>;

  explicit RciKernel(KernelOptions options = {});
  ~RciKernel();
  RciKernel(RciKernel&&) noexcept;
  RciKernel& operator=(RciKernel&&) noexcept;

  const KernelOptions& options() const { return options_; }
  void set_options(KernelOptions options) { options_ = std::move(options); }

  /// One reverse-communication exchange. Pass ijob = Init to start a solve;
  /// afterwards pass back the task returned by the previous call once it has
  /// been carried out. All blocks are n x m0 column-major with leading
  /// dimension n; e and res hold m0 entries.
  ///
  ///  Factorize / FactorizeAdjoint : factorize ze*B - A (or its adjoint)
  ///  Solve / SolveAdjoint         : overwrite work2 with the solution
  ///  MultiplyA / MultiplyB        : work1(:, c) = A x(:, c) (or B x) for the
  ///                                 columns c given by fpm slots 24 and 25
  void step(RciTask& ijob, int n, Complex& ze, F* work1, Complex* work2, Params& fpm,
            Real& epsout, int& loop, Real emin, Real emax, int& m0, Real* e, F* x, int& m,
            Real* res, int& info);

 private:
  struct State;
  KernelOptions options_;
  std::unique_ptr<State> state_;
};

template <typename F>
constexpr const char* precision_letter() {
  if constexpr (std::is_same_v<F, float>) return "S";
  else if constexpr (std::is_same_v<F, double>) return "D";
  else if constexpr (std::is_same_v<F, std::complex<float>>) return "C";
  else return "Z";
}

}  // namespace feast
