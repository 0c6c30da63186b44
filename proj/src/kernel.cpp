#include "feast/kernel.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numeric>
#include <ostream>

#include "feast/reduced_eig.hpp"

namespace feast {

// ---------------------------------------------------------------------------
// Free helpers

template <typename F>
void accumulate_subspace(MatrixView<F> q, MatrixView<const std::complex<RealOf<F>>> work2,
                         double weight, double radius, double theta, AccumulateVariant variant) {
  using R = RealOf<F>;
  using C = std::complex<R>;
  if (q.rows() != work2.rows() || q.cols() != work2.cols())
    throw std::logic_error("accumulate_subspace: shape mismatch");

  std::complex<double> coef;
  switch (variant) {
    case AccumulateVariant::symmetric:
      coef = (weight / 2) * radius * std::polar(1.0, theta);
      break;
    case AccumulateVariant::hermitian_direct:
      coef = (weight / 4) * radius * std::polar(1.0, theta);
      break;
    case AccumulateVariant::hermitian_adjoint:
      coef = (weight / 4) * radius * std::polar(1.0, -theta);
      break;
  }
  const C c(static_cast<R>(coef.real()), static_cast<R>(coef.imag()));
  for (int j = 0; j < q.cols(); ++j)
    for (int i = 0; i < q.rows(); ++i) {
      const C t = c * work2(i, j);
      if constexpr (is_complex_v<F>)
        q(i, j) -= t;
      else
        q(i, j) -= t.real();
    }
}

double trace_error(double trace_cur, double trace_prev, double emin, double emax) {
  return std::abs(trace_cur - trace_prev) / std::max(std::abs(emin), std::abs(emax));
}

template <typename F>
RealOf<F> relative_residual(std::span<const F> ax, std::span<const F> bx, RealOf<F> lambda,
                            double emin, double emax) {
  using R = RealOf<F>;
  const R scale = static_cast<R>(std::max(std::abs(emin), std::abs(emax)));
  R num = 0, den = 0;
  for (std::size_t i = 0; i < ax.size(); ++i) {
    num += std::abs(ax[i] - lambda * bx[i]);
    den += std::abs(scale * bx[i]);
  }
  if (den == 0) return std::numeric_limits<R>::infinity();
  return num / den;
}

namespace {

template <typename R>
bool inside(R lambda, double emin, double emax) {
  return lambda >= emin && lambda <= emax;
}

}  // namespace

template <typename R>
int flag_spurious(std::span<const R> e, std::span<R> res, double emin, double emax,
                  int tolerance_exponent) {
  std::vector<R> in;
  for (std::size_t j = 0; j < e.size(); ++j)
    if (inside(e[j], emin, emax) && res[j] >= 0) in.push_back(res[j]);
  if (in.empty()) return 0;
  std::sort(in.begin(), in.end());
  const std::size_t h = in.size() / 2;
  const double median = in.size() % 2 ? in[h] : 0.5 * (double(in[h - 1]) + double(in[h]));
  const double threshold = std::max(100.0 * median, std::pow(10.0, 4 - tolerance_exponent));
  int flagged = 0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (!inside(e[j], emin, emax) || res[j] < 0) continue;
    // Comparison is false for NaN, so NaN residuals are flagged too.
    if (!(double(res[j]) <= threshold)) {
      res[j] = R(-1);
      ++flagged;
    }
  }
  return flagged;
}

template <typename F>
int filter_sort_flag(std::span<RealOf<F>> e, MatrixView<F> x, std::span<RealOf<F>> res,
                     double emin, double emax) {
  using R = RealOf<F>;
  const int k = static_cast<int>(e.size());
  std::vector<int> good, outside, spurious;
  for (int j = 0; j < k; ++j) {
    if (res[j] == R(-1))
      spurious.push_back(j);
    else if (inside(e[j], emin, emax))
      good.push_back(j);
    else
      outside.push_back(j);
  }
  std::stable_sort(good.begin(), good.end(), [&](int a, int b) { return e[a] < e[b]; });

  std::vector<int> order = good;
  order.insert(order.end(), outside.begin(), outside.end());
  order.insert(order.end(), spurious.begin(), spurious.end());

  const std::vector<R> e0(e.begin(), e.end()), r0(res.begin(), res.end());
  Matrix<F> x0 = to_matrix(MatrixView<const F>(x));
  for (int j = 0; j < k; ++j) {
    e[j] = e0[order[j]];
    res[j] = r0[order[j]];
    if (x.cols() > 0)
      for (int i = 0; i < x.rows(); ++i) x(i, j) = x0(i, order[j]);
  }
  return static_cast<int>(good.size());
}

// ---------------------------------------------------------------------------
// Kernel state machine

namespace {

enum class Phase {
  Idle,
  WarmStart,
  Factorize,
  FactorizeAdjoint,
  Solve,
  SolveAdjoint,
  MultiplyA,
  MultiplyB,
  Refine,
  Finished,
};

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  return buf;
}

}  // namespace

template <typename F>
struct RciKernel<F>::State {
  // Arguments of the current exchange.
  struct Io {
    int n;
    Complex& ze;
    F* work1;
    Complex* work2;
    Params& fpm;
    Real& epsout;
    int& loop;
    Real emin, emax;
    int& m0;
    Real* e;
    F* x;
    int& m;
    Real* res;
    int& info;
  };

  const KernelOptions& opts;
  Phase phase = Phase::Idle;
  int n = 0;
  int m0 = 0;
  int m0_initial = 0;
  double emin = 0, emax = 0;
  Params fpm;
  Contour contour;
  int point = 0;
  int loop = 0;
  int block_first = 0;
  int tol_exp = 0;
  bool have_trace = false;
  double trace_prev = 0;
  Matrix<F> y, q, aq_blk, bq_blk;
  std::ostream* out = nullptr;

  explicit State(const KernelOptions& o) : opts(o) {}

  int block_size() const {
    return opts.multiply_block > 0 ? std::min(opts.multiply_block, m0) : m0;
  }

  MatrixView<F> xview(Io& io) const { return {io.x, n, m0, n}; }
  MatrixView<F> work1view(Io& io) const { return {io.work1, n, m0, n}; }
  MatrixView<Complex> work2view(Io& io) const { return {io.work2, n, m0, n}; }

  // -- report ---------------------------------------------------------------

  std::string routine() const {
    if (!opts.routine.empty()) return opts.routine;
    return std::string(precision_letter<F>()) + (kHermitian ? "FEAST_HRCI" : "FEAST_SRCI");
  }

  void banner_begin(const Params& p) {
    if (!out) return;
    *out << "***********************************************\n"
            "*********** FEAST- BEGIN **********************\n"
            "***********************************************\n";
    *out << "Routine " << routine() << "\n";
    *out << "List of input parameters fpm(1:64)-- if different from default\n";
    const Params defaults = feastinit();
    for (int i = 1; i <= Params::kSize; ++i) {
      if (i == 24 || i == 25) continue;
      if (p.slot(i) != defaults.slot(i)) *out << "   fpm(" << i << ")=" << p.slot(i) << "\n";
    }
  }

  void banner_end() {
    if (!out) return;
    *out << "***********************************************\n"
            "*********** FEAST- END*************************\n"
            "***********************************************\n";
    out->flush();
  }

  void report_problem() {
    if (!out) return;
    *out << "Search interval [" << sci(emin) << "; " << sci(emax) << "]\n";
    *out << "Size subspace   " << m0 << "\n";
    *out << "#Loop | #Eig |     Trace           |    Error-Trace       |   Max-Residual\n";
  }

  void report_loop(int m, double trace, double eps, double maxres) {
    if (!out) return;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-8d%-7d%s  %s  %s\n", loop, m, sci(trace).c_str(),
                  sci(eps).c_str(), sci(maxres).c_str());
    *out << buf;
  }

  void report_exit(int info) {
    if (!out) return;
    switch (info) {
      case info::success:
        *out << "==>FEAST has successfully converged (to desired tolerance)\n";
        break;
      case info::no_eigenvalue:
        *out << "==>WARNING: No Eigenvalue has been found in the proposed search interval\n";
        break;
      case info::no_convergence:
        *out << "==>WARNING: FEAST did not converge \"yet\" (#loop reaches maximum allowed)\n";
        break;
      case info::subspace_too_small:
        *out << "==>WARNING: Size subspace M0 too small\n";
        break;
      case info::subspace_only:
        *out << "==>FEAST has returned the subspace after one contour (fpm(14)=1)\n";
        break;
      default:
        *out << "==>ERROR: " << info_message(info) << " (info=" << info << ")\n";
        break;
    }
    banner_end();
  }

  // -- task emission --------------------------------------------------------

  RciTask emit_block(Io& io, RciTask task) {
    const int count = std::min(block_size(), m0 - block_first);
    io.fpm.slot(24) = block_first + 1;
    io.fpm.slot(25) = count;
    return task;
  }

  /// Copies the work1 columns of the pending block into `dst`; returns true
  /// when more blocks remain.
  bool take_block(Io& io, Matrix<F>& dst) {
    const int count = std::min(block_size(), m0 - block_first);
    auto w1 = work1view(io);
    for (int j = block_first; j < block_first + count; ++j)
      for (int i = 0; i < n; ++i) dst(i, j) = w1(i, j);
    block_first += count;
    return block_first < m0;
  }

  void load_rhs(Io& io) {
    auto w2 = work2view(io);
    for (int j = 0; j < m0; ++j)
      for (int i = 0; i < n; ++i) w2(i, j) = Complex(y(i, j));
  }

  RciTask emit_point(Io& io, Phase ph, RciTask task) {
    phase = ph;
    io.ze = Complex(contour.points[point].z);
    if (task == RciTask::Solve || task == RciTask::SolveAdjoint) load_rhs(io);
    return task;
  }

  RciTask begin_contour(Io& io) {
    fill(q.view(), F{});
    point = 0;
    return emit_point(io, Phase::Factorize, RciTask::Factorize);
  }

  void accumulate(Io& io, AccumulateVariant variant) {
    const ContourPoint& p = contour.points[point];
    accumulate_subspace<F>(q.view().block_cols(0, m0),
                           MatrixView<const Complex>(work2view(io)), p.weight,
                           contour.radius, p.theta, variant);
  }

  RciTask next_point(Io& io) {
    if (++point < contour.size()) return emit_point(io, Phase::Factorize, RciTask::Factorize);
    return after_contour(io);
  }

  RciTask after_contour(Io& io) {
    auto x = xview(io);
    copy(MatrixView<const F>(q.view().block_cols(0, m0)), x);
    if (fpm.subspace_only()) {
      for (int j = 0; j < m0; ++j) io.e[j] = io.res[j] = Real(0);
      io.m = 0;
      io.epsout = Real(1);
      return finish_status(io, info::subspace_only);
    }
    phase = Phase::MultiplyA;
    block_first = 0;
    return emit_block(io, RciTask::MultiplyA);
  }

  // -- Rayleigh-Ritz ----------------------------------------------------------

  void shrink(Io& io, int k) {
    auto x = MatrixView<F>(io.x, n, m0, n);
    for (int j = k; j < m0; ++j) {
      for (int i = 0; i < n; ++i) x(i, j) = F{};
      io.e[j] = io.res[j] = Real(0);
    }
    m0 = k;
    io.m0 = k;
  }

  RciTask rayleigh_ritz(Io& io) {
    int k = m0;
    auto qv = MatrixView<const F>(q.view().block_cols(0, k));
    auto aqb = MatrixView<const F>(aq_blk.view().block_cols(0, k));
    auto bqb = MatrixView<const F>(bq_blk.view().block_cols(0, k));
    Matrix<F> aq(k, k), bq(k, k);
    gemm_adjoint(qv, aqb, aq.view());
    gemm_adjoint(qv, bqb, bq.view());
    hermitize(aq.view());
    hermitize(bq.view());

    ReducedEigen<F> red;
    for (;;) {
      red = generalized_eig<F>(MatrixView<const F>(aq.view().leading(k, k)),
                               MatrixView<const F>(bq.view().leading(k, k)));
      if (red.status == ReducedStatus::not_positive_definite) {
        k = red.failed_pivot - 1;
        if (k == 0) break;
        continue;
      }
      break;
    }
    if (k == 0 || red.status != ReducedStatus::ok) {
      shrink(io, std::max(k, 0));
      io.m = 0;
      return finish_status(io, info::reduced_solver);
    }
    if (k < m0) shrink(io, k);

    const auto phi = MatrixView<const F>(red.vectors.view());
    auto x = xview(io);
    gemm(MatrixView<const F>(q.view().block_cols(0, k)), phi, x);
    Matrix<F> ax(n, k), bx(n, k);
    gemm(MatrixView<const F>(aq_blk.view().block_cols(0, k)), phi, ax.view());
    gemm(MatrixView<const F>(bq_blk.view().block_cols(0, k)), phi, bx.view());
    for (int j = 0; j < k; ++j) {
      io.e[j] = red.values[j];
      io.res[j] = relative_residual<F>(std::span<const F>(ax.col(j)),
                                       std::span<const F>(bx.col(j)), red.values[j], emin, emax);
    }

    const int m = filter_sort_flag<F>(std::span<Real>(io.e, k), x, std::span<Real>(io.res, k),
                                      emin, emax);
    double trace = 0, maxres = 0;
    for (int j = 0; j < m; ++j) {
      trace += io.e[j];
      maxres = std::max(maxres, double(io.res[j]));
    }
    const double eps = have_trace ? trace_error(trace, trace_prev, emin, emax) : 1.0;
    have_trace = true;
    trace_prev = trace;
    io.m = m;
    io.epsout = static_cast<Real>(eps);
    io.loop = loop;
    report_loop(m, trace, eps, maxres);

    if (m == 0) return finish_status(io, info::no_eigenvalue);

    const double tol = std::pow(10.0, -tol_exp);
    const bool converged = fpm.residual_criterion() ? maxres < tol : eps < tol;
    const bool too_small = (m == m0 && m0 < n);
    if (converged) return finish(io, too_small ? info::subspace_too_small : info::success);
    if (loop >= fpm.max_loops())
      return finish(io, too_small ? info::subspace_too_small : info::no_convergence);

    ++loop;
    phase = Phase::Refine;
    block_first = 0;
    return emit_block(io, RciTask::MultiplyB);
  }

  /// Final flagging and ordering of a completed solve.
  RciTask finish(Io& io, int code) {
    std::span<Real> e(io.e, m0), res(io.res, m0);
    flag_spurious<Real>(std::span<const Real>(e), res, emin, emax, tol_exp);
    io.m = filter_sort_flag<F>(e, xview(io), res, emin, emax);
    if (io.m == 0 && code == info::success) code = info::no_eigenvalue;
    return finish_status(io, code);
  }

  RciTask finish_status(Io& io, int code) {
    io.info = code;
    io.loop = loop;
    phase = Phase::Finished;
    report_exit(code);
    return RciTask::Done;
  }

  // -- entry points -----------------------------------------------------------

  RciTask start(Io& io) {
    out = nullptr;
    phase = Phase::Idle;
    io.info = 0;
    io.m = 0;
    io.loop = 0;
    io.epsout = Real(1);

    const Params p = io.fpm;
    if (p.slot(1) == 1) out = opts.report ? opts.report : &std::cout;
    banner_begin(p);

    int code = check_problem(io.n, io.m0, double(io.emin), double(io.emax)).value;
    if (code == 0) code = validate_params(p).value;
    if (code != 0) {
      phase = Phase::Finished;
      io.info = code;
      report_exit(code);
      return RciTask::Done;
    }

    fpm = p;
    n = io.n;
    m0 = m0_initial = io.m0;
    emin = io.emin;
    emax = io.emax;
    loop = 0;
    have_trace = false;
    trace_prev = 0;
    tol_exp = std::is_same_v<Real, float> ? fpm.tolerance_exponent_single()
                                          : fpm.tolerance_exponent_double();
    contour = build_contour(gauss_legendre(fpm.contour_points()), emin, emax);
    y = Matrix<F>(n, m0);
    q = Matrix<F>(n, m0);
    aq_blk = Matrix<F>(n, m0);
    bq_blk = Matrix<F>(n, m0);
    report_problem();

    if (fpm.use_initial_guess()) {
      phase = Phase::WarmStart;
      block_first = 0;
      return emit_block(io, RciTask::MultiplyB);
    }
    UniformSource rng(opts.seed);
    for (int j = 0; j < m0; ++j)
      for (int i = 0; i < n; ++i) {
        if constexpr (kHermitian) {
          const double re = rng.next();
          const double im = rng.next();
          y(i, j) = F(static_cast<Real>(re), static_cast<Real>(im));
        } else {
          y(i, j) = static_cast<F>(rng.next());
        }
      }
    return begin_contour(io);
  }

  RciTask resume(Io& io) {
    switch (phase) {
      case Phase::Idle:
      case Phase::Finished:
        return RciTask::Done;
      case Phase::WarmStart:
        if (take_block(io, y)) return emit_block(io, RciTask::MultiplyB);
        return begin_contour(io);
      case Phase::Factorize:
        if (kHermitian && !opts.adjoint_capable)
          return emit_point(io, Phase::FactorizeAdjoint, RciTask::FactorizeAdjoint);
        return emit_point(io, Phase::Solve, RciTask::Solve);
      case Phase::FactorizeAdjoint:
        return emit_point(io, Phase::Solve, RciTask::Solve);
      case Phase::Solve:
        if constexpr (kHermitian) {
          accumulate(io, AccumulateVariant::hermitian_direct);
          return emit_point(io, Phase::SolveAdjoint, RciTask::SolveAdjoint);
        } else {
          accumulate(io, AccumulateVariant::symmetric);
          return next_point(io);
        }
      case Phase::SolveAdjoint:
        accumulate(io, AccumulateVariant::hermitian_adjoint);
        return next_point(io);
      case Phase::MultiplyA:
        if (take_block(io, aq_blk)) return emit_block(io, RciTask::MultiplyA);
        phase = Phase::MultiplyB;
        block_first = 0;
        return emit_block(io, RciTask::MultiplyB);
      case Phase::MultiplyB:
        if (take_block(io, bq_blk)) return emit_block(io, RciTask::MultiplyB);
        return rayleigh_ritz(io);
      case Phase::Refine:
        if (take_block(io, y)) return emit_block(io, RciTask::MultiplyB);
        return begin_contour(io);
    }
    return RciTask::Done;
  }
};

template <typename F>
RciKernel<F>::RciKernel(KernelOptions options) : options_(std::move(options)) {}

template <typename F>
RciKernel<F>::~RciKernel() = default;

template <typename F>
RciKernel<F>::RciKernel(RciKernel&&) noexcept = default;

template <typename F>
RciKernel<F>& RciKernel<F>::operator=(RciKernel&&) noexcept = default;

template <typename F>
void RciKernel<F>::step(RciTask& ijob, int n, Complex& ze, F* work1, Complex* work2,
                        Params& fpm, Real& epsout, int& loop, Real emin, Real emax, int& m0,
                        Real* e, F* x, int& m, Real* res, int& info) {
  typename State::Io io{n, ze, work1, work2, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info};
  if (ijob == RciTask::Init || !state_) {
    state_ = std::make_unique<State>(options_);
    try {
      ijob = state_->start(io);
    } catch (const std::bad_alloc&) {
      info = info::allocation;
      ijob = RciTask::Done;
    }
    return;
  }
  try {
    ijob = state_->resume(io);
  } catch (const std::bad_alloc&) {
    info = info::allocation;
    ijob = RciTask::Done;
  }
}

#define FEAST_INSTANTIATE(F)                                                               \
  template void accumulate_subspace<F>(MatrixView<F>,                                      \
                                       MatrixView<const std::complex<RealOf<F>>>, double,  \
                                       double, double, AccumulateVariant);                 \
  template RealOf<F> relative_residual<F>(std::span<const F>, std::span<const F>,          \
                                          RealOf<F>, double, double);                      \
  template int filter_sort_flag<F>(std::span<RealOf<F>>, MatrixView<F>,                    \
                                   std::span<RealOf<F>>, double, double);                  \
  template class RciKernel<F>;

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

template int flag_spurious<float>(std::span<const float>, std::span<float>, double, double, int);
template int flag_spurious<double>(std::span<const double>, std::span<double>, double, double,
                                   int);

}  // namespace feast
