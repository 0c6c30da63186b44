#include "feast/driver.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

#include "feast/quadrature.hpp"

namespace feast {

namespace {

void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  const auto body = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const int extra = std::min(workers, count) - 1;
  for (int w = 0; w < extra; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

/// Factorizations and solutions for every contour point, computed in
/// parallel and replayed to the kernel one request at a time. Each entry is
/// computed exactly as the sequential loop would, so results match bitwise.
template <typename F>
class ContourCache {
 public:
  using Real = RealOf<F>;
  using Complex = std::complex<Real>;

  ContourCache(const Pencil<F>& pencil, int workers) : pencil_(pencil), workers_(workers) {}

  /// Returns false when `z` is not one of the cached shifts.
  bool factorize(const Params& fpm, double emin, double emax, Complex z) {
    if (facts_.empty()) {
      contour_ = build_contour(gauss_legendre(fpm.contour_points()), emin, emax);
      facts_.resize(static_cast<std::size_t>(contour_.size()));
      parallel_for(contour_.size(), workers_, [&](int e) {
        facts_[e] = pencil_.factorize(Complex(contour_.points[e].z));
      });
    }
    current_ = index_of(z);
    return current_ >= 0;
  }

  void solve(MatrixView<Complex> w2, bool adjoint) {
    if (!same_rhs(w2)) refresh(w2);
    const Matrix<Complex>& src = adjoint ? adj_[current_] : direct_[current_];
    copy(MatrixView<const Complex>(src.view()), w2);
  }

 private:
  int index_of(Complex z) const {
    for (int e = 0; e < contour_.size(); ++e)
      if (Complex(contour_.points[e].z) == z) return e;
    return -1;
  }

  bool same_rhs(MatrixView<Complex> w2) const {
    if (rhs_.rows() != w2.rows() || rhs_.cols() != w2.cols()) return false;
    for (int j = 0; j < w2.cols(); ++j)
      for (int i = 0; i < w2.rows(); ++i)
        if (rhs_(i, j) != w2(i, j)) return false;
    return true;
  }

  void refresh(MatrixView<Complex> w2) {
    rhs_ = to_matrix(MatrixView<const Complex>(w2));
    const int ne = contour_.size();
    direct_.assign(static_cast<std::size_t>(ne), rhs_);
    const bool hermitian = is_complex_v<F>;
    adj_.assign(hermitian ? static_cast<std::size_t>(ne) : 0, rhs_);
    parallel_for(hermitian ? 2 * ne : ne, workers_, [&](int t) {
      if (t < ne)
        facts_[t]->solve(direct_[t].view());
      else
        facts_[t - ne]->solve_adjoint(adj_[t - ne].view());
    });
  }

  const Pencil<F>& pencil_;
  int workers_;
  Contour contour_;
  std::vector<std::unique_ptr<ShiftedFactorization<F>>> facts_;
  int current_ = -1;
  Matrix<Complex> rhs_;
  std::vector<Matrix<Complex>> direct_, adj_;
};

}  // namespace

template <typename F>
void run_pencil(const Pencil<F>& pencil, Params& fpm, RealOf<F>& epsout, int& loop,
                RealOf<F> emin, RealOf<F> emax, int& m0, RealOf<F>* e, F* x, int& m,
                RealOf<F>* res, int& info, const DriverOptions& options) {
  using Complex = std::complex<RealOf<F>>;
  const int n = pencil.size();

  KernelOptions ko;
  ko.seed = options.seed;
  ko.adjoint_capable = true;
  ko.multiply_block = options.multiply_block;
  ko.report = options.report;
  ko.routine = options.routine;
  RciKernel<F> kernel(ko);

  const std::size_t cells =
      n > 0 && m0 > 0 ? static_cast<std::size_t>(n) * static_cast<std::size_t>(m0) : 0;
  std::vector<F> work1(cells);
  std::vector<Complex> work2(cells);

  std::unique_ptr<ContourCache<F>> cache;
  if (options.contour_workers > 1) cache = std::make_unique<ContourCache<F>>(pencil, options.contour_workers);
  std::unique_ptr<ShiftedFactorization<F>> fact;
  bool use_cache = false;

  RciTask task = RciTask::Init;
  Complex ze;
  for (;;) {
    kernel.step(task, n, ze, work1.data(), work2.data(), fpm, epsout, loop, emin, emax, m0, e, x,
                m, res, info);
    if (task == RciTask::Done) return;
    try {
      switch (task) {
        case RciTask::Factorize:
          use_cache = cache && cache->factorize(fpm, emin, emax, ze);
          if (!use_cache) fact = pencil.factorize(ze);
          break;
        case RciTask::FactorizeAdjoint:
          // The direct factorization also serves adjoint solves.
          break;
        case RciTask::Solve:
        case RciTask::SolveAdjoint: {
          MatrixView<Complex> w2(work2.data(), n, m0, n);
          const bool adjoint = task == RciTask::SolveAdjoint;
          if (use_cache)
            cache->solve(w2, adjoint);
          else if (adjoint)
            fact->solve_adjoint(w2);
          else
            fact->solve(w2);
          break;
        }
        case RciTask::MultiplyA:
        case RciTask::MultiplyB: {
          const int first = fpm.slot(24) - 1;
          const int count = fpm.slot(25);
          MatrixView<const F> xs(x + static_cast<std::size_t>(first) * n, n, count, n);
          MatrixView<F> ys(work1.data() + static_cast<std::size_t>(first) * n, n, count, n);
          if (task == RciTask::MultiplyA)
            pencil.apply_a(xs, ys);
          else
            pencil.apply_b(xs, ys);
          break;
        }
        default:
          break;
      }
    } catch (const SolverError&) {
      info = info::inner_solver;
      m = 0;
      return;
    } catch (const std::bad_alloc&) {
      info = info::allocation;
      m = 0;
      return;
    }
  }
}

template <typename F>
EigenResult<F> solve_pencil(const Pencil<F>& pencil, Params fpm, RealOf<F> emin, RealOf<F> emax,
                            int m0, const DriverOptions& options, const Matrix<F>* x0) {
  EigenResult<F> r;
  const int n = pencil.size();
  const int cols = std::max(m0, 0);
  r.x = Matrix<F>(std::max(n, 0), cols);
  if (x0) {
    for (int j = 0; j < std::min(cols, x0->cols()); ++j)
      for (int i = 0; i < std::min(n, x0->rows()); ++i) r.x(i, j) = (*x0)(i, j);
  }
  r.e.assign(static_cast<std::size_t>(cols), RealOf<F>(0));
  r.res.assign(static_cast<std::size_t>(cols), RealOf<F>(0));
  r.m0 = m0;
  run_pencil(pencil, fpm, r.epsout, r.loop, emin, emax, r.m0, r.e.data(), r.x.data(), r.m,
             r.res.data(), r.info, options);
  return r;
}

#define FEAST_INSTANTIATE(F)                                                                \
  template void run_pencil<F>(const Pencil<F>&, Params&, RealOf<F>&, int&, RealOf<F>,       \
                              RealOf<F>, int&, RealOf<F>*, F*, int&, RealOf<F>*, int&,      \
                              const DriverOptions&);                                        \
  template EigenResult<F> solve_pencil<F>(const Pencil<F>&, Params, RealOf<F>, RealOf<F>,   \
                                          int, const DriverOptions&, const Matrix<F>*);

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

}  // namespace feast
