#include "feast/sparse.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace feast {

namespace {

bool valid_uplo(char uplo) { return uplo == 'F' || uplo == 'L' || uplo == 'U'; }

/// Builds a row-sorted, duplicate-summed CSR from 0-based triplets.
template <typename F>
CsrMatrix<F> from_triplets(int n, std::vector<std::tuple<int, int, F>> t) {
  std::stable_sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  CsrMatrix<F> m;
  m.n = n;
  m.ia.assign(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t k = 0; k < t.size(); ++k) {
    const auto [i, j, v] = t[k];
    if (!m.ja.empty() && k > 0 && std::get<0>(t[k - 1]) == i && std::get<1>(t[k - 1]) == j) {
      m.values.back() += v;
      continue;
    }
    m.ja.push_back(j + 1);
    m.values.push_back(v);
    ++m.ia[static_cast<std::size_t>(i) + 1];
  }
  m.ia[0] = 1;
  for (int i = 0; i < n; ++i) m.ia[i + 1] += m.ia[i];
  return m;
}

}  // namespace

CsrIssue validate_csr(char uplo, int n, const int* ia, const int* ja) {
  if (!ia || n < 0) return CsrIssue::bad_offsets;
  if (ia[0] != 1) return CsrIssue::bad_offsets;
  for (int i = 0; i < n; ++i)
    if (ia[i + 1] < ia[i]) return CsrIssue::bad_offsets;
  const int nnz = ia[n] - 1;
  if (nnz > 0 && !ja) return CsrIssue::bad_columns;
  for (int i = 0; i < n; ++i)
    for (int k = ia[i] - 1; k < ia[i + 1] - 1; ++k) {
      const int j = ja[k] - 1;
      if (j < 0 || j >= n) return CsrIssue::bad_columns;
      if (uplo == 'L' && j > i) return CsrIssue::bad_columns;
      if (uplo == 'U' && j < i) return CsrIssue::bad_columns;
    }
  return CsrIssue::none;
}

template <typename F>
CsrMatrix<F> make_csr(int n, const int* ia, const int* ja, const F* values) {
  std::vector<std::tuple<int, int, F>> t;
  t.reserve(static_cast<std::size_t>(ia[n] - 1));
  for (int i = 0; i < n; ++i)
    for (int k = ia[i] - 1; k < ia[i + 1] - 1; ++k) t.emplace_back(i, ja[k] - 1, values[k]);
  return from_triplets<F>(n, std::move(t));
}

template <typename F>
CsrMatrix<F> expand_csr(const CsrMatrix<F>& m, char uplo) {
  std::vector<std::tuple<int, int, F>> t;
  t.reserve(2 * m.ja.size());
  for (int i = 0; i < m.n; ++i)
    for (int k = m.ia[i] - 1; k < m.ia[i + 1] - 1; ++k) {
      const int j = m.ja[k] - 1;
      t.emplace_back(i, j, m.values[k]);
      if (uplo != 'F' && i != j) t.emplace_back(j, i, conj_if(m.values[k]));
    }
  return from_triplets<F>(m.n, std::move(t));
}

template <typename F>
void csr_matvec(const CsrMatrix<F>& m, char uplo, MatrixView<const F> x, MatrixView<F> y) {
  fill(y, F{});
  for (int c = 0; c < x.cols(); ++c) {
    auto xc = x.col(c);
    auto yc = y.col(c);
    for (int i = 0; i < m.n; ++i) {
      F s{};
      for (int k = m.ia[i] - 1; k < m.ia[i + 1] - 1; ++k) {
        const int j = m.ja[k] - 1;
        s += m.values[k] * xc[j];
        if (uplo != 'F' && i != j) yc[j] += conj_if(m.values[k]) * xc[i];
      }
      yc[i] += s;
    }
  }
}

// ---------------------------------------------------------------------------

template <typename F>
struct SparsePencil<F>::Pattern {
  using Complex = std::complex<RealOf<F>>;
  using SpMat = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

  SpMat shape;                 // union pattern, symmetrically permuted
  std::vector<int> a_slot;     // value slot of each entry of A
  std::vector<int> b_slot;     // value slot of each entry of B, or of each diagonal
  std::vector<int> position;   // new index of original row/column i
};

template <typename F>
SparsePencil<F>::~SparsePencil() = default;

template <typename F>
SparsePencil<F>::SparsePencil(char uplo, int n, const F* a, const int* ia, const int* ja,
                              const F* b, const int* ib, const int* jb,
                              SparseSolverOptions solver)
    : n_(n), generalized_(b != nullptr), solver_(solver), pattern_(std::make_unique<Pattern>()) {
  a_ = expand_csr(make_csr(n, ia, ja, a), uplo);
  if (generalized_) b_ = expand_csr(make_csr(n, ib, jb, b), uplo);

  // Union pattern in the original ordering; each entry gets an id.
  std::vector<int> uid_a(a_.ja.size()), uid_b;
  std::vector<std::pair<int, int>> entries;  // (row, col), 0-based
  if (generalized_) uid_b.resize(b_.ja.size());
  else uid_b.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    int ka = a_.ia[i] - 1;
    const int ea = a_.ia[i + 1] - 1;
    int kb = generalized_ ? b_.ia[i] - 1 : 0;
    const int eb = generalized_ ? b_.ia[i + 1] - 1 : 1;
    const auto b_col = [&](int k) { return generalized_ ? b_.ja[k] - 1 : i; };
    while (ka < ea || kb < eb) {
      const int ca = ka < ea ? a_.ja[ka] - 1 : n;
      const int cb = kb < eb ? b_col(kb) : n;
      const int c = std::min(ca, cb);
      const int id = static_cast<int>(entries.size());
      entries.emplace_back(i, c);
      if (ca == c) uid_a[ka++] = id;
      if (cb == c) {
        if (generalized_) uid_b[kb] = id;
        else uid_b[i] = id;
        ++kb;
      }
    }
  }

  using RealMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
  RealMat original(n, n);
  {
    std::vector<Eigen::Triplet<double, int>> t;
    t.reserve(entries.size());
    for (const auto& [r, c] : entries) t.emplace_back(r, c, 1.0);
    original.setFromTriplets(t.begin(), t.end());
  }
  Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> pinv;
  Eigen::AMDOrdering<int> amd;
  amd(original, pinv);
  auto& pos = pattern_->position;
  pos.assign(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < n; ++k) pos[pinv.indices()[k]] = k;

  // Tag every permuted slot with its entry id to recover the value mapping.
  RealMat tagged(n, n);
  {
    std::vector<Eigen::Triplet<double, int>> t;
    t.reserve(entries.size());
    for (std::size_t id = 0; id < entries.size(); ++id)
      t.emplace_back(pos[entries[id].first], pos[entries[id].second], double(id));
    tagged.setFromTriplets(t.begin(), t.end());
  }
  tagged.makeCompressed();
  std::vector<int> slot_of(entries.size());
  for (int s = 0; s < tagged.nonZeros(); ++s) slot_of[static_cast<int>(tagged.valuePtr()[s])] = s;

  pattern_->shape = tagged.cast<Complex>();
  pattern_->shape.makeCompressed();
  pattern_->a_slot.resize(uid_a.size());
  for (std::size_t k = 0; k < uid_a.size(); ++k) pattern_->a_slot[k] = slot_of[uid_a[k]];
  pattern_->b_slot.resize(uid_b.size());
  for (std::size_t k = 0; k < uid_b.size(); ++k) pattern_->b_slot[k] = slot_of[uid_b[k]];
}

namespace {

template <typename F>
class SparseFactorizationBase : public ShiftedFactorization<F> {
 public:
  using Complex = std::complex<RealOf<F>>;
  using Dense = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;

  explicit SparseFactorizationBase(const std::vector<int>& position) : position_(position) {}

  void solve(MatrixView<Complex> rhs) const override { run(rhs, false); }
  void solve_adjoint(MatrixView<Complex> rhs) const override { run(rhs, true); }

 protected:
  virtual Dense solve_permuted(const Dense& b, bool adjoint) const = 0;

 private:
  void run(MatrixView<Complex> rhs, bool adjoint) const {
    const int n = rhs.rows();
    Dense b(n, rhs.cols());
    for (int c = 0; c < rhs.cols(); ++c)
      for (int i = 0; i < n; ++i) b(position_[i], c) = rhs(i, c);
    const Dense x = solve_permuted(b, adjoint);
    for (int c = 0; c < rhs.cols(); ++c)
      for (int i = 0; i < n; ++i) {
        const Complex v = x(position_[i], c);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
          throw SolverError("non-finite solution of shifted system");
        rhs(i, c) = v;
      }
  }

  std::vector<int> position_;
};

template <typename F>
class SparseDirect final : public SparseFactorizationBase<F> {
 public:
  using Base = SparseFactorizationBase<F>;
  using typename Base::Complex;
  using typename Base::Dense;
  using SpMat = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;

  SparseDirect(const SpMat& m, const std::vector<int>& position) : Base(position) {
    lu_.analyzePattern(m);
    lu_.factorize(m);
    if (lu_.info() != Eigen::Success) throw SolverError("sparse LU failed: " + lu_.lastErrorMessage());
  }

 protected:
  Dense solve_permuted(const Dense& b, bool adjoint) const override {
    if (adjoint) return lu_.adjoint().solve(b);
    return lu_.solve(b);
  }

 private:
  mutable Eigen::SparseLU<SpMat, Eigen::NaturalOrdering<int>> lu_;
};

template <typename F>
class SparseIterative final : public SparseFactorizationBase<F> {
 public:
  using Base = SparseFactorizationBase<F>;
  using typename Base::Complex;
  using typename Base::Dense;
  using SpMat = Eigen::SparseMatrix<Complex, Eigen::ColMajor, int>;
  using Solver = Eigen::BiCGSTAB<SpMat, Eigen::DiagonalPreconditioner<Complex>>;

  SparseIterative(SpMat m, const std::vector<int>& position, const SparseSolverOptions& opts)
      : Base(position), m_(std::move(m)), adj_(m_.adjoint()) {
    for (Solver* s : {&direct_, &adjoint_}) {
      s->setTolerance(static_cast<RealOf<F>>(opts.iterative_tolerance));
      s->setMaxIterations(opts.iterative_max_iterations);
    }
    direct_.compute(m_);
    adjoint_.compute(adj_);
    if (direct_.info() != Eigen::Success || adjoint_.info() != Eigen::Success)
      throw SolverError("iterative solver setup failed");
  }

 protected:
  Dense solve_permuted(const Dense& b, bool adjoint) const override {
    const Solver& s = adjoint ? adjoint_ : direct_;
    Dense x = s.solve(b);
    if (s.info() == Eigen::NumericalIssue) throw SolverError("iterative solver breakdown");
    return x;
  }

 private:
  SpMat m_, adj_;
  Solver direct_, adjoint_;
};

}  // namespace

template <typename F>
std::unique_ptr<ShiftedFactorization<F>> SparsePencil<F>::factorize(Complex z) const {
  typename Pattern::SpMat m = pattern_->shape;
  Complex* v = m.valuePtr();
  std::fill(v, v + m.nonZeros(), Complex{});
  for (std::size_t k = 0; k < a_.values.size(); ++k) v[pattern_->a_slot[k]] -= Complex(a_.values[k]);
  if (generalized_) {
    for (std::size_t k = 0; k < b_.values.size(); ++k)
      v[pattern_->b_slot[k]] += z * Complex(b_.values[k]);
  } else {
    for (int i = 0; i < n_; ++i) v[pattern_->b_slot[i]] += z;
  }
  if (solver_.kind == SparseSolverKind::iterative)
    return std::make_unique<SparseIterative<F>>(std::move(m), pattern_->position, solver_);
  return std::make_unique<SparseDirect<F>>(m, pattern_->position);
}

template <typename F>
void SparsePencil<F>::apply_a(MatrixView<const F> x, MatrixView<F> y) const {
  csr_matvec(a_, 'F', x, y);
}

template <typename F>
void SparsePencil<F>::apply_b(MatrixView<const F> x, MatrixView<F> y) const {
  if (generalized_)
    csr_matvec(b_, 'F', x, y);
  else
    copy(x, y);
}

int check_csr_arguments(char uplo, int n, const int* ia, const int* ja, const int* ib,
                        const int* jb, bool generalized) {
  if (!valid_uplo(uplo)) return info::bad_argument(1);
  switch (validate_csr(uplo, n, ia, ja)) {
    case CsrIssue::bad_offsets: return info::bad_argument(4);
    case CsrIssue::bad_columns: return info::bad_argument(5);
    case CsrIssue::none: break;
  }
  if (generalized) {
    switch (validate_csr(uplo, n, ib, jb)) {
      case CsrIssue::bad_offsets: return info::bad_argument(7);
      case CsrIssue::bad_columns: return info::bad_argument(8);
      case CsrIssue::none: break;
    }
  }
  return 0;
}

template <typename F>
void csr_driver(char uplo, int n, const F* a, const int* ia, const int* ja, const F* b,
                const int* ib, const int* jb, Params& fpm, RealOf<F>& epsout, int& loop,
                RealOf<F> emin, RealOf<F> emax, int& m0, RealOf<F>* e, F* x, int& m,
                RealOf<F>* res, int& info, const DriverOptions& options,
                const SparseSolverOptions& solver) {
  m = 0;
  loop = 0;
  info = valid_uplo(uplo) ? 0 : info::bad_argument(1);
  if (info == 0) info = check_problem(n, m0, emin, emax).value;
  if (info == 0) info = check_csr_arguments(uplo, n, ia, ja, ib, jb, b != nullptr);
  if (info != 0) return;
  std::unique_ptr<SparsePencil<F>> pencil;
  try {
    pencil = std::make_unique<SparsePencil<F>>(uplo, n, a, ia, ja, b, ib, jb, solver);
  } catch (const std::bad_alloc&) {
    info = info::allocation;
    return;
  }
  DriverOptions opts = options;
  if (opts.routine.empty()) opts.routine = routine_name<F>(is_complex_v<F> ? "HCSR" : "SCSR", b != nullptr);
  run_pencil(*pencil, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info, opts);
}

#define FEAST_INSTANTIATE(F)                                                                \
  template CsrMatrix<F> make_csr<F>(int, const int*, const int*, const F*);                 \
  template CsrMatrix<F> expand_csr<F>(const CsrMatrix<F>&, char);                           \
  template void csr_matvec<F>(const CsrMatrix<F>&, char, MatrixView<const F>, MatrixView<F>); \
  template class SparsePencil<F>;                                                           \
  template void csr_driver<F>(char, int, const F*, const int*, const int*, const F*,        \
                              const int*, const int*, Params&, RealOf<F>&, int&, RealOf<F>, \
                              RealOf<F>, int&, RealOf<F>*, F*, int&, RealOf<F>*, int&,      \
                              const DriverOptions&, const SparseSolverOptions&);

FEAST_INSTANTIATE(float)
FEAST_INSTANTIATE(double)
FEAST_INSTANTIATE(std::complex<float>)
FEAST_INSTANTIATE(std::complex<double>)

#undef FEAST_INSTANTIATE

}  // namespace feast
