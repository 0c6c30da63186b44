// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "feast/banded.hpp"
#include "feast/dense.hpp"
#include "feast/quadrature.hpp"
#include "feast/sparse.hpp"
#include "test_support.hpp"

using namespace feast;
using namespace feast::testing;
using cd = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double max_in(const std::vector<double>& v, int m) {
  double r = 0;
  for (int i = 0; i < m; ++i) r = std::max(r, v[i]);
  return r;
}

template <typename F>
EigenResult<F> dense_solve(const Matrix<F>& a, const Matrix<F>* b, double emin, double emax,
                           int m0, Params fpm = {}, DriverOptions opts = {}) {
  const DensePencil<F> p('F', a.rows(), a.data(), a.rows(), b ? b->data() : nullptr, a.rows());
  return solve_pencil<F>(p, fpm, emin, emax, m0, opts);
}

EigenResult<double> csr_solve(const CsrMatrix<double>& a, double emin, double emax, int m0,
                              Params fpm = {}, DriverOptions opts = {},
                              const Matrix<double>* x0 = nullptr) {
  const SparsePencil<double> p('F', a.n, a.values.data(), a.ia.data(), a.ja.data());
  return solve_pencil<double>(p, fpm, emin, emax, m0, opts, x0);
}

// ---- 1 ----------------------------------------------------------------------

Verdict quadrature() {
  Verdict v;
  const auto r = gauss_legendre(8);
  const double pairs[4][2] = {{0.183434642495649, 0.362683783378361},
                              {0.525532409916328, 0.313706645877887},
                              {0.796666477413626, 0.222381034453374},
                              {0.960289856497536, 0.101228536290376}};
  for (auto [x, w] : pairs)
    for (double s : {1.0, -1.0}) {
      bool found = false;
      for (int i = 0; i < r.order(); ++i)
        found |= std::abs(r.nodes[i] - s * x) <= 1e-15 && std::abs(r.weights[i] - w) <= 1e-15;
      v.require(found, "missing pair " + fmt("%.15f", s * x));
    }
  if (v.pass) v.detail = "8 nodes/weights match to 1e-15";
  return v;
}

// ---- 2 ----------------------------------------------------------------------

Verdict helloworld() {
  Verdict v;
  Matrix<double> a(2, 2);
  a(0, 0) = a(1, 1) = 2;
  a(0, 1) = a(1, 0) = -1;
  Params fpm;
  fpm.slot(1) = 1;
  std::ostringstream report;
  DriverOptions opts;
  opts.report = &report;
  int m0 = 2, m = 0, loop = 0, info = 0;
  double epsout = 0, e[2], res[2], x[4];
  dense_driver<double>('F', 2, a.data(), 2, nullptr, 0, fpm, epsout, loop, -5, 5, m0, e, x, m,
                       res, info, opts);
  v.require(info == 0, "info " + std::to_string(info));
  v.require(m == 2, "m " + std::to_string(m));
  v.require(std::abs(e[0] - 1) <= 1e-12 && std::abs(e[1] - 3) <= 1e-12, "eigenvalues");
  v.require(std::max(res[0], res[1]) <= 1e-14, "residual " + fmt("%.3e", std::max(res[0], res[1])));
  v.require(epsout >= 0 && epsout <= 1e-13, "epsout " + fmt("%.3e", epsout));
  v.require(loop <= 2, "loop " + std::to_string(loop));
  const std::string text = report.str();
  const auto p = text.find("\n0       ");
  v.require(p != std::string::npos, "loop-0 line missing");
  if (p != std::string::npos) {
    const std::string line = text.substr(p + 1, text.find('\n', p + 1) - p - 1);
    v.require(line.find("  1.000000000000000e+00  ") != std::string::npos,
              "loop-0 epsout not 1.0: " + line);
  }
  if (v.pass)
    v.detail = "e={1,3}, loop=" + std::to_string(loop) + ", epsout=" + fmt("%.3e", epsout) +
               ", max res=" + fmt("%.3e", std::max(res[0], res[1]));
  return v;
}

// ---- 3 ----------------------------------------------------------------------

template <typename F>
void oracle_family(Verdict& v, std::mt19937_64& rng, int count, const char* label) {
  for (int t = 0; t < count && v.pass; ++t) {
    const int n = 5 + static_cast<int>(rng() % 56);
    const auto a = random_hermitian<F>(n, rng);
    const auto b = random_spd<F>(n, rng);
    const auto spectrum = oracle_spectrum(a, &b);
    const int want = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
    const int first = static_cast<int>(rng() % static_cast<unsigned>(n - want + 1));
    const auto [lo, hi] = interval_around(spectrum, first, want);
    const int m0 = std::min(n, static_cast<int>(std::ceil(1.5 * want)));
    Params fpm;
    fpm.slot(6) = 1;
    const auto r = dense_solve<F>(a, &b, lo, hi, m0, fpm);
    const std::string id = std::string(label) + " #" + std::to_string(t) + " n=" +
                           std::to_string(n) + " M=" + std::to_string(want);
    v.require(r.info == 0, id + ": info " + std::to_string(r.info));
    v.require(r.m == want, id + ": m " + std::to_string(r.m));
    if (!v.pass) return;
    const double scale = std::max(std::abs(spectrum.front()), std::abs(spectrum.back()));
    for (int i = 0; i < want; ++i) {
      v.require(std::abs(r.e[i] - spectrum[first + i]) <= 1e-9 * scale,
                id + ": eigenvalue " + std::to_string(i));
      v.require(r.res[i] >= 0, id + ": spurious flag");
      v.require(r.res[i] <= 1e-9, id + ": residual " + fmt("%.3e", r.res[i]));
    }
  }
}

Verdict oracle_equivalence() {
  Verdict v;
  std::mt19937_64 rng(20240601);
  oracle_family<double>(v, rng, 50, "symmetric");
  oracle_family<cd>(v, rng, 50, "hermitian");
  if (v.pass) v.detail = "100 pencils match the Eigen oracle";
  return v;
}

// ---- 4 ----------------------------------------------------------------------

Verdict convergence_rate() {
  Verdict v;
  const int n = 2000, want = 50, m0 = 75;
  const auto lap = laplacian_1d(n);
  const auto exact = laplacian_1d_spectrum(n);
  const double emax = 0.5 * (exact[want - 1] + exact[want]);
  const double emin = -emax * 0.05;
  std::string detail;
  for (auto [ne, max_loops] : {std::pair{4, 8}, std::pair{8, 4}, std::pair{16, 3}}) {
    Params fpm;
    fpm.slot(2) = ne;
    fpm.slot(3) = 10;
    fpm.slot(6) = 1;
    const auto r = csr_solve(lap, emin, emax, m0, fpm);
    const double maxres = max_in(std::vector<double>(r.res.begin(), r.res.end()), r.m);
    const std::string id = "Ne=" + std::to_string(ne);
    v.require(r.info == 0, id + ": info " + std::to_string(r.info));
    v.require(r.m == want, id + ": m " + std::to_string(r.m));
    v.require(maxres <= 1e-10, id + ": residual " + fmt("%.3e", maxres));
    v.require(r.loop <= max_loops, id + ": " + std::to_string(r.loop) + " loops");
    for (int i = 0; i < std::min(r.m, want); ++i)
      v.require(std::abs(r.e[i] - exact[i]) <= 1e-10, id + ": eigenvalue " + std::to_string(i));
    detail += (detail.empty() ? "" : "; ") + id + " loops=" + std::to_string(r.loop) + " res=" + fmt("%.1e", maxres);
  }
  if (v.pass) v.detail = detail;
  return v;
}

// ---- 5 ----------------------------------------------------------------------

CsrMatrix<double> replicate(const CsrMatrix<double>& base, int k) {
  CsrMatrix<double> out;
  out.n = base.n * k;
  out.ia.push_back(1);
  for (int block = 0; block < k; ++block)
    for (int i = 0; i < base.n; ++i) {
      for (int p = base.ia[i] - 1; p < base.ia[i + 1] - 1; ++p) {
        out.ja.push_back(base.ja[p] + block * base.n);
        out.values.push_back(base.values[p]);
      }
      out.ia.push_back(out.nnz() + 1);
    }
  return out;
}

Verdict multiplicity() {
  Verdict v;
  const int n = 100, want = 10;
  std::mt19937_64 rng(77);
  const auto dense = random_band<double>(n, 3, rng);
  CsrMatrix<double> base;
  base.n = n;
  base.ia.push_back(1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      if (dense(i, j) != 0) {
        base.ja.push_back(j + 1);
        base.values.push_back(dense(i, j));
      }
    base.ia.push_back(base.nnz() + 1);
  }
  const auto spectrum = oracle_spectrum(dense);
  const auto [lo, hi] = interval_around(spectrum, 45, want);
  const auto ref = csr_solve(base, lo, hi, 15);
  v.require(ref.info == 0 && ref.m == want, "base run: info " + std::to_string(ref.info));
  if (!v.pass) return v;
  const double ref_res = max_in(std::vector<double>(ref.res.begin(), ref.res.end()), ref.m);
  std::string detail = "k=1 res=" + fmt("%.1e", ref_res);
  for (int k : {2, 4, 8}) {
    const auto r = csr_solve(replicate(base, k), lo, hi, 15 * k);
    const std::string id = "k=" + std::to_string(k);
    v.require(r.info == 0, id + ": info " + std::to_string(r.info));
    v.require(r.m == want * k, id + ": m " + std::to_string(r.m));
    if (!v.pass) return v;
    for (int i = 0; i < r.m; ++i)
      v.require(std::abs(r.e[i] - ref.e[i / k]) <= 1e-10, id + ": eigenvalue " + std::to_string(i));
    const double res = max_in(std::vector<double>(r.res.begin(), r.res.end()), r.m);
    v.require(res <= 10 * ref_res, id + ": residual " + fmt("%.2e", res) + " vs base " +
                                       fmt("%.2e", ref_res));
    detail += ", " + id + " res=" + fmt("%.1e", res);
  }
  if (v.pass) v.detail = detail;
  return v;
}

// ---- 6 ----------------------------------------------------------------------

Verdict backend_agreement() {
  Verdict v;
  const int n = 64, k = 5;
  std::mt19937_64 rng(606);
  const auto a = random_band<double>(n, k, rng);
  const auto spectrum = oracle_spectrum(a);
  const auto [lo, hi] = interval_around(spectrum, 20, 8);
  const int m0 = 12;
  Params fpm;

  std::vector<double> e[3];
  int info[3], m[3];
  const auto run = [&](int which, const auto& call) {
    e[which].assign(m0, 0);
    std::vector<double> x(static_cast<std::size_t>(n) * m0), res(m0);
    int mm0 = m0, loop = 0;
    double eps = 0;
    Params p = fpm;
    call(p, eps, loop, mm0, e[which].data(), x.data(), m[which], res.data(), info[which]);
  };
  run(0, [&](Params& p, double& eps, int& loop, int& mm0, double* ev, double* x, int& mm,
             double* res, int& inf) {
    dense_driver<double>('F', n, a.data(), n, nullptr, 0, p, eps, loop, lo, hi, mm0, ev, x, mm,
                         res, inf);
  });
  std::vector<double> band(static_cast<std::size_t>(k + 1) * n);
  for (int j = 0; j < n; ++j)
    for (int i = j; i <= std::min(n - 1, j + k); ++i) band[static_cast<std::size_t>(j) * (k + 1) + i - j] = a(i, j);
  run(1, [&](Params& p, double& eps, int& loop, int& mm0, double* ev, double* x, int& mm,
             double* res, int& inf) {
    banded_driver<double>('L', n, k, band.data(), k + 1, 0, nullptr, 1, p, eps, loop, lo, hi, mm0,
                          ev, x, mm, res, inf);
  });
  CsrMatrix<double> csr;
  csr.n = n;
  csr.ia.push_back(1);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j)
      if (a(i, j) != 0) {
        csr.ja.push_back(j + 1);
        csr.values.push_back(a(i, j));
      }
    csr.ia.push_back(csr.nnz() + 1);
  }
  run(2, [&](Params& p, double& eps, int& loop, int& mm0, double* ev, double* x, int& mm,
             double* res, int& inf) {
    csr_driver<double>('U', n, csr.values.data(), csr.ia.data(), csr.ja.data(), nullptr, nullptr,
                       nullptr, p, eps, loop, lo, hi, mm0, ev, x, mm, res, inf);
  });
  const char* names[3] = {"dense", "banded", "csr"};
  double worst = 0;
  for (int i = 0; i < 3; ++i) {
    v.require(info[i] == 0, std::string(names[i]) + ": info " + std::to_string(info[i]));
    v.require(m[i] == 8, std::string(names[i]) + ": m " + std::to_string(m[i]));
  }
  if (!v.pass) return v;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      for (int q = 0; q < 8; ++q) worst = std::max(worst, std::abs(e[i][q] - e[j][q]));
  v.require(worst <= 1e-10, "max pairwise difference " + fmt("%.3e", worst));
  if (v.pass) v.detail = "8 eigenvalues, max pairwise difference " + fmt("%.1e", worst);
  return v;
}

// ---- 7 ----------------------------------------------------------------------

/// Checks the recorded trace against the per-loop grammar; returns an empty
/// string on success.
std::string check_trace(const std::vector<TaskRecord>& t, int ne, bool hermitian, bool capable,
                        int m0, int blk) {
  std::size_t k = 0;
  const auto take = [&](RciTask want) -> std::string {
    if (k >= t.size()) return "trace ended early";
    if (t[k].task != want)
      return "position " + std::to_string(k) + ": task " + std::to_string(int(t[k].task)) +
             " expected " + std::to_string(int(want));
    ++k;
    return {};
  };
  // The kernel may shrink m0 when the reduced B is not positive definite, so
  // coverage is checked against the m0 recorded with each task.
  const auto blocks = [&](RciTask want) -> std::string {
    if (k >= t.size()) return "trace ended early";
    const int cur = t[k].m0;
    if (cur < 1 || cur > m0) return "m0 out of range: " + std::to_string(cur);
    int next = 1;
    while (next <= cur) {
      if (auto err = take(want); !err.empty()) return err;
      const auto& r = t[k - 1];
      if (r.m0 != cur || r.first != next || r.count < 1 || r.count > blk ||
          r.first + r.count - 1 > cur)
        return "bad column range " + std::to_string(r.first) + "+" + std::to_string(r.count);
      next += r.count;
    }
    return {};
  };
  for (;;) {
    for (int e = 0; e < ne; ++e) {
      if (auto err = take(RciTask::Factorize); !err.empty()) return err;
      if (hermitian && !capable)
        if (auto err = take(RciTask::FactorizeAdjoint); !err.empty()) return err;
      if (auto err = take(RciTask::Solve); !err.empty()) return err;
      if (hermitian)
        if (auto err = take(RciTask::SolveAdjoint); !err.empty()) return err;
    }
    if (auto err = blocks(RciTask::MultiplyA); !err.empty()) return err;
    if (auto err = blocks(RciTask::MultiplyB); !err.empty()) return err;
    if (k < t.size() && t[k].task == RciTask::Done)
      return k + 1 == t.size() ? std::string{} : "tasks after Done";
    if (auto err = blocks(RciTask::MultiplyB); !err.empty()) return err;
  }
}

Verdict protocol() {
  Verdict v;
  std::mt19937_64 rng(707);
  int traces = 0;
  for (int ne : {3, 8, 16}) {
    for (int blk : {0, 1, 3, 4}) {
      const int n = 30, m0 = 9;
      const auto as = random_hermitian<double>(n, rng);
      const auto ah = random_hermitian<cd>(n, rng);
      const auto bh = random_spd<cd>(n, rng);
      const auto ss = oracle_spectrum(as);
      const auto sh = oracle_spectrum(ah, &bh);
      const auto [los, his] = interval_around(ss, 10, 5);
      const auto [loh, hih] = interval_around(sh, 10, 5);
      Params fpm;
      fpm.slot(2) = ne;
      fpm.slot(4) = 100;
      const int eff = blk == 0 ? m0 : blk;
      {
        KernelOptions ko;
        ko.multiply_block = blk;
        std::vector<TaskRecord> t;
        const DensePencil<double> p('F', n, as.data(), n);
        const auto r = scripted_solve<double>(p, fpm, los, his, m0, ko, &t);
        v.require(r.info == 0, "symmetric info " + std::to_string(r.info));
        const auto err = check_trace(t, ne, false, true, m0, eff);
        v.require(err.empty(), "symmetric Ne=" + std::to_string(ne) + ": " + err);
        ++traces;
      }
      for (bool capable : {true, false}) {
        KernelOptions ko;
        ko.multiply_block = blk;
        ko.adjoint_capable = capable;
        std::vector<TaskRecord> t;
        const DensePencil<cd> p('F', n, ah.data(), n, bh.data(), n);
        const auto r = scripted_solve<cd>(p, fpm, loh, hih, m0, ko, &t);
        v.require(r.info == 0, "hermitian Ne=" + std::to_string(ne) + " blk=" + std::to_string(blk) + " capable=" + std::to_string(capable) + " info " + std::to_string(r.info));
        const auto err = check_trace(t, ne, true, capable, m0, eff);
        v.require(err.empty(), "hermitian Ne=" + std::to_string(ne) + ": " + err);
        if (capable)
          for (const auto& rec : t)
            v.require(rec.task != RciTask::FactorizeAdjoint, "task 20 sent to adjoint-capable caller");
        ++traces;
      }
    }
  }
  if (v.pass) v.detail = std::to_string(traces) + " traces conform";
  return v;
}

// ---- 8 ----------------------------------------------------------------------

Verdict error_codes() {
  Verdict v;
  Matrix<double> hello(2, 2);
  hello(0, 0) = hello(1, 1) = 2;
  hello(0, 1) = hello(1, 0) = -1;
  Matrix<double> diag10(10, 10);
  for (int i = 0; i < 10; ++i) diag10(i, i) = i + 1;

  const auto code = [&](const Matrix<double>& a, const Matrix<double>* b, double lo, double hi,
                        int m0, Params fpm, int n_override = -1) {
    const int n = n_override >= 0 ? n_override : a.rows();
    std::vector<double> e(std::max(m0, 1)), res(std::max(m0, 1)),
        x(static_cast<std::size_t>(a.rows()) * std::max(m0, 1));
    int m = 0, loop = 0, info = 0, mm0 = m0;
    double eps = 0;
    dense_driver<double>('F', n, a.data(), std::max(n, 1), b ? b->data() : nullptr,
                         std::max(n, 1), fpm, eps, loop, lo, hi, mm0, e.data(), x.data(), m,
                         res.data(), info);
    return info;
  };
  Params defaults;
  Params bad_ne = defaults;
  bad_ne.slot(2) = 7;
  Params no_loops = defaults;
  no_loops.slot(4) = 0;
  Params subspace = defaults;
  subspace.slot(14) = 1;
  Matrix<double> negative_b(2, 2);
  negative_b(0, 0) = negative_b(1, 1) = -1;

  const struct {
    int expect;
    int got;
  } rows[] = {
      {200, code(hello, nullptr, 5, -5, 2, defaults)},
      {201, code(hello, nullptr, -5, 5, 3, defaults)},
      {202, code(hello, nullptr, -5, 5, 2, defaults, 0)},
      {102, code(hello, nullptr, -5, 5, 2, bad_ne)},
      {1, code(hello, nullptr, 10, 20, 2, defaults)},
      {2, code(hello, nullptr, -5, 5, 2, no_loops)},
      {3, code(diag10, nullptr, 0.5, 5.5, 3, defaults)},
      {4, code(hello, nullptr, -5, 5, 2, subspace)},
      {0, code(hello, nullptr, -5, 5, 2, defaults)},
      {-3, code(hello, &negative_b, -5, 5, 2, defaults)},
  };
  std::string seen;
  for (const auto& r : rows) {
    v.require(r.got == r.expect,
              "expected " + std::to_string(r.expect) + ", got " + std::to_string(r.got));
    seen += std::to_string(r.got) + " ";
  }
  if (v.pass) v.detail = "codes " + seen;
  return v;
}

// ---- 9 ----------------------------------------------------------------------

Verdict warm_start() {
  Verdict v;
  const int n = 200, want = 10, m0 = 15;
  std::mt19937_64 rng(909);
  const auto a = random_hermitian<double>(n, rng);
  const auto [lo, hi] = interval_around(oracle_spectrum(a), n / 2 - 5, want);
  const auto first = dense_solve<double>(a, nullptr, lo, hi, m0);
  v.require(first.info == 0, "initial solve info " + std::to_string(first.info));

  // Symmetric entrywise relative perturbation of size 1e-3.
  std::uniform_real_distribution<double> u(-1, 1);
  Matrix<double> perturbed = a;
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) {
      perturbed(i, j) *= 1 + 1e-3 * u(rng);
      perturbed(j, i) = perturbed(i, j);
    }
  const auto cold = dense_solve<double>(perturbed, nullptr, lo, hi, m0);
  Params warm_fpm;
  warm_fpm.slot(5) = 1;
  const DensePencil<double> p('F', n, perturbed.data(), n);
  const auto warm = solve_pencil<double>(p, warm_fpm, lo, hi, m0, {}, &first.x);
  v.require(cold.info == 0 && warm.info == 0,
            "info cold " + std::to_string(cold.info) + " warm " + std::to_string(warm.info));
  v.require(cold.m == want && warm.m == want, "eigenvalue counts");
  if (!v.pass) return v;
  for (int i = 0; i < want; ++i)
    v.require(std::abs(cold.e[i] - warm.e[i]) <= 1e-10, "eigenvalue " + std::to_string(i));
  v.require(warm.loop <= cold.loop - 1, "warm " + std::to_string(warm.loop) + " loops, cold " +
                                            std::to_string(cold.loop));
  v.require(warm.loop <= 2, "warm start took " + std::to_string(warm.loop) + " loops");
  if (v.pass)
    v.detail = "cold " + std::to_string(cold.loop) + " loops, warm " + std::to_string(warm.loop);
  return v;
}

// ---- 10 ---------------------------------------------------------------------

template <typename F>
bool identical(const EigenResult<F>& a, const EigenResult<F>& b) {
  return a.info == b.info && a.m == b.m && a.m0 == b.m0 && a.loop == b.loop &&
         std::memcmp(&a.epsout, &b.epsout, sizeof a.epsout) == 0 && a.e == b.e && a.res == b.res &&
         a.x == b.x;
}

Verdict determinism() {
  Verdict v;
  std::mt19937_64 rng(1010);
  const auto as = random_band<double>(80, 4, rng);
  const auto bs = random_spd<double>(80, rng);
  const auto ah = random_hermitian<cd>(40, rng);
  const auto ss = oracle_spectrum(as, &bs);
  const auto sh = oracle_spectrum(ah);
  const auto [los, his] = interval_around(ss, 30, 6);
  const auto [loh, hih] = interval_around(sh, 10, 5);
  CsrMatrix<double> csr;
  csr.n = 80;
  csr.ia.push_back(1);
  for (int i = 0; i < 80; ++i) {
    for (int j = 0; j < 80; ++j)
      if (as(i, j) != 0) {
        csr.ja.push_back(j + 1);
        csr.values.push_back(as(i, j));
      }
    csr.ia.push_back(csr.nnz() + 1);
  }
  int runs = 0;
  for (std::uint64_t seed : {kDefaultSeed, std::uint64_t{42}}) {
    DriverOptions serial, parallel;
    serial.seed = parallel.seed = seed;
    parallel.contour_workers = 8;
    const auto d1 = dense_solve<double>(as, &bs, los, his, 10, {}, serial);
    const auto d2 = dense_solve<double>(as, &bs, los, his, 10, {}, serial);
    const auto d3 = dense_solve<double>(as, &bs, los, his, 10, {}, parallel);
    v.require(d1.info == 0, "dense info " + std::to_string(d1.info));
    v.require(identical(d1, d2), "dense repeat differs");
    v.require(identical(d1, d3), "dense parallel-contour 8 differs");
    const auto h1 = dense_solve<cd>(ah, nullptr, loh, hih, 8, {}, serial);
    const auto h2 = dense_solve<cd>(ah, nullptr, loh, hih, 8, {}, parallel);
    v.require(h1.info == 0, "hermitian info " + std::to_string(h1.info));
    v.require(identical(h1, h2), "hermitian parallel-contour 8 differs");
    const auto c1 = csr_solve(csr, los - 100, his, 80, {}, serial);
    const auto c2 = csr_solve(csr, los - 100, his, 80, {}, parallel);
    const auto c3 = csr_solve(csr, los - 100, his, 80, {}, serial);
    v.require(identical(c1, c2) && identical(c1, c3), "csr runs differ");
    runs += 8;
  }
  if (v.pass) v.detail = std::to_string(runs) + " runs bitwise identical";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget_s;
  };
  const Criterion criteria[] = {
      {1, "quadrature conformance", quadrature, 1},
      {2, "helloworld golden run", helloworld, 1},
      {3, "oracle equivalence", oracle_equivalence, 60},
      {4, "convergence rate", convergence_rate, 120},
      {5, "multiplicity capture", multiplicity, 60},
      {6, "backend agreement", backend_agreement, 60},
      {7, "protocol conformance", protocol, 60},
      {8, "error-code table", error_codes, 60},
      {9, "warm start", warm_start, 60},
      {10, "determinism", determinism, 120},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && secs >= c.budget_s) {
      v.pass = false;
      v.detail = "took " + fmt("%.2f", secs) + " s, budget " + fmt("%.0f", c.budget_s) + " s";
    }
    failed += !v.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
