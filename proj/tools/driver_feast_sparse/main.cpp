// Batch driver: loads <prefix>.in, <prefix>.A and, for generalized problems,
// <prefix>.B, then runs the matching solver and prints a summary.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>

#include "feast/feast.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInput = 2;

struct Flags {
  std::string prefix;
  uint64_t seed = 0;
  bool seed_given = false;
  int workers = 1;
  std::string solver = "direct";
  double iter_tol = 1e-3;
  std::string format = "sparse";
};

/// Input failure: reported on stderr, exit code 2.
struct InputError {
  std::string message;
};

struct Csr {
  int n = 0;
  std::vector<int> ia, ja;
  std::vector<double> re, im;
};

Csr load_matrix(const std::string& path, bool complex_values, char uplo) {
  char err[512] = "";
  feast_coo* coo = nullptr;
  if (feast_coo_load(path.c_str(), complex_values, &coo, err, sizeof err) != FEAST_OK)
    throw InputError{err[0] ? err : "cannot read '" + path + "'"};
  Csr out;
  out.n = feast_coo_size(coo);
  int nnz = 0;
  feast_status st = complex_values
                        ? feast_coo_to_zcsr(coo, uplo, nullptr, nullptr, nullptr, &nnz, err, sizeof err)
                        : feast_coo_to_dcsr(coo, uplo, nullptr, nullptr, nullptr, &nnz, err, sizeof err);
  if (st == FEAST_OK) {
    out.ia.resize(static_cast<std::size_t>(out.n) + 1);
    out.ja.resize(static_cast<std::size_t>(nnz));
    out.re.resize(static_cast<std::size_t>(nnz));
    out.im.resize(static_cast<std::size_t>(nnz));
    if (complex_values) {
      std::vector<feast_complex16> v(static_cast<std::size_t>(nnz));
      st = feast_coo_to_zcsr(coo, uplo, out.ia.data(), out.ja.data(), v.data(), &nnz, err, sizeof err);
      for (int k = 0; k < nnz; ++k) {
        out.re[k] = v[k].re;
        out.im[k] = v[k].im;
      }
    } else {
      st = feast_coo_to_dcsr(coo, uplo, out.ia.data(), out.ja.data(), out.re.data(), &nnz, err,
                             sizeof err);
    }
  }
  feast_coo_destroy(coo);
  if (st != FEAST_OK) throw InputError{path + ": " + err};
  return out;
}

template <typename T>
constexpr bool kComplex = std::is_same_v<T, feast_complex8> || std::is_same_v<T, feast_complex16>;

template <typename T>
using RealOf = std::conditional_t<std::is_same_v<T, feast_complex8>, float,
                                  std::conditional_t<std::is_same_v<T, feast_complex16>, double, T>>;

template <typename T>
T make_value(double re, double im) {
  if constexpr (kComplex<T>) {
    using R = RealOf<T>;
    return T{static_cast<R>(re), static_cast<R>(im)};
  } else {
    (void)im;
    return static_cast<T>(re);
  }
}

template <typename T>
std::vector<T> csr_values(const Csr& m) {
  std::vector<T> v(m.re.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = make_value<T>(m.re[k], m.im[k]);
  return v;
}

template <typename T>
std::vector<T> to_dense(const Csr& m) {
  const auto n = static_cast<std::size_t>(m.n);
  std::vector<T> d(n * n, make_value<T>(0, 0));
  for (int i = 0; i < m.n; ++i)
    for (int k = m.ia[i] - 1; k < m.ia[i + 1] - 1; ++k)
      d[static_cast<std::size_t>(m.ja[k] - 1) * n + static_cast<std::size_t>(i)] =
          make_value<T>(m.re[k], m.im[k]);
  return d;
}

int bandwidth(const Csr& m) {
  int kl = 0;
  for (int i = 0; i < m.n; ++i)
    for (int k = m.ia[i] - 1; k < m.ia[i + 1] - 1; ++k) kl = std::max(kl, std::abs(i + 1 - m.ja[k]));
  return kl;
}

/// Band storage with leading dimension 2kl+1 ('F') or kl+1 ('L'/'U').
template <typename T>
std::vector<T> to_band(const Csr& m, char uplo, int kl, int& lda) {
  lda = uplo == 'F' ? 2 * kl + 1 : kl + 1;
  std::vector<T> b(static_cast<std::size_t>(lda) * static_cast<std::size_t>(m.n), make_value<T>(0, 0));
  for (int i = 0; i < m.n; ++i)
    for (int k = m.ia[i] - 1; k < m.ia[i + 1] - 1; ++k) {
      const int j = m.ja[k] - 1;
      const int row = uplo == 'L' ? i - j : kl + i - j;
      b[static_cast<std::size_t>(j) * static_cast<std::size_t>(lda) + static_cast<std::size_t>(row)] =
          make_value<T>(m.re[k], m.im[k]);
    }
  return b;
}

struct Outcome {
  int info = 0, m = 0, m0 = 0, loop = 0;
  double epsout = 0;
  std::vector<double> e, res;
};

template <typename T>
struct Api;

#define FEAST_BIND_API(T, R, p, dfam, bfam, cfam)                                               \
  template <>                                                                                   \
  struct Api<T> {                                                                               \
    static constexpr auto dense_ev = p##feast_##dfam##ev_x;                                     \
    static constexpr auto dense_gv = p##feast_##dfam##gv_x;                                     \
    static constexpr auto band_ev = p##feast_##bfam##ev_x;                                      \
    static constexpr auto band_gv = p##feast_##bfam##gv_x;                                      \
    static constexpr auto csr_ev = p##feast_##cfam##ev_x;                                       \
    static constexpr auto csr_gv = p##feast_##cfam##gv_x;                                       \
  };

FEAST_BIND_API(float, float, s, sy, sb, scsr)
FEAST_BIND_API(double, double, d, sy, sb, scsr)
FEAST_BIND_API(feast_complex8, float, c, he, hb, hcsr)
FEAST_BIND_API(feast_complex16, double, z, he, hb, hcsr)

template <typename T>
Outcome run(const feast_config& cfg, const Csr& a, const Csr* b, const std::string& format,
            const feast_options* opts) {
  using R = RealOf<T>;
  using A = Api<T>;
  const int n = a.n;
  int fpm[FEAST_FPM_SIZE];
  std::copy(cfg.fpm, cfg.fpm + FEAST_FPM_SIZE, fpm);
  const R emin = static_cast<R>(cfg.emin), emax = static_cast<R>(cfg.emax);
  int m0 = cfg.m0;
  const auto cols = static_cast<std::size_t>(std::max(m0, 0));
  std::vector<R> e(cols), res(cols);
  std::vector<T> x(static_cast<std::size_t>(n) * cols);
  R epsout = 0;
  int loop = 0, m = 0, info = 0;
  const char uplo = cfg.uplo;

  if (format == "dense") {
    const auto ad = to_dense<T>(a);
    if (b) {
      const auto bd = to_dense<T>(*b);
      A::dense_gv(opts, uplo, n, ad.data(), n, bd.data(), n, fpm, &epsout, &loop, emin, emax, &m0,
                  e.data(), x.data(), &m, res.data(), &info);
    } else {
      A::dense_ev(opts, uplo, n, ad.data(), n, fpm, &epsout, &loop, emin, emax, &m0, e.data(),
                  x.data(), &m, res.data(), &info);
    }
  } else if (format == "banded") {
    const int kla = bandwidth(a);
    int lda = 0;
    const auto ab = to_band<T>(a, uplo, kla, lda);
    if (b) {
      const int klb = bandwidth(*b);
      int ldb = 0;
      const auto bb = to_band<T>(*b, uplo, klb, ldb);
      A::band_gv(opts, uplo, n, kla, ab.data(), lda, klb, bb.data(), ldb, fpm, &epsout, &loop,
                 emin, emax, &m0, e.data(), x.data(), &m, res.data(), &info);
    } else {
      A::band_ev(opts, uplo, n, kla, ab.data(), lda, fpm, &epsout, &loop, emin, emax, &m0,
                 e.data(), x.data(), &m, res.data(), &info);
    }
  } else {
    const auto av = csr_values<T>(a);
    if (b) {
      const auto bv = csr_values<T>(*b);
      A::csr_gv(opts, uplo, n, av.data(), a.ia.data(), a.ja.data(), bv.data(), b->ia.data(),
                b->ja.data(), fpm, &epsout, &loop, emin, emax, &m0, e.data(), x.data(), &m,
                res.data(), &info);
    } else {
      A::csr_ev(opts, uplo, n, av.data(), a.ia.data(), a.ja.data(), fpm, &epsout, &loop, emin,
                emax, &m0, e.data(), x.data(), &m, res.data(), &info);
    }
  }

  Outcome out;
  out.info = info;
  out.m = m;
  out.m0 = m0;
  out.loop = loop;
  out.epsout = static_cast<double>(epsout);
  out.e.assign(e.begin(), e.end());
  out.res.assign(res.begin(), res.end());
  return out;
}

void print_summary(const feast_config& cfg, const Outcome& r, double seconds) {
  char buf[256];
  std::cout << "==================== summary ====================\n";
  std::snprintf(buf, sizeof buf, "# info          %d (%s)\n", r.info, feast_info_message(r.info));
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "# interval      [%.15e, %.15e]\n", cfg.emin, cfg.emax);
  std::cout << buf;
  std::cout << "# mode found/subspace " << r.m << " " << r.m0 << "\n";
  std::cout << "# loops         " << r.loop << "\n";
  double trace = 0;
  for (int i = 0; i < r.m; ++i) trace += r.e[i];
  std::snprintf(buf, sizeof buf, "# trace         %.15e\n", trace);
  std::cout << buf;
  std::snprintf(buf, sizeof buf, "# epsout        %.15e\n", r.epsout);
  std::cout << buf;
  std::cout << "# eigenvalues   index  value  residual\n";
  for (int i = 0; i < r.m; ++i) {
    std::snprintf(buf, sizeof buf, "%6d  %.15e  %.6e\n", i + 1, r.e[i], r.res[i]);
    std::cout << buf;
  }
  std::snprintf(buf, sizeof buf, "# time (s)      %.3f\n", seconds);
  std::cout << buf;
}

int run_driver(const Flags& flags) {
  char err[512] = "";
  const std::string in_path = flags.prefix + ".in";
  feast_config cfg;
  if (feast_config_load(in_path.c_str(), &cfg, err, sizeof err) != FEAST_OK)
    throw InputError{err};

  const bool complex_values = cfg.precision == 'c' || cfg.precision == 'z';
  const Csr a = load_matrix(flags.prefix + ".A", complex_values, cfg.uplo);
  Csr b;
  const bool generalized = cfg.problem == 'g';
  if (generalized) {
    b = load_matrix(flags.prefix + ".B", complex_values, cfg.uplo);
    if (b.n != a.n)
      throw InputError{flags.prefix + ".B: size " + std::to_string(b.n) + " differs from " +
                       flags.prefix + ".A size " + std::to_string(a.n)};
  }

  feast_options* opts = feast_options_create();
  if (!opts) throw InputError{"out of memory"};
  if (flags.seed_given) feast_options_set_seed(opts, flags.seed);
  feast_options_set_contour_workers(opts, flags.workers);
  feast_options_set_solver(opts, flags.solver == "iterative" ? FEAST_SOLVER_ITERATIVE
                                                             : FEAST_SOLVER_DIRECT);
  feast_options_set_iterative_tolerance(opts, flags.iter_tol);

  const auto start = std::chrono::steady_clock::now();
  Outcome r;
  const Csr* bp = generalized ? &b : nullptr;
  switch (cfg.precision) {
    case 's': r = run<float>(cfg, a, bp, flags.format, opts); break;
    case 'd': r = run<double>(cfg, a, bp, flags.format, opts); break;
    case 'c': r = run<feast_complex8>(cfg, a, bp, flags.format, opts); break;
    default: r = run<feast_complex16>(cfg, a, bp, flags.format, opts); break;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  feast_options_destroy(opts);

  print_summary(cfg, r, seconds);
  if (feast_info_class(r.info) == FEAST_INFO_ERROR) {
    std::cerr << "driver_feast_sparse: info=" << r.info << ": " << feast_info_message(r.info)
              << "\n";
    return kExitError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contour-integration eigensolver driver for coordinate-format matrix files"};
  Flags flags;
  app.add_option("prefix", flags.prefix, "Path prefix of <prefix>.in, <prefix>.A and <prefix>.B")
      ->required();
  app.add_option("--seed", flags.seed, "Seed of the initial random subspace");
  app.add_option("--parallel-contour", flags.workers, "Workers factorizing contour points")
      ->check(CLI::PositiveNumber);
  app.add_option("--solver", flags.solver, "Inner linear solver")
      ->check(CLI::IsMember({"direct", "iterative"}));
  app.add_option("--iter-tol", flags.iter_tol, "Relative residual of the iterative solver")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", flags.format, "Storage backend")
      ->check(CLI::IsMember({"dense", "banded", "sparse"}));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitInput;
  }
  flags.seed_given = app.count("--seed") > 0;

  try {
    return run_driver(flags);
  } catch (const InputError& e) {
    std::cerr << "driver_feast_sparse: " << e.message << "\n";
    return kExitInput;
  }
}
