#include "feast/feast.h"

#include <complex>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "feast/banded.hpp"
#include "feast/dense.hpp"
#include "feast/io.hpp"
#include "feast/kernel.hpp"
#include "feast/sparse.hpp"

using feast::Params;

struct feast_options {
  feast::DriverOptions driver;
  feast::SparseSolverOptions solver;
};

struct feast_rci {
  feast::KernelOptions options;
  std::unique_ptr<feast::RciKernel<float>> s;
  std::unique_ptr<feast::RciKernel<double>> d;
  std::unique_ptr<feast::RciKernel<std::complex<float>>> c;
  std::unique_ptr<feast::RciKernel<std::complex<double>>> z;
};

struct feast_coo {
  feast::CooMatrix m;
};

namespace {

template <typename T>
struct Native {
  using type = T;
};
template <>
struct Native<feast_complex8> {
  using type = std::complex<float>;
};
template <>
struct Native<feast_complex16> {
  using type = std::complex<double>;
};

template <typename T>
auto* native(T* p) {
  using N = typename Native<std::remove_const_t<T>>::type;
  if constexpr (std::is_const_v<T>)
    return reinterpret_cast<const N*>(p);
  else
    return reinterpret_cast<N*>(p);
}

void write_error(char* err, std::size_t errlen, const std::string& msg) {
  if (!err || errlen == 0) return;
  const std::size_t k = std::min(errlen - 1, msg.size());
  std::memcpy(err, msg.data(), k);
  err[k] = '\0';
}

feast_status io_status(const feast::IoError& e) {
  switch (e.kind()) {
    case feast::IoError::Kind::file: return FEAST_E_IO;
    case feast::IoError::Kind::format: return FEAST_E_FORMAT;
    default: return FEAST_E_PARSE;
  }
}

/// Runs `body` with the fpm array wrapped as Params, copying it back after.
template <typename Body>
void with_params(int* fpm, int* info, Body&& body) {
  if (!fpm) {
    if (info) *info = feast::info::bad_argument(0);
    return;
  }
  Params p = Params::from_array(fpm);
  try {
    body(p);
  } catch (const std::bad_alloc&) {
    *info = feast::info::allocation;
  }
  p.to_array(fpm);
}

const feast::DriverOptions& driver_options(const feast_options* o) {
  static const feast::DriverOptions defaults;
  return o ? o->driver : defaults;
}

const feast::SparseSolverOptions& solver_options(const feast_options* o) {
  static const feast::SparseSolverOptions defaults;
  return o ? o->solver : defaults;
}

template <typename K>
K& kernel_for(std::unique_ptr<K>& slot, const feast::KernelOptions& options, int ijob) {
  if (!slot || ijob == FEAST_RCI_INIT) slot = std::make_unique<K>(options);
  return *slot;
}

template <typename F, typename R, typename T, typename C>
void rci_call(feast_rci* h, std::unique_ptr<feast::RciKernel<F>> feast_rci::*slot, int* ijob, int n, C* ze,
              T* work1, C* work2, int* fpm, R* epsout, int* loop, R emin, R emax, int* m0, R* e,
              T* x, int* m, R* res, int* info) {
  if (!h || !ijob || !ze || !epsout || !loop || !m0 || !m || !info) {
    if (info) *info = feast::info::allocation;
    if (ijob) *ijob = FEAST_RCI_DONE;
    return;
  }
  auto& k = kernel_for(h->*slot, h->options, *ijob);
  with_params(fpm, info, [&](Params& p) {
    auto task = static_cast<feast::RciTask>(*ijob);
    auto* z = native(ze);
    k.step(task, n, *z, native(work1), native(work2), p, *epsout, *loop, emin, emax, *m0, e,
           native(x), *m, res, *info);
    *ijob = static_cast<int>(task);
  });
}

template <typename F, typename R, typename T>
void dense_call(const feast_options* o, char uplo, int n, const T* a, int lda, const T* b,
                int ldb, int* fpm, R* epsout, int* loop, R emin, R emax, int* m0, R* e, T* x,
                int* m, R* res, int* info) {
  with_params(fpm, info, [&](Params& p) {
    feast::dense_driver<F>(uplo, n, native(a), lda, native(b), ldb, p, *epsout, *loop, emin,
                           emax, *m0, e, native(x), *m, res, *info, driver_options(o));
  });
}

template <typename F, typename R, typename T>
void banded_call(const feast_options* o, char uplo, int n, int kla, const T* a, int lda, int klb,
                 const T* b, int ldb, int* fpm, R* epsout, int* loop, R emin, R emax, int* m0,
                 R* e, T* x, int* m, R* res, int* info) {
  with_params(fpm, info, [&](Params& p) {
    feast::banded_driver<F>(uplo, n, kla, native(a), lda, klb, native(b), ldb, p, *epsout,
                            *loop, emin, emax, *m0, e, native(x), *m, res, *info,
                            driver_options(o));
  });
}

template <typename F, typename R, typename T>
void csr_call(const feast_options* o, char uplo, int n, const T* a, const int* ia, const int* ja,
              const T* b, const int* ib, const int* jb, int* fpm, R* epsout, int* loop, R emin,
              R emax, int* m0, R* e, T* x, int* m, R* res, int* info) {
  with_params(fpm, info, [&](Params& p) {
    feast::csr_driver<F>(uplo, n, native(a), ia, ja, native(b), ib, jb, p, *epsout, *loop, emin,
                         emax, *m0, e, native(x), *m, res, *info, driver_options(o),
                         solver_options(o));
  });
}

template <typename F, typename V>
feast_status coo_to_csr_call(const feast_coo* coo, char uplo, int* ia, int* ja, V* values,
                             int* nnz, char* err, std::size_t errlen) {
  if (!coo || !nnz) return FEAST_E_INVALID;
  if (uplo != 'F' && uplo != 'L' && uplo != 'U') {
    write_error(err, errlen, "invalid UPLO");
    return FEAST_E_INVALID;
  }
  try {
    const auto csr = feast::coo_to_csr<F>(coo->m, uplo);
    if (!ia && !ja && !values) {
      *nnz = csr.nnz();
      return FEAST_OK;
    }
    if (!ia || !ja || !values || *nnz < csr.nnz()) {
      *nnz = csr.nnz();
      write_error(err, errlen, "buffers too small for " + std::to_string(csr.nnz()) + " entries");
      return FEAST_E_BUFFER;
    }
    std::copy(csr.ia.begin(), csr.ia.end(), ia);
    std::copy(csr.ja.begin(), csr.ja.end(), ja);
    std::copy(csr.values.begin(), csr.values.end(), native(values));
    *nnz = csr.nnz();
    return FEAST_OK;
  } catch (const feast::IoError& e) {
    write_error(err, errlen, e.what());
    return io_status(e);
  } catch (const std::bad_alloc&) {
    return FEAST_E_NOMEM;
  }
}

void export_config(const feast::DriverConfig& c, feast_config* out) {
  out->problem = c.problem;
  out->precision = c.precision;
  out->uplo = c.uplo;
  out->emin = c.emin;
  out->emax = c.emax;
  out->m0 = c.m0;
  c.fpm.to_array(out->fpm);
}

template <typename Parse>
feast_status config_call(Parse&& parse, feast_config* out, char* err, std::size_t errlen) {
  if (!out) return FEAST_E_INVALID;
  try {
    export_config(parse(), out);
    return FEAST_OK;
  } catch (const feast::IoError& e) {
    write_error(err, errlen, e.what());
    return io_status(e);
  } catch (const std::bad_alloc&) {
    return FEAST_E_NOMEM;
  }
}

template <typename Parse>
feast_status coo_call(Parse&& parse, feast_coo** out, char* err, std::size_t errlen) {
  if (!out) return FEAST_E_INVALID;
  *out = nullptr;
  try {
    auto h = std::make_unique<feast_coo>();
    h->m = parse();
    *out = h.release();
    return FEAST_OK;
  } catch (const feast::IoError& e) {
    write_error(err, errlen, e.what());
    return io_status(e);
  } catch (const std::bad_alloc&) {
    return FEAST_E_NOMEM;
  }
}

}  // namespace

extern "C" {

void feastinit(int* fpm) {
  if (fpm) feast::feastinit().to_array(fpm);
}

int feast_validate_params(const int* fpm) {
  if (!fpm) return feast::info::bad_argument(0);
  return feast::validate_params(Params::from_array(fpm)).value;
}

int feast_check_problem(int n, int m0, double emin, double emax) {
  return feast::check_problem(n, m0, emin, emax).value;
}

int feast_info_class(int info) {
  switch (feast::classify_info(info)) {
    case feast::InfoClass::success: return FEAST_INFO_SUCCESS;
    case feast::InfoClass::warning: return FEAST_INFO_WARNING;
    case feast::InfoClass::error: break;
  }
  return FEAST_INFO_ERROR;
}

const char* feast_info_message(int info) {
  // Every message is a string literal, so the view is NUL-terminated.
  return feast::info_message(info).data();
}

feast_options* feast_options_create(void) { return new (std::nothrow) feast_options(); }

void feast_options_destroy(feast_options* opts) { delete opts; }

feast_status feast_options_set_seed(feast_options* opts, uint64_t seed) {
  if (!opts) return FEAST_E_INVALID;
  opts->driver.seed = seed;
  return FEAST_OK;
}

feast_status feast_options_set_contour_workers(feast_options* opts, int workers) {
  if (!opts || workers < 1) return FEAST_E_INVALID;
  opts->driver.contour_workers = workers;
  return FEAST_OK;
}

feast_status feast_options_set_solver(feast_options* opts, int kind) {
  if (!opts) return FEAST_E_INVALID;
  if (kind == FEAST_SOLVER_DIRECT)
    opts->solver.kind = feast::SparseSolverKind::direct;
  else if (kind == FEAST_SOLVER_ITERATIVE)
    opts->solver.kind = feast::SparseSolverKind::iterative;
  else
    return FEAST_E_INVALID;
  return FEAST_OK;
}

feast_status feast_options_set_iterative_tolerance(feast_options* opts, double tol) {
  if (!opts || !(tol > 0)) return FEAST_E_INVALID;
  opts->solver.iterative_tolerance = tol;
  return FEAST_OK;
}

feast_status feast_options_set_multiply_block(feast_options* opts, int block) {
  if (!opts || block < 0) return FEAST_E_INVALID;
  opts->driver.multiply_block = block;
  return FEAST_OK;
}

feast_rci* feast_rci_create(void) { return new (std::nothrow) feast_rci(); }

void feast_rci_destroy(feast_rci* h) { delete h; }

feast_status feast_rci_set_seed(feast_rci* h, uint64_t seed) {
  if (!h) return FEAST_E_INVALID;
  h->options.seed = seed;
  return FEAST_OK;
}

feast_status feast_rci_set_adjoint_capable(feast_rci* h, int capable) {
  if (!h) return FEAST_E_INVALID;
  h->options.adjoint_capable = capable != 0;
  return FEAST_OK;
}

feast_status feast_rci_set_multiply_block(feast_rci* h, int block) {
  if (!h || block < 0) return FEAST_E_INVALID;
  h->options.multiply_block = block;
  return FEAST_OK;
}

void sfeast_srci(feast_rci* h, int* ijob, int n, feast_complex8* ze, float* work1,
                 feast_complex8* work2, int* fpm, float* epsout, int* loop, float emin,
                 float emax, int* m0, float* e, float* x, int* m, float* res, int* info) {
  rci_call<float>(h, &feast_rci::s,
                  ijob, n, ze, work1, work2, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info);
}

void dfeast_srci(feast_rci* h, int* ijob, int n, feast_complex16* ze, double* work1,
                 feast_complex16* work2, int* fpm, double* epsout, int* loop, double emin,
                 double emax, int* m0, double* e, double* x, int* m, double* res, int* info) {
  rci_call<double>(h, &feast_rci::d,
                   ijob, n, ze, work1, work2, fpm, epsout, loop, emin, emax, m0, e, x, m, res,
                   info);
}

void cfeast_hrci(feast_rci* h, int* ijob, int n, feast_complex8* ze, feast_complex8* work1,
                 feast_complex8* work2, int* fpm, float* epsout, int* loop, float emin,
                 float emax, int* m0, float* e, feast_complex8* x, int* m, float* res,
                 int* info) {
  rci_call<std::complex<float>>(
      h, &feast_rci::c,
      ijob, n, ze, work1, work2, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info);
}

void zfeast_hrci(feast_rci* h, int* ijob, int n, feast_complex16* ze, feast_complex16* work1,
                 feast_complex16* work2, int* fpm, double* epsout, int* loop, double emin,
                 double emax, int* m0, double* e, feast_complex16* x, int* m, double* res,
                 int* info) {
  rci_call<std::complex<double>>(
      h, &feast_rci::z,
      ijob, n, ze, work1, work2, fpm, epsout, loop, emin, emax, m0, e, x, m, res, info);
}

#define FEAST_TAIL_ARGS fpm, epsout, loop, emin, emax, m0, e, x, m, res, info
#define FEAST_TAIL(R, T)                                                                 \
  int *fpm, R *epsout, int *loop, R emin, R emax, int *m0, R *e, T *x, int *m, R *res, \
      int *info

#define FEAST_DEFINE_DENSE(p, fam, F, R, T)                                                   \
  void p##feast_##fam##ev(char uplo, int n, const T* a, int lda, FEAST_TAIL(R, T)) {          \
    dense_call<F, R, T>(nullptr, uplo, n, a, lda, static_cast<const T*>(nullptr), 0,         \
                        FEAST_TAIL_ARGS);                                                     \
  }                                                                                           \
  void p##feast_##fam##gv(char uplo, int n, const T* a, int lda, const T* b, int ldb,         \
                          FEAST_TAIL(R, T)) {                                                 \
    dense_call<F, R, T>(nullptr, uplo, n, a, lda, b, ldb, FEAST_TAIL_ARGS);                   \
  }                                                                                           \
  void p##feast_##fam##ev_x(const feast_options* o, char uplo, int n, const T* a, int lda,   \
                            FEAST_TAIL(R, T)) {                                               \
    dense_call<F, R, T>(o, uplo, n, a, lda, static_cast<const T*>(nullptr), 0,               \
                        FEAST_TAIL_ARGS);                                                     \
  }                                                                                           \
  void p##feast_##fam##gv_x(const feast_options* o, char uplo, int n, const T* a, int lda,   \
                            const T* b, int ldb, FEAST_TAIL(R, T)) {                          \
    dense_call<F, R, T>(o, uplo, n, a, lda, b, ldb, FEAST_TAIL_ARGS);                         \
  }

#define FEAST_DEFINE_BANDED(p, fam, F, R, T)                                                  \
  void p##feast_##fam##ev(char uplo, int n, int kla, const T* a, int lda, FEAST_TAIL(R, T)) { \
    banded_call<F, R, T>(nullptr, uplo, n, kla, a, lda, 0, static_cast<const T*>(nullptr),   \
                         0, FEAST_TAIL_ARGS);                                                 \
  }                                                                                           \
  void p##feast_##fam##gv(char uplo, int n, int kla, const T* a, int lda, int klb,           \
                          const T* b, int ldb, FEAST_TAIL(R, T)) {                            \
    banded_call<F, R, T>(nullptr, uplo, n, kla, a, lda, klb, b, ldb, FEAST_TAIL_ARGS);        \
  }                                                                                           \
  void p##feast_##fam##ev_x(const feast_options* o, char uplo, int n, int kla, const T* a,   \
                            int lda, FEAST_TAIL(R, T)) {                                      \
    banded_call<F, R, T>(o, uplo, n, kla, a, lda, 0, static_cast<const T*>(nullptr), 0,      \
                         FEAST_TAIL_ARGS);                                                    \
  }                                                                                           \
  void p##feast_##fam##gv_x(const feast_options* o, char uplo, int n, int kla, const T* a,   \
                            int lda, int klb, const T* b, int ldb, FEAST_TAIL(R, T)) {        \
    banded_call<F, R, T>(o, uplo, n, kla, a, lda, klb, b, ldb, FEAST_TAIL_ARGS);              \
  }

#define FEAST_DEFINE_CSR(p, fam, F, R, T)                                                     \
  void p##feast_##fam##ev(char uplo, int n, const T* a, const int* ia, const int* ja,        \
                          FEAST_TAIL(R, T)) {                                                 \
    csr_call<F, R, T>(nullptr, uplo, n, a, ia, ja, static_cast<const T*>(nullptr), nullptr,  \
                      nullptr, FEAST_TAIL_ARGS);                                              \
  }                                                                                           \
  void p##feast_##fam##gv(char uplo, int n, const T* a, const int* ia, const int* ja,        \
                          const T* b, const int* ib, const int* jb, FEAST_TAIL(R, T)) {       \
    csr_call<F, R, T>(nullptr, uplo, n, a, ia, ja, b, ib, jb, FEAST_TAIL_ARGS);               \
  }                                                                                           \
  void p##feast_##fam##ev_x(const feast_options* o, char uplo, int n, const T* a,            \
                            const int* ia, const int* ja, FEAST_TAIL(R, T)) {                 \
    csr_call<F, R, T>(o, uplo, n, a, ia, ja, static_cast<const T*>(nullptr), nullptr,        \
                      nullptr, FEAST_TAIL_ARGS);                                              \
  }                                                                                           \
  void p##feast_##fam##gv_x(const feast_options* o, char uplo, int n, const T* a,            \
                            const int* ia, const int* ja, const T* b, const int* ib,          \
                            const int* jb, FEAST_TAIL(R, T)) {                                \
    csr_call<F, R, T>(o, uplo, n, a, ia, ja, b, ib, jb, FEAST_TAIL_ARGS);                     \
  }

FEAST_DEFINE_DENSE(s, sy, float, float, float)
FEAST_DEFINE_DENSE(d, sy, double, double, double)
FEAST_DEFINE_DENSE(c, he, std::complex<float>, float, feast_complex8)
FEAST_DEFINE_DENSE(z, he, std::complex<double>, double, feast_complex16)

FEAST_DEFINE_BANDED(s, sb, float, float, float)
FEAST_DEFINE_BANDED(d, sb, double, double, double)
FEAST_DEFINE_BANDED(c, hb, std::complex<float>, float, feast_complex8)
FEAST_DEFINE_BANDED(z, hb, std::complex<double>, double, feast_complex16)

FEAST_DEFINE_CSR(s, scsr, float, float, float)
FEAST_DEFINE_CSR(d, scsr, double, double, double)
FEAST_DEFINE_CSR(c, hcsr, std::complex<float>, float, feast_complex8)
FEAST_DEFINE_CSR(z, hcsr, std::complex<double>, double, feast_complex16)

feast_status feast_coo_load(const char* path, int complex_values, feast_coo** out, char* err,
                            size_t errlen) {
  if (!path) return FEAST_E_INVALID;
  return coo_call([&] { return feast::load_coordinate(path, complex_values != 0); }, out, err,
                  errlen);
}

feast_status feast_coo_parse(const char* text, int complex_values, feast_coo** out, char* err,
                             size_t errlen) {
  if (!text) return FEAST_E_INVALID;
  return coo_call([&] { return feast::parse_coordinate(text, complex_values != 0); }, out, err,
                  errlen);
}

void feast_coo_destroy(feast_coo* coo) { delete coo; }

int feast_coo_size(const feast_coo* coo) { return coo ? coo->m.n : 0; }

int feast_coo_nnz(const feast_coo* coo) { return coo ? coo->m.nnz() : 0; }

feast_status feast_coo_entry(const feast_coo* coo, int k, int* i, int* j, double* re,
                             double* im) {
  if (!coo || k < 0 || k >= coo->m.nnz()) return FEAST_E_INVALID;
  if (i) *i = coo->m.rows[k];
  if (j) *j = coo->m.cols[k];
  if (re) *re = coo->m.values[k].real();
  if (im) *im = coo->m.values[k].imag();
  return FEAST_OK;
}

feast_status feast_coo_to_dcsr(const feast_coo* coo, char uplo, int* ia, int* ja,
                               double* values, int* nnz, char* err, size_t errlen) {
  return coo_to_csr_call<double>(coo, uplo, ia, ja, values, nnz, err, errlen);
}

feast_status feast_coo_to_zcsr(const feast_coo* coo, char uplo, int* ia, int* ja,
                               feast_complex16* values, int* nnz, char* err, size_t errlen) {
  return coo_to_csr_call<std::complex<double>>(coo, uplo, ia, ja, values, nnz, err, errlen);
}

feast_status feast_config_load(const char* path, feast_config* out, char* err, size_t errlen) {
  if (!path) return FEAST_E_INVALID;
  return config_call([&] { return feast::load_config(path); }, out, err, errlen);
}

feast_status feast_config_parse(const char* text, feast_config* out, char* err, size_t errlen) {
  if (!text) return FEAST_E_INVALID;
  return config_call([&] { return feast::parse_config(text); }, out, err, errlen);
}

}  // extern "C"
