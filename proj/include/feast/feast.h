/*
 * C interface of the contour-integration eigensolver.
 *
 * Matrices are column-major. Every solver entry point shares the trailing
 * argument list
 *
 *   fpm     int[64] parameter vector, initialised by feastinit()
 *   epsout  relative trace error of the last loop           (out)
 *   loop    refinement loops performed                      (out)
 *   emin, emax  search interval
 *   m0      subspace size                                   (in/out)
 *   e       m0 eigenvalues, the first m inside the interval (out)
 *   x       n x m0 eigenvectors (initial guess if fpm[4]=1) (in/out)
 *   m       eigenvalues found in the interval               (out)
 *   res     m0 relative residuals, -1 flags spurious pairs  (out)
 *   info    return code, see feast_info_message()           (out)
 *
 * fpm is indexed from zero here: fpm[i-1] is parameter i.
 */
#ifndef FEAST_FEAST_H
#define FEAST_FEAST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FEAST_API __declspec(dllexport)
#else
#define FEAST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct {
  float re, im;
} feast_complex8;

typedef struct {
  double re, im;
} feast_complex16;

enum { FEAST_FPM_SIZE = 64 };

enum {
  FEAST_RCI_INIT = -1,
  FEAST_RCI_DONE = 0,
  FEAST_RCI_FACTORIZE = 10,
  FEAST_RCI_SOLVE = 11,
  FEAST_RCI_FACTORIZE_ADJOINT = 20,
  FEAST_RCI_SOLVE_ADJOINT = 21,
  FEAST_RCI_MULTIPLY_A = 30,
  FEAST_RCI_MULTIPLY_B = 40
};

enum { FEAST_INFO_SUCCESS = 0, FEAST_INFO_WARNING = 1, FEAST_INFO_ERROR = 2 };

/* Status of the non-solver calls (options, file input). */
typedef enum {
  FEAST_OK = 0,
  FEAST_E_INVALID = 1, /* null handle or out-of-range argument */
  FEAST_E_IO = 2,      /* file cannot be read */
  FEAST_E_PARSE = 3,   /* malformed, truncated or out-of-range content */
  FEAST_E_FORMAT = 4,  /* content inconsistent with the requested storage */
  FEAST_E_NOMEM = 5,
  FEAST_E_BUFFER = 6   /* caller buffer too small */
} feast_status;

/* ---- parameters and return codes --------------------------------------- */

FEAST_API void feastinit(int* fpm);
/* 0, or 100+i for the smallest out-of-range parameter i. */
FEAST_API int feast_validate_params(const int* fpm);
/* 202, 201, 200 or 0 (checked in that order). */
FEAST_API int feast_check_problem(int n, int m0, double emin, double emax);
/* FEAST_INFO_SUCCESS, FEAST_INFO_WARNING or FEAST_INFO_ERROR. */
FEAST_API int feast_info_class(int info);
FEAST_API const char* feast_info_message(int info);

/* ---- solver options ------------------------------------------------------ */

typedef struct feast_options feast_options;

enum { FEAST_SOLVER_DIRECT = 0, FEAST_SOLVER_ITERATIVE = 1 };

FEAST_API feast_options* feast_options_create(void);
FEAST_API void feast_options_destroy(feast_options* opts);
FEAST_API feast_status feast_options_set_seed(feast_options* opts, uint64_t seed);
/* Threads used to factorize and solve all contour points at once (>= 1). */
FEAST_API feast_status feast_options_set_contour_workers(feast_options* opts, int workers);
/* Sparse drivers only. */
FEAST_API feast_status feast_options_set_solver(feast_options* opts, int kind);
FEAST_API feast_status feast_options_set_iterative_tolerance(feast_options* opts, double tol);
/* Columns per multiply request; 0 means the whole subspace. */
FEAST_API feast_status feast_options_set_multiply_block(feast_options* opts, int block);

/* ---- reverse communication ---------------------------------------------- */
/*
 * Start with *ijob = FEAST_RCI_INIT and call again after carrying out each
 * returned task, until FEAST_RCI_DONE:
 *
 *   FACTORIZE            factorize ze*B - A
 *   FACTORIZE_ADJOINT    factorize (ze*B - A)^H (only when the handle is not
 *                        adjoint capable)
 *   SOLVE                work2 <- (ze*B - A)^{-1} work2          (n x m0)
 *   SOLVE_ADJOINT        work2 <- (ze*B - A)^{-H} work2
 *   MULTIPLY_A / _B      work1(:, c) <- A x(:, c) (or B x(:, c)) for the
 *                        columns c = fpm[23] .. fpm[23]+fpm[24]-1 (1-based)
 */

typedef struct feast_rci feast_rci;

FEAST_API feast_rci* feast_rci_create(void);
FEAST_API void feast_rci_destroy(feast_rci* h);
FEAST_API feast_status feast_rci_set_seed(feast_rci* h, uint64_t seed);
FEAST_API feast_status feast_rci_set_adjoint_capable(feast_rci* h, int capable);
FEAST_API feast_status feast_rci_set_multiply_block(feast_rci* h, int block);

FEAST_API void sfeast_srci(feast_rci* h, int* ijob, int n, feast_complex8* ze, float* work1,
                           feast_complex8* work2, int* fpm, float* epsout, int* loop, float emin,
                           float emax, int* m0, float* e, float* x, int* m, float* res,
                           int* info);
FEAST_API void dfeast_srci(feast_rci* h, int* ijob, int n, feast_complex16* ze, double* work1,
                           feast_complex16* work2, int* fpm, double* epsout, int* loop,
                           double emin, double emax, int* m0, double* e, double* x, int* m,
                           double* res, int* info);
FEAST_API void cfeast_hrci(feast_rci* h, int* ijob, int n, feast_complex8* ze,
                           feast_complex8* work1, feast_complex8* work2, int* fpm, float* epsout,
                           int* loop, float emin, float emax, int* m0, float* e,
                           feast_complex8* x, int* m, float* res, int* info);
FEAST_API void zfeast_hrci(feast_rci* h, int* ijob, int n, feast_complex16* ze,
                           feast_complex16* work1, feast_complex16* work2, int* fpm,
                           double* epsout, int* loop, double emin, double emax, int* m0,
                           double* e, feast_complex16* x, int* m, double* res, int* info);

/* ---- predefined drivers ---------------------------------------------------
 * uplo is 'F', 'L' or 'U'. The _x variants take options first (NULL selects
 * the defaults).
 */

#define FEAST_TAIL(R, T)                                                                 \
  int *fpm, R *epsout, int *loop, R emin, R emax, int *m0, R *e, T *x, int *m, R *res, \
      int *info

#define FEAST_DECLARE_DENSE(p, fam, R, T)                                                    \
  FEAST_API void p##feast_##fam##ev(char uplo, int n, const T* a, int lda, FEAST_TAIL(R, T)); \
  FEAST_API void p##feast_##fam##gv(char uplo, int n, const T* a, int lda, const T* b,        \
                                    int ldb, FEAST_TAIL(R, T));                               \
  FEAST_API void p##feast_##fam##ev_x(const feast_options* opts, char uplo, int n,           \
                                      const T* a, int lda, FEAST_TAIL(R, T));                 \
  FEAST_API void p##feast_##fam##gv_x(const feast_options* opts, char uplo, int n,           \
                                      const T* a, int lda, const T* b, int ldb,               \
                                      FEAST_TAIL(R, T));

#define FEAST_DECLARE_BANDED(p, fam, R, T)                                                   \
  FEAST_API void p##feast_##fam##ev(char uplo, int n, int kla, const T* a, int lda,         \
                                    FEAST_TAIL(R, T));                                        \
  FEAST_API void p##feast_##fam##gv(char uplo, int n, int kla, const T* a, int lda, int klb, \
                                    const T* b, int ldb, FEAST_TAIL(R, T));                   \
  FEAST_API void p##feast_##fam##ev_x(const feast_options* opts, char uplo, int n, int kla,  \
                                      const T* a, int lda, FEAST_TAIL(R, T));                 \
  FEAST_API void p##feast_##fam##gv_x(const feast_options* opts, char uplo, int n, int kla,  \
                                      const T* a, int lda, int klb, const T* b, int ldb,      \
                                      FEAST_TAIL(R, T));

#define FEAST_DECLARE_CSR(p, fam, R, T)                                                       \
  FEAST_API void p##feast_##fam##ev(char uplo, int n, const T* a, const int* ia,             \
                                    const int* ja, FEAST_TAIL(R, T));                         \
  FEAST_API void p##feast_##fam##gv(char uplo, int n, const T* a, const int* ia,             \
                                    const int* ja, const T* b, const int* ib, const int* jb,  \
                                    FEAST_TAIL(R, T));                                        \
  FEAST_API void p##feast_##fam##ev_x(const feast_options* opts, char uplo, int n,           \
                                      const T* a, const int* ia, const int* ja,               \
                                      FEAST_TAIL(R, T));                                      \
  FEAST_API void p##feast_##fam##gv_x(const feast_options* opts, char uplo, int n,           \
                                      const T* a, const int* ia, const int* ja, const T* b,   \
                                      const int* ib, const int* jb, FEAST_TAIL(R, T));

FEAST_DECLARE_DENSE(s, sy, float, float)
FEAST_DECLARE_DENSE(d, sy, double, double)
FEAST_DECLARE_DENSE(c, he, float, feast_complex8)
FEAST_DECLARE_DENSE(z, he, double, feast_complex16)

FEAST_DECLARE_BANDED(s, sb, float, float)
FEAST_DECLARE_BANDED(d, sb, double, double)
FEAST_DECLARE_BANDED(c, hb, float, feast_complex8)
FEAST_DECLARE_BANDED(z, hb, double, feast_complex16)

FEAST_DECLARE_CSR(s, scsr, float, float)
FEAST_DECLARE_CSR(d, scsr, double, double)
FEAST_DECLARE_CSR(c, hcsr, float, feast_complex8)
FEAST_DECLARE_CSR(z, hcsr, double, feast_complex16)

#undef FEAST_DECLARE_DENSE
#undef FEAST_DECLARE_BANDED
#undef FEAST_DECLARE_CSR
#undef FEAST_TAIL

/* ---- file input ------------------------------------------------------------
 * Failing calls write a NUL-terminated message into err (when errlen > 0).
 */

typedef struct feast_coo feast_coo;

FEAST_API feast_status feast_coo_load(const char* path, int complex_values, feast_coo** out,
                                      char* err, size_t errlen);
FEAST_API feast_status feast_coo_parse(const char* text, int complex_values, feast_coo** out,
                                       char* err, size_t errlen);
FEAST_API void feast_coo_destroy(feast_coo* coo);
FEAST_API int feast_coo_size(const feast_coo* coo);
FEAST_API int feast_coo_nnz(const feast_coo* coo);
/* Entry k (0-based) as 1-based indices and a complex value. */
FEAST_API feast_status feast_coo_entry(const feast_coo* coo, int k, int* i, int* j, double* re,
                                       double* im);

/*
 * CSR conversion (1-based, sorted, duplicates summed). Call with ia, ja and
 * values all NULL to obtain the entry count in *nnz; then call again with
 * ia sized n+1 and ja/values sized *nnz.
 */
FEAST_API feast_status feast_coo_to_dcsr(const feast_coo* coo, char uplo, int* ia, int* ja,
                                         double* values, int* nnz, char* err, size_t errlen);
FEAST_API feast_status feast_coo_to_zcsr(const feast_coo* coo, char uplo, int* ia, int* ja,
                                         feast_complex16* values, int* nnz, char* err,
                                         size_t errlen);

typedef struct {
  char problem;   /* 's' standard, 'g' generalized */
  char precision; /* 's', 'd', 'c', 'z' */
  char uplo;      /* 'F', 'L', 'U' */
  double emin;
  double emax;
  int m0;
  int fpm[FEAST_FPM_SIZE];
} feast_config;

FEAST_API feast_status feast_config_load(const char* path, feast_config* out, char* err,
                                         size_t errlen);
FEAST_API feast_status feast_config_parse(const char* text, feast_config* out, char* err,
                                          size_t errlen);

#ifdef __cplusplus
}
#endif

#endif /* FEAST_FEAST_H */
