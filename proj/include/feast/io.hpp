#pragma once

// Coordinate-format matrix files and the driver's ".in" configuration.
//
// Coordinate files: a header "N N NNZ" followed by NNZ lines "i j value"
// (complex files: "i j re im"), indices 1-based. '!' starts a comment.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "feast/params.hpp"
#include "feast/sparse.hpp"

namespace feast {

class IoError : public std::runtime_error {
 public:
  enum class Kind { file, malformed, range, truncated, extra, format };

  IoError(Kind kind, int line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  Kind kind() const { return kind_; }
  /// 1-based line of the offending input, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

struct CooMatrix {
  int n = 0;
  bool complex_values = false;
  std::vector<int> rows;  // 1-based
  std::vector<int> cols;  // 1-based
  std::vector<std::complex<double>> values;

  int nnz() const { return static_cast<int>(rows.size()); }
  bool operator==(const CooMatrix&) const = default;
};

/// Triplets are returned verbatim, duplicates included.
CooMatrix parse_coordinate(std::string_view text, bool complex_values = false);
CooMatrix load_coordinate(const std::string& path, bool complex_values = false);
std::string serialize_coordinate(const CooMatrix& coo);

/// Sorted, duplicate-summed CSR. With uplo 'L'/'U' entries outside that
/// triangle are rejected (IoError::Kind::format). Real targets reject
/// entries with a non-zero imaginary part.
template <typename F>
CsrMatrix<F> coo_to_csr(const CooMatrix& coo, char uplo);

struct DriverConfig {
  char problem = 's';    // 's'tandard or 'g'eneralized
  char precision = 'd';  // s, d, c, z
  char uplo = 'F';
  double emin = 0;
  double emax = 0;
  int m0 = 0;
  Params fpm;

  bool generalized() const { return problem == 'g'; }
  bool complex_values() const { return precision == 'c' || precision == 'z'; }
  bool single_precision() const { return precision == 's' || precision == 'c'; }
};

/// Values are read in fixed order, one per line: problem, precision, uplo,
/// emin, emax, m0, then optional fpm slots 1, 2, the tolerance exponent
/// (slot 3 for d/z, slot 7 for s/c), 4 and 6. Range checks on emin/emax and
/// m0 are left to the solver.
DriverConfig parse_config(std::string_view text);
DriverConfig load_config(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace feast
