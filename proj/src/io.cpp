#include "feast/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace feast {

namespace {

std::string_view strip_comment(std::string_view line) {
  const auto bang = line.find('!');
  if (bang != std::string_view::npos) line = line.substr(0, bang);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
  return line;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

bool parse_int(std::string_view tok, int& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return r.ec == std::errc() && r.ptr == tok.data() + tok.size();
}

/// Accepts Fortran-style 'd' exponents (1.0d0).
bool parse_real(std::string_view tok, double& out) {
  std::string s(tok);
  for (char& c : s)
    if (c == 'd' || c == 'D') c = 'e';
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  const auto r = std::from_chars(first, s.data() + s.size(), out);
  return r.ec == std::errc() && r.ptr == s.data() + s.size();
}

/// Non-empty lines after comment removal, with their 1-based numbers.
std::vector<std::pair<int, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<int, std::string_view>> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    std::string_view line = strip_comment(text.substr(pos, end - pos));
    if (!line.empty()) out.emplace_back(number, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

[[noreturn]] void fail(IoError::Kind kind, int line, const std::string& msg) {
  throw IoError(kind, line, line > 0 ? "line " + std::to_string(line) + ": " + msg : msg);
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(IoError::Kind::file, 0, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CooMatrix parse_coordinate(std::string_view text, bool complex_values) {
  const auto lines = content_lines(text);
  if (lines.empty()) fail(IoError::Kind::truncated, 0, "missing header 'N N NNZ'");

  CooMatrix coo;
  coo.complex_values = complex_values;
  int nnz = 0;
  {
    const auto [ln, line] = lines.front();
    const auto tok = split(line);
    int n2 = 0;
    if (tok.size() != 3 || !parse_int(tok[0], coo.n) || !parse_int(tok[1], n2) ||
        !parse_int(tok[2], nnz))
      fail(IoError::Kind::malformed, ln, "expected header 'N N NNZ'");
    if (coo.n != n2) fail(IoError::Kind::malformed, ln, "matrix must be square");
    if (coo.n <= 0 || nnz < 0) fail(IoError::Kind::range, ln, "invalid size in header");
  }

  const std::size_t fields = complex_values ? 4 : 3;
  coo.rows.reserve(static_cast<std::size_t>(nnz));
  coo.cols.reserve(static_cast<std::size_t>(nnz));
  coo.values.reserve(static_cast<std::size_t>(nnz));
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [ln, line] = lines[k];
    if (coo.nnz() == nnz)
      fail(IoError::Kind::extra, ln, "more entries than the " + std::to_string(nnz) + " announced");
    const auto tok = split(line);
    int i = 0, j = 0;
    double re = 0, im = 0;
    if (tok.size() != fields || !parse_int(tok[0], i) || !parse_int(tok[1], j) ||
        !parse_real(tok[2], re) || (complex_values && !parse_real(tok[3], im)))
      fail(IoError::Kind::malformed, ln,
           complex_values ? "expected 'i j re im'" : "expected 'i j value'");
    if (i < 1 || i > coo.n || j < 1 || j > coo.n)
      fail(IoError::Kind::range, ln, "index out of range [1, " + std::to_string(coo.n) + "]");
    coo.rows.push_back(i);
    coo.cols.push_back(j);
    coo.values.emplace_back(re, im);
  }
  if (coo.nnz() < nnz)
    fail(IoError::Kind::truncated, 0,
         "expected " + std::to_string(nnz) + " entries, found " + std::to_string(coo.nnz()));
  return coo;
}

CooMatrix load_coordinate(const std::string& path, bool complex_values) {
  const std::string text = read_file(path);
  try {
    return parse_coordinate(text, complex_values);
  } catch (const IoError& e) {
    throw IoError(e.kind(), e.line(), path + ": " + e.what());
  }
}

std::string serialize_coordinate(const CooMatrix& coo) {
  std::string out = std::to_string(coo.n) + " " + std::to_string(coo.n) + " " +
                    std::to_string(coo.nnz()) + "\n";
  char buf[128];
  for (int k = 0; k < coo.nnz(); ++k) {
    if (coo.complex_values)
      std::snprintf(buf, sizeof buf, "%d %d %.17g %.17g\n", coo.rows[k], coo.cols[k],
                    coo.values[k].real(), coo.values[k].imag());
    else
      std::snprintf(buf, sizeof buf, "%d %d %.17g\n", coo.rows[k], coo.cols[k],
                    coo.values[k].real());
    out += buf;
  }
  return out;
}

template <typename F>
CsrMatrix<F> coo_to_csr(const CooMatrix& coo, char uplo) {
  const int n = coo.n;
  std::vector<int> ia(static_cast<std::size_t>(n) + 1, 0);
  for (int k = 0; k < coo.nnz(); ++k) {
    const int i = coo.rows[k], j = coo.cols[k];
    if ((uplo == 'L' && j > i) || (uplo == 'U' && j < i))
      fail(IoError::Kind::format, 0,
           "entry (" + std::to_string(i) + "," + std::to_string(j) + ") lies outside the " +
               (uplo == 'L' ? "lower" : "upper") + " triangle");
    if constexpr (!is_complex_v<F>) {
      if (coo.values[k].imag() != 0)
        fail(IoError::Kind::format, 0, "complex entry in a real matrix");
    }
    ++ia[static_cast<std::size_t>(i)];
  }
  ia[0] = 1;
  for (int i = 0; i < n; ++i) ia[i + 1] += ia[i];
  std::vector<int> next(ia.begin(), ia.end() - 1);
  std::vector<int> ja(static_cast<std::size_t>(coo.nnz()));
  std::vector<F> values(static_cast<std::size_t>(coo.nnz()));
  for (int k = 0; k < coo.nnz(); ++k) {
    const int slot = next[coo.rows[k] - 1]++ - 1;
    ja[slot] = coo.cols[k];
    if constexpr (is_complex_v<F>)
      values[slot] = F(static_cast<RealOf<F>>(coo.values[k].real()),
                       static_cast<RealOf<F>>(coo.values[k].imag()));
    else
      values[slot] = static_cast<F>(coo.values[k].real());
  }
  return make_csr<F>(n, ia.data(), ja.data(), values.data());
}

DriverConfig parse_config(std::string_view text) {
  const auto lines = content_lines(text);
  DriverConfig cfg;
  const auto token = [&](std::size_t idx) {
    const auto [ln, line] = lines[idx];
    const auto tok = split(line);
    if (tok.size() != 1) fail(IoError::Kind::malformed, ln, "expected a single value");
    return std::pair<int, std::string_view>(ln, tok[0]);
  };
  const auto letter = [&](std::size_t idx, std::string_view allowed, const char* what) {
    const auto [ln, tok] = token(idx);
    if (tok.size() != 1 || allowed.find(tok[0]) == std::string_view::npos)
      fail(IoError::Kind::malformed, ln, std::string("invalid ") + what + " '" + std::string(tok) + "'");
    return tok[0];
  };
  const auto real = [&](std::size_t idx, const char* what) {
    const auto [ln, tok] = token(idx);
    double v = 0;
    if (!parse_real(tok, v)) fail(IoError::Kind::malformed, ln, std::string("invalid ") + what);
    return v;
  };
  const auto integer = [&](std::size_t idx, const char* what) {
    const auto [ln, tok] = token(idx);
    int v = 0;
    if (!parse_int(tok, v)) fail(IoError::Kind::malformed, ln, std::string("invalid ") + what);
    return v;
  };

  static const char* const kRequired[] = {"problem type", "precision", "UPLO", "Emin", "Emax", "M0"};
  if (lines.size() < 6)
    fail(IoError::Kind::truncated, 0,
         std::string("missing value for ") + kRequired[lines.size()]);

  cfg.problem = letter(0, "sg", "problem type");
  cfg.precision = letter(1, "sdcz", "precision");
  cfg.uplo = letter(2, "FLU", "UPLO");
  cfg.emin = real(3, "Emin");
  cfg.emax = real(4, "Emax");
  cfg.m0 = integer(5, "M0");

  const int tol_slot = cfg.single_precision() ? 7 : 3;
  const int slots[] = {1, 2, tol_slot, 4, 6};
  for (std::size_t k = 6; k < lines.size(); ++k) {
    if (k - 6 >= std::size(slots))
      fail(IoError::Kind::extra, lines[k].first, "unexpected extra value");
    const int slot = slots[k - 6];
    cfg.fpm.slot(slot) = integer(k, ("fpm(" + std::to_string(slot) + ")").c_str());
  }
  return cfg;
}

DriverConfig load_config(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_config(text);
  } catch (const IoError& e) {
    throw IoError(e.kind(), e.line(), path + ": " + e.what());
  }
}

template CsrMatrix<float> coo_to_csr<float>(const CooMatrix&, char);
template CsrMatrix<double> coo_to_csr<double>(const CooMatrix&, char);
template CsrMatrix<std::complex<float>> coo_to_csr<std::complex<float>>(const CooMatrix&, char);
template CsrMatrix<std::complex<double>> coo_to_csr<std::complex<double>>(const CooMatrix&, char);

}  // namespace feast
