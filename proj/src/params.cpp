#include "feast/params.hpp"

#include <algorithm>

namespace feast {

namespace {

constexpr std::array<int, 13> kContourOrders = {3, 4, 5, 6, 8, 10, 12, 16, 20, 24, 32, 40, 48};

constexpr int kMaxToleranceDouble = 16;
constexpr int kMaxToleranceSingle = 8;

}  // namespace

Params::Params() {
  slot(1) = 0;
  slot(2) = 8;
  slot(3) = 12;
  slot(4) = 20;
  slot(5) = 0;
  slot(6) = 0;
  slot(7) = 5;
  slot(14) = 0;
}

Params Params::from_array(const int* values) {
  Params p;
  std::copy_n(values, kSize, p.slots_.begin());
  return p;
}

void Params::to_array(int* values) const { std::copy(slots_.begin(), slots_.end(), values); }

int Params::tolerance_exponent_double() const { return std::min(slot(3), kMaxToleranceDouble); }

int Params::tolerance_exponent_single() const { return std::min(slot(7), kMaxToleranceSingle); }

Params feastinit() { return Params{}; }

bool is_supported_contour_order(int ne) {
  return std::find(kContourOrders.begin(), kContourOrders.end(), ne) != kContourOrders.end();
}

InfoClass classify_info(int info) {
  if (info == 0) return InfoClass::success;
  if (info >= 1 && info <= 4) return InfoClass::warning;
  return InfoClass::error;
}

std::string_view info_message(int info) {
  switch (info) {
    case 0: return "Successful exit";
    case 1: return "No Eigenvalue found in the search interval";
    case 2: return "No Convergence (#iteration loops>fpm(4))";
    case 3: return "Size of the subspace M0 is too small (M0<=M)";
    case 4: return "Only the subspace has been returned using fpm(14)=1";
    case -1: return "Internal error for allocation memory";
    case -2: return "Internal error of the inner system solver";
    case -3: return "Internal error of the reduced eigenvalue solver (matrix B may not be positive definite)";
    case 200: return "Problem with Emin,Emax (Emin>=Emax)";
    case 201: return "Problem with size of subspace M0 (M0>N or M0<=0)";
    case 202: return "Problem with size of the system N (N<=0)";
    default: break;
  }
  if (info > 100 && info <= 100 + Params::kSize) return "Problem with the i-th value of the input FEAST parameter fpm(i), i=info-100";
  if (info < -100) return "Problem with the i-th argument of the FEAST interface, i=-info-100";
  return "Unknown info code";
}

InfoClass InfoCode::classification() const { return classify_info(value); }

std::string_view InfoCode::message() const { return info_message(value); }

InfoCode validate_params(const Params& fpm) {
  const auto in = [](int v, int lo, int hi) { return v >= lo && v <= hi; };
  if (!in(fpm.slot(1), 0, 1)) return {info::bad_param(1)};
  if (!is_supported_contour_order(fpm.slot(2))) return {info::bad_param(2)};
  // Tolerance exponents above their caps are clamped on use, not rejected.
  if (fpm.slot(3) < 1) return {info::bad_param(3)};
  if (fpm.slot(4) < 0) return {info::bad_param(4)};
  if (!in(fpm.slot(5), 0, 1)) return {info::bad_param(5)};
  if (!in(fpm.slot(6), 0, 1)) return {info::bad_param(6)};
  if (fpm.slot(7) < 1) return {info::bad_param(7)};
  if (!in(fpm.slot(14), 0, 1)) return {info::bad_param(14)};
  return {info::success};
}

InfoCode check_problem(int n, int m0, double emin, double emax) {
  if (n <= 0) return {info::bad_size};
  if (m0 > n || m0 <= 0) return {info::bad_subspace};
  if (!(emin < emax)) return {info::bad_interval};
  return {info::success};
}

}  // namespace feast
