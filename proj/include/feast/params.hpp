#pragma once

#include <array>
#include <string_view>

namespace feast {

/// The 64-slot integer control vector. Slots are addressed 1-based through
/// slot(i), matching the historical Fortran numbering; operator[] is the
/// zero-based C view (params[i-1] == params.slot(i)).
class Params {
 public:
  static constexpr int kSize = 64;

  /// Defaults as set by feastinit().
  Params();

  int& slot(int i) { return slots_.at(static_cast<std::size_t>(i - 1)); }
  int slot(int i) const { return slots_.at(static_cast<std::size_t>(i - 1)); }

  int& operator[](int j) { return slots_.at(static_cast<std::size_t>(j)); }
  int operator[](int j) const { return slots_.at(static_cast<std::size_t>(j)); }

  const std::array<int, kSize>& slots() const { return slots_; }

  static Params from_array(const int* values);
  void to_array(int* values) const;

  // Named accessors for the interpreted slots.
  bool print_report() const { return slot(1) == 1; }
  int contour_points() const { return slot(2); }
  /// Tolerance exponent for double precision, clamped to 16.
  int tolerance_exponent_double() const;
  /// Tolerance exponent for single precision, clamped to 8.
  int tolerance_exponent_single() const;
  int max_loops() const { return slot(4); }
  bool use_initial_guess() const { return slot(5) == 1; }
  bool residual_criterion() const { return slot(6) == 1; }
  bool subspace_only() const { return slot(14) == 1; }

  bool operator==(const Params&) const = default;

 private:
  std::array<int, kSize> slots_{};
};

Params feastinit();

/// True when `ne` is one of the supported quadrature orders.
bool is_supported_contour_order(int ne);

enum class InfoClass { success, warning, error };

/// An info return value together with its classification.
struct InfoCode {
  int value = 0;

  InfoClass classification() const;
  bool ok() const { return value == 0; }
  bool is_error() const { return classification() == InfoClass::error; }
  std::string_view message() const;

  friend bool operator==(InfoCode a, InfoCode b) { return a.value == b.value; }
  friend bool operator==(InfoCode a, int b) { return a.value == b; }
};

InfoClass classify_info(int info);
std::string_view info_message(int info);

namespace info {
inline constexpr int success = 0;
inline constexpr int no_eigenvalue = 1;
inline constexpr int no_convergence = 2;
inline constexpr int subspace_too_small = 3;
inline constexpr int subspace_only = 4;
inline constexpr int allocation = -1;
inline constexpr int inner_solver = -2;
inline constexpr int reduced_solver = -3;
inline constexpr int bad_interval = 200;
inline constexpr int bad_subspace = 201;
inline constexpr int bad_size = 202;
constexpr int bad_param(int slot) { return 100 + slot; }
constexpr int bad_argument(int position) { return -(100 + position); }
}  // namespace info

/// 0, or 100+i for the smallest slot i holding an out-of-range value.
InfoCode validate_params(const Params& fpm);

/// 202 (n<=0), 201 (m0>n or m0<=0), 200 (emin>=emax) or 0, checked in that order.
InfoCode check_problem(int n, int m0, double emin, double emax);

}  // namespace feast
