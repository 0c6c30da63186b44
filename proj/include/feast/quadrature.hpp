#pragma once

#include <complex>
#include <vector>

namespace feast {

/// Gauss-Legendre rule on [-1, 1]; nodes are stored in ascending order.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int order() const { return static_cast<int>(nodes.size()); }
};

/// Rule of order `ne`, computed by Newton iteration on the Legendre polynomial.
/// Throws std::invalid_argument unless `ne` is a supported contour order.
QuadratureRule gauss_legendre(int ne);

struct ContourPoint {
  double theta = 0;         // angle on the upper half circle, in (0, pi)
  std::complex<double> z;   // shift center + radius * exp(i theta)
  double weight = 0;
};

/// Quadrature points mapped onto the half circle spanning [emin, emax].
struct Contour {
  double center = 0;
  double radius = 0;
  std::vector<ContourPoint> points;

  int size() const { return static_cast<int>(points.size()); }
};

/// Throws std::invalid_argument when emin >= emax.
Contour build_contour(const QuadratureRule& rule, double emin, double emax);

}  // namespace feast
