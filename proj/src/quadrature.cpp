#include "feast/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "feast/params.hpp"

namespace feast {

namespace {

constexpr int kNewtonMaxIterations = 100;
constexpr double kNewtonStep = 1e-16;

struct Legendre {
  double value;
  double derivative;
};

Legendre legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

QuadratureRule gauss_legendre(int ne) {
  if (!is_supported_contour_order(ne))
    throw std::invalid_argument("unsupported number of contour points: " + std::to_string(ne));

  QuadratureRule rule;
  rule.nodes.resize(ne);
  rule.weights.resize(ne);

  const int half = (ne + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-angle guess for the i-th largest root.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (ne + 0.5));
    Legendre p = legendre(ne, x);
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const double dx = p.value / p.derivative;
      x -= dx;
      p = legendre(ne, x);
      if (std::abs(dx) <= kNewtonStep) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * p.derivative * p.derivative);
    // Mirror pairs; an odd order has its middle node at exactly zero.
    const bool middle = (2 * i + 1 == ne);
    rule.nodes[ne - 1 - i] = middle ? 0.0 : x;
    rule.weights[ne - 1 - i] = w;
    rule.nodes[i] = middle ? 0.0 : -x;
    rule.weights[i] = w;
  }
  return rule;
}

Contour build_contour(const QuadratureRule& rule, double emin, double emax) {
  if (!(emin < emax)) throw std::invalid_argument("contour requires emin < emax");
  Contour c;
  c.center = (emax + emin) / 2;
  c.radius = (emax - emin) / 2;
  c.points.reserve(rule.nodes.size());
  for (std::size_t e = 0; e < rule.nodes.size(); ++e) {
    ContourPoint p;
    p.theta = -(std::numbers::pi / 2) * (rule.nodes[e] - 1);
    p.z = c.center + c.radius * std::polar(1.0, p.theta);
    p.weight = rule.weights[e];
    c.points.push_back(p);
  }
  return c;
}

}  // namespace feast
