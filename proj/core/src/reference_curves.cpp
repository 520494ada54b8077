#include "graphlim/reference_curves.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

#include "graphlim/errors.hpp"

namespace graphlim {

double ReferenceCurve::operator()(double x) const {
  if (x < lower) return 0.0;
  if (x >= upper) return 1.0;
  return std::clamp(cdf(x), 0.0, 1.0);
}

ReferenceCurve lattice_ids(const std::string& kernel) {
  using std::numbers::pi;
  ReferenceCurve c;
  c.name = "arccos-1d";
  if (kernel == "graph-laplacian") {
    c.lower = 0.0;
    c.upper = 4.0;
    c.cdf = [](double x) { return std::acos(std::clamp(1.0 - x / 2.0, -1.0, 1.0)) / pi; };
  } else if (kernel == "laplacian") {
    // spectrum of A - D is the negated spectrum of D - A
    c.lower = -4.0;
    c.upper = 0.0;
    c.cdf = [](double x) { return 1.0 - std::acos(std::clamp(1.0 + x / 2.0, -1.0, 1.0)) / pi; };
  } else if (kernel == "adjacency") {
    c.lower = -2.0;
    c.upper = 2.0;
    c.cdf = [](double x) { return std::acos(std::clamp(-x / 2.0, -1.0, 1.0)) / pi; };
  } else {
    throw InvalidInput("no one-dimensional lattice reference for kernel '" + kernel + "'");
  }
  return c;
}

ReferenceCurve kesten_mckay(int d) {
  if (d < 3) throw InvalidInput("the Kesten-McKay law needs degree at least 3");
  const double dd = d;
  const double edge = 2.0 * std::sqrt(dd - 1.0);
  // x = edge * sin(t) turns the density into a smooth integrand in t:
  // f(x) dx = d (4(d-1) cos^2 t) / (2 pi (d^2 - 4(d-1) sin^2 t)) dt
  auto integrand = [dd](double t) {
    const double s = std::sin(t);
    const double c = std::cos(t);
    return dd * 4.0 * (dd - 1.0) * c * c / (2.0 * std::numbers::pi * (dd * dd - 4.0 * (dd - 1.0) * s * s));
  };
  constexpr int kCells = 4096;
  const double a = -std::numbers::pi / 2.0;
  const double h = std::numbers::pi / kCells;
  auto table = std::make_shared<std::vector<double>>(kCells + 1, 0.0);
  for (int i = 0; i < kCells; ++i) {
    // Simpson on each cell
    const double t0 = a + i * h;
    const double cell = h / 6.0 * (integrand(t0) + 4.0 * integrand(t0 + h / 2.0) + integrand(t0 + h));
    (*table)[i + 1] = (*table)[i] + cell;
  }
  const double total = table->back();
  for (double& v : *table) v /= total;
  ReferenceCurve c;
  c.name = "kesten-mckay";
  c.lower = -edge;
  c.upper = edge;
  c.cdf = [table, edge, a, h, integrand, total](double x) {
    const double t = std::asin(std::clamp(x / edge, -1.0, 1.0));
    const double pos = (t - a) / h;
    const int i = std::clamp(static_cast<int>(pos), 0, kCells - 1);
    const double t0 = a + i * h;
    const double dt = t - t0;
    const double partial = dt / 6.0 * (integrand(t0) + 4.0 * integrand(t0 + dt / 2.0) + integrand(t));
    return (*table)[i] + partial / total;
  };
  return c;
}

ReferenceCurve reference_curve(const std::string& name, const std::string& kernel, int degree) {
  if (name == "arccos-1d") return lattice_ids(kernel);
  if (name == "kesten-mckay") {
    if (kernel != "adjacency") throw InvalidInput("the Kesten-McKay reference applies to the adjacency kernel");
    return kesten_mckay(degree);
  }
  throw InvalidInput("unknown reference curve '" + name + "' (expected arccos-1d or kesten-mckay)");
}

}  // namespace graphlim
