#pragma once

#include <functional>
#include <string>

namespace graphlim {

// A continuous nondecreasing distribution function used as a limit
// reference for spectral CDFs; 0 below `lower`, 1 above `upper`.
struct ReferenceCurve {
  std::string name;
  double lower = 0.0;
  double upper = 0.0;
  std::function<double(double)> cdf;

  double operator()(double x) const;
};

// Integrated density of states of the one-dimensional lattice for the
// named kernel: (1/pi) arccos(1 - x/2) on [0, 4] for "graph-laplacian",
// its reflection onto [-4, 0] for "laplacian", and the arcsine law
// (1/pi) arccos(-x/2) on [-2, 2] for "adjacency".
ReferenceCurve lattice_ids(const std::string& kernel);

// Kesten-McKay distribution of the adjacency spectrum of random d-regular
// graphs, d >= 3, integrated numerically.
ReferenceCurve kesten_mckay(int d);

// "arccos-1d" or "kesten-mckay".
ReferenceCurve reference_curve(const std::string& name, const std::string& kernel, int degree);

}  // namespace graphlim
