#pragma once

#include <cstdint>
#include <vector>

#include "graphlim/spectral.hpp"

namespace graphlim {

// Reverse Cuthill-McKee ordering of the matrix's sparsity graph;
// order[k] is the row placed at position k.
std::vector<int> reverse_cuthill_mckee(const SymMatrix& m);

// Counts eigenvalues below a shift from the inertia of M - sigma I
// (Sylvester's law), using a banded LDL^T factorization without pivoting
// after RCM reordering.
class InertiaCounter {
 public:
  explicit InertiaCounter(const SymMatrix& m);

  int size() const { return n_; }
  int bandwidth() const { return band_; }

  // Number of eigenvalues strictly below sigma. Pivots too small for a
  // reliable sign in double precision trigger a quad-precision pass; an
  // exact breakdown there nudges the shift slightly downward and retries.
  std::int64_t count_below(double sigma) const;

 private:
  // -1 when even the quad-precision pass breaks down
  std::int64_t try_count(double sigma) const;

  int n_ = 0;
  int band_ = 0;
  double scale_ = 1.0;
  // lower band, row-major: a_[i * (band_ + 1) + (j - i + band_)] for i - band_ <= j <= i
  std::vector<double> a_;
};

}  // namespace graphlim
