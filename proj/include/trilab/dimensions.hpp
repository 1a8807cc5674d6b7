#pragma once

#include "trilab/triangle.hpp"

#include <vector>

namespace trilab {

/// Triangular table of exact path weights.
/// base == (0,0): rows[n][k] is the dimension D_nk (total weight of monotone
/// paths from the root to (n,k)).
/// base == (nu,kappa) with nu > 0: an extended table, rows[n][k] is the total
/// weight of paths from (n,k) up to the target `base`; rows[base.n][base.k] == 1
/// and entries outside the cone under the target are 0.
struct DimensionTable {
  NodeIndex base;
  int depth = 0;
  std::vector<std::vector<Rat>> rows;

  const Rat& at(int n, int k) const;
  const Rat& at(const NodeIndex& v) const { return at(v.n, v.k); }
};

/// Weight flow seeded at an arbitrary source node and pushed upward:
/// rows[m][j] is the total weight of paths source -> (m,j) for m <= top.
/// Rows below source.n are zero-filled.
struct ForwardSlice {
  NodeIndex source;
  int top = 0;
  std::vector<std::vector<Rat>> rows;
};

ForwardSlice forward_weights(const MultiplicitySpec& tri, NodeIndex source, int top);

/// D_nk for 0 <= k <= n <= depth via the additive recursion
/// D_nk = r(n-1,k-1) D_{n-1,k-1} + l(n-1,k) D_{n-1,k}, D_00 = 1.
DimensionTable dimensions(const MultiplicitySpec& tri, int depth);

/// Extended dimensions for a fixed target: one backward sweep of
/// D^{t}_nk = l(n,k) D^{t}_{n+1,k} + r(n,k) D^{t}_{n+1,k+1} from the indicator
/// row at target level down to the root. rows[0][0] equals the plain dimension
/// of the target node.
DimensionTable extended_dimensions(const MultiplicitySpec& tri, NodeIndex target);

}  // namespace trilab
