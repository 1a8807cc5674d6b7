#include "trilab/dimensions.hpp"

#include <algorithm>
#include <stdexcept>

namespace trilab {

const Rat& DimensionTable::at(int n, int k) const {
  if (n < 0 || n > depth || k < 0 || k > n)
    throw std::out_of_range("dimension table access outside the triangle at " + node_str({n, k}));
  return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

ForwardSlice forward_weights(const MultiplicitySpec& tri, NodeIndex source, int top) {
  if (!source.valid()) throw std::invalid_argument("invalid source node " + node_str(source));
  if (top < source.n)
    throw std::invalid_argument("forward sweep top level below the source level");

  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(top) + 1);
  for (int m = 0; m <= top; ++m) rows[m].assign(static_cast<std::size_t>(m) + 1, Rat(0));
  rows[source.n][source.k] = 1;

  for (int m = source.n; m < top; ++m) {
    const int lo = source.k;
    const int hi = std::min(m, source.k + (m - source.n));
    for (int k = lo; k <= hi; ++k) {
      const Rat& w = rows[m][k];
      if (w == 0) continue;
      rows[m + 1][k] += tri.left(m, k) * w;
      rows[m + 1][k + 1] += tri.right(m, k) * w;
    }
  }
  return ForwardSlice{source, top, std::move(rows)};
}

DimensionTable dimensions(const MultiplicitySpec& tri, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  ForwardSlice s = forward_weights(tri, NodeIndex{0, 0}, depth);
  return DimensionTable{NodeIndex{0, 0}, depth, std::move(s.rows)};
}

DimensionTable extended_dimensions(const MultiplicitySpec& tri, NodeIndex target) {
  if (!target.valid()) throw std::invalid_argument("invalid target node " + node_str(target));
  const int nu = target.n, kappa = target.k;

  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(nu) + 1);
  for (int n = 0; n <= nu; ++n) rows[n].assign(static_cast<std::size_t>(n) + 1, Rat(0));
  rows[nu][kappa] = 1;

  for (int n = nu - 1; n >= 0; --n) {
    const int lo = std::max(0, kappa - (nu - n));
    const int hi = std::min(n, kappa);
    for (int k = lo; k <= hi; ++k)
      rows[n][k] = tri.left(n, k) * rows[n + 1][k] + tri.right(n, k) * rows[n + 1][k + 1];
  }
  return DimensionTable{target, nu, std::move(rows)};
}

}  // namespace trilab
