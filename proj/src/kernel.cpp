#include "trilab/kernel.hpp"

#include <stdexcept>

namespace trilab {

const Rat& KernelArray::at(int n, int k) const {
  if (n < 0 || n > depth || k < 0 || k > n)
    throw std::out_of_range("kernel access outside the triangle at " + node_str({n, k}));
  return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

KernelArray martin_kernel(const MultiplicitySpec& tri, NodeIndex target) {
  DimensionTable ext = extended_dimensions(tri, target);
  const Rat denom = ext.rows[0][0];
  if (denom <= 0)
    throw std::runtime_error("degenerate target dimension for " + node_str(target));
  KernelArray V{ext.depth, std::move(ext.rows)};
  for (auto& row : V.rows)
    for (auto& v : row)
      if (v != 0) v /= denom;
  return V;
}

HarmonicReport verify_harmonic(const MultiplicitySpec& tri, const KernelArray& V, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (depth > V.depth)
    throw std::invalid_argument("harmonicity check deeper than the array");

  HarmonicReport report;
  report.normalized = (V.at(0, 0) == 1);
  for (int n = 0; n <= depth; ++n)
    for (int k = 0; k <= n; ++k)
      if (V.at(n, k) < 0) report.negative.push_back(NodeIndex{n, k});
  for (int n = 0; n < depth; ++n)
    for (int k = 0; k <= n; ++k) {
      Rat residual =
          V.at(n, k) - tri.left(n, k) * V.at(n + 1, k) - tri.right(n, k) * V.at(n + 1, k + 1);
      if (residual != 0)
        report.violations.push_back(HarmonicReport::Violation{NodeIndex{n, k}, residual});
    }
  return report;
}

std::vector<Rat> generalized_difference(const MultiplicitySpec& tri,
                                        const std::vector<Rat>& column, int k) {
  if (k < 1) throw std::invalid_argument("difference step requires k >= 1");
  if (column.empty()) throw std::invalid_argument("empty column");
  std::vector<Rat> out;
  out.reserve(column.size() - 1);
  for (std::size_t i = 0; i + 1 < column.size(); ++i) {
    const int n = k - 1 + static_cast<int>(i);
    out.push_back((column[i] - tri.left(n, k - 1) * column[i + 1]) / tri.right(n, k - 1));
  }
  return out;
}

ColumnBuildResult kernel_from_first_column(const MultiplicitySpec& tri,
                                           const std::vector<Rat>& first_col, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (first_col.size() != static_cast<std::size_t>(depth) + 1)
    throw std::invalid_argument("first column must have depth+1 entries");
  if (first_col[0] != 1)
    throw std::invalid_argument("first column must start with 1 at the root");

  KernelArray V;
  V.depth = depth;
  V.rows.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    V.rows[n].assign(static_cast<std::size_t>(n) + 1, Rat(0));
    V.rows[n][0] = first_col[static_cast<std::size_t>(n)];
  }

  ColumnBuildResult result;
  result.verdict = Membership::Accept;
  auto note_negative = [&](int n, int k) {
    if (result.verdict == Membership::Accept) {
      result.verdict = Membership::Reject;
      result.first_negative = NodeIndex{n, k};
    }
  };
  for (int n = 0; n <= depth; ++n)
    if (V.rows[n][0] < 0) note_negative(n, 0);

  std::vector<Rat> column = first_col;
  for (int k = 1; k <= depth; ++k) {
    column = generalized_difference(tri, column, k);
    for (std::size_t i = 0; i < column.size(); ++i) {
      const int n = k + static_cast<int>(i);
      V.rows[n][k] = column[i];
      if (column[i] < 0) note_negative(n, k);
    }
  }
  result.array = std::move(V);
  return result;
}

}  // namespace trilab
