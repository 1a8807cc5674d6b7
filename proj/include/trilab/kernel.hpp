#pragma once

#include "trilab/dimensions.hpp"

#include <optional>
#include <vector>

namespace trilab {

/// Exact triangular array V_nk, 0 <= k <= n <= depth. Members of the harmonic
/// cone satisfy V_00 = 1, V >= 0 and the backward mean-value identity checked
/// by verify_harmonic.
struct KernelArray {
  int depth = 0;
  std::vector<std::vector<Rat>> rows;

  const Rat& at(int n, int k) const;
  const Rat& at(const NodeIndex& v) const { return at(v.n, v.k); }
};

/// Martin kernel of a target node: V^{t}_nk = D^{t}_nk / D_t, exact.
/// The returned array has depth t.n, is harmonic at every level below t.n,
/// and its target row is the indicator of t.
KernelArray martin_kernel(const MultiplicitySpec& tri, NodeIndex target);

struct HarmonicReport {
  struct Violation {
    NodeIndex node;   // node whose mean-value equation fails
    Rat residual;     // V_nk - l(n,k) V_{n+1,k} - r(n,k) V_{n+1,k+1}
  };
  bool normalized = false;            // V_00 == 1
  std::vector<NodeIndex> negative;    // entries < 0 with n <= depth
  std::vector<Violation> violations;  // equations failing for n < depth
  bool ok() const { return normalized && negative.empty() && violations.empty(); }
};

/// Exact check of V_nk = l(n,k) V_{n+1,k} + r(n,k) V_{n+1,k+1} for all n < depth,
/// plus nonnegativity up to depth and the root normalization. Violations are
/// reported, never thrown.
HarmonicReport verify_harmonic(const MultiplicitySpec& tri, const KernelArray& V, int depth);

/// One column-building step of the generalized difference scheme: from column
/// k-1, given as (U_{k-1}, ..., U_N) starting at level k-1, produce column k as
/// (V_k, ..., V_N), one element shorter:
///   out[i] = (in[i] - l(k-1+i, k-1) * in[i+1]) / r(k-1+i, k-1).
/// The multiplicity subscripts come from solving the mean-value identity at node
/// (k-1+i, k-1) for its upper-right neighbour; the Pascal column closed form
/// x^{n-k}(1-x)^k pins this alignment.
std::vector<Rat> generalized_difference(const MultiplicitySpec& tri,
                                        const std::vector<Rat>& column, int k);

enum class Membership { Accept, Reject };

struct ColumnBuildResult {
  KernelArray array;                      // fully reconstructed window, signed entries possible
  Membership verdict = Membership::Reject;  // Accept iff every entry >= 0
  std::optional<NodeIndex> first_negative;  // earliest by (column, level)
};

/// Rebuilds the full array on the window n <= depth from its first column via
/// iterated generalized differences. By construction the result satisfies the
/// mean-value identity everywhere on the window, so when the verdict is Accept
/// it passes verify_harmonic.
ColumnBuildResult kernel_from_first_column(const MultiplicitySpec& tri,
                                           const std::vector<Rat>& first_col, int depth);

}  // namespace trilab
