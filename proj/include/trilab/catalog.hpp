#pragma once

#include "trilab/kernel.hpp"

#include <map>
#include <string>

namespace trilab {

enum class TriangleName { Pascal, QPascal, Stirling, StirlingInf, Eulerian };

TriangleName parse_triangle_name(const std::string& s);
std::string triangle_name_str(TriangleName name);

/// Catalog multiplicity rules:
///   pascal       l = r = 1
///   q-pascal     l = 1,             r(n,k) = q^(n-k),      q > 0
///   stirling     l(n,k) = (n+1) - alpha*(k+1), r = 1,      alpha < 1
///   stirling-inf l(n,k) = k+1,      r = 1
///   eulerian     l(n,k) = k+1,      r(n,k) = n-k+1
/// Unknown names, unknown/missing params and out-of-domain params throw.
MultiplicitySpec catalog_triangle(TriangleName name,
                                  const std::map<std::string, Rat>& params = {});

/// A point of the sequential boundary, tagged by the family it belongs to.
/// Integer-indexed families use `m` (Eulerian admits negative m; m = 0 is not a
/// boundary point there); rational-indexed families use `value` (x in [0,1] for
/// Pascal, s >= 0 for the alpha = 0 Stirling triangle). `infinite` marks the
/// m/s = infinity points. The trivial kinds exist for every triangle: all mass
/// drifting along the left edge (trivial-0) or the diagonal (trivial-inf).
struct BoundaryPoint {
  enum class Kind { PascalX, QPascalM, StirlingM, StirlingS, EulerianM, TrivialZero, TrivialInf };
  Kind kind = Kind::TrivialZero;
  bool infinite = false;
  Rat value;   // x or s
  long m = 0;  // integer index

  /// Accepts "x=1/3", "m=2", "m=-2", "m=inf", "s=5/2", "s=inf",
  /// "trivial-0", "trivial-inf"; the key must fit the triangle family.
  static BoundaryPoint parse(const std::string& text, TriangleName name);
  std::string str() const;

  static BoundaryPoint pascal_x(const Rat& x);
  static BoundaryPoint qpascal_m(long m);
  static BoundaryPoint stirling_m(long m);
  static BoundaryPoint stirling_s(const Rat& s);
  static BoundaryPoint eulerian_m(long m);
  static BoundaryPoint infinity_of(Kind kind);
  static BoundaryPoint trivial_zero();
  static BoundaryPoint trivial_inf();
};

/// Exact extreme kernel of a catalog boundary point on the window n <= depth.
/// Closed forms:
///   pascal      V_nk(x) = x^(n-k) (1-x)^k
///   q-pascal    V_nk(m) = q^((m-k)(n-k)) prod_{i=m-k+1..m} (1-q^i) for k <= m,
///               0 above; m = inf is the diagonal indicator. Requires 0 < q < 1
///               (q > 1 boundaries are reached through transposition).
///   stirling    first column 1/((m+1)|alpha|+1)_n for alpha < 0 (so m = 0 is
///               exactly trivial-0 and the conditioned walker satisfies
///               K_n -> m), 1/(m+1)^n for stirling-inf, 1/(s+1)_n for alpha = 0;
///               higher columns by iterated generalized differences.
///   eulerian    V_nk(m) = (1/(n+1)!) prod_{i=-k..n-k} (1 + i/m), m integer
///               nonzero or inf (prod empty-free; m = 1 and m = -1 are the
///               trivial points, m = inf the symmetric kernel 1/(n+1)!).
/// Positivity of every produced array is checked, not assumed.
KernelArray extreme_kernel(TriangleName name, const std::map<std::string, Rat>& params,
                           const BoundaryPoint& point, int depth);

/// The order coordinate l(0,0) * V_{1,0} in [0,1]; 1 at trivial-0, 0 at
/// trivial-inf, strictly decreasing along each catalog family.
Rat boundary_coordinate(const MultiplicitySpec& tri, const KernelArray& V);

/// Natural log of the extreme-kernel entry, for deep float-mode levels where
/// the exact value under/overflows. Returns -inf for zero entries. Available
/// for families with entrywise closed forms (pascal, q-pascal, eulerian and the
/// trivial points); throws for the column-constructed Stirling kernels.
long double log_extreme_value(TriangleName name, const std::map<std::string, Rat>& params,
                              const BoundaryPoint& point, long n, long k);

}  // namespace trilab
