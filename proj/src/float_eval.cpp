#include "trilab/float_eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

namespace trilab {

namespace {

// Unit roundoff of long double (64-bit mantissa).
constexpr long double kUnit = 0x1p-64L;

// Per-level relative error budget: two rule evaluations (a few ulp each from
// powl or rational rounding), two multiplies, one add. All quantities are
// positive, so errors compound multiplicatively and never cancel-amplify.
constexpr long double kPerLevel = 12.0L;

long double envelope(long levels) {
  return expm1l(static_cast<long double>(levels) * kPerLevel * kUnit + 8 * kUnit);
}

void require_budget(long levels, const char* what) {
  if (envelope(levels) > 1e-12L)
    throw std::invalid_argument(std::string(what) +
                                ": depth exceeds the float engine's 1e-12 error budget");
}

// Rescale row[lo..hi] by an exact power of two when its magnitude drifts, and
// fold the shift into exp2. Power-of-two scaling never rounds.
void rescale(std::vector<long double>& row, int lo, int hi, long& exp2) {
  long double top = 0;
  for (int k = lo; k <= hi; ++k) top = std::max(top, fabsl(row[k]));
  if (top == 0) return;
  const int e = ilogbl(top);
  if (e < 64 && e > -64) return;
  const long double scale = ldexpl(1.0L, -e);
  for (int k = lo; k <= hi; ++k) row[k] *= scale;
  exp2 += e;
}

}  // namespace

FloatWindow float_window_kernel(const MultiplicitySpec& tri, NodeIndex target, int n_max) {
  if (!target.valid()) throw std::invalid_argument("invalid target node " + node_str(target));
  if (n_max < 0 || n_max > target.n)
    throw std::invalid_argument("window depth must lie within 0..target level");
  require_budget(target.n, "float_window_kernel");

  const int nu = target.n;
  const int kappa = target.k;
  const auto lo_of = [&](int n) { return std::max(0, kappa - (nu - n)); };
  const auto hi_of = [&](int n) { return std::min(n, kappa); };

  // Ping-pong rows indexed by absolute position; one guard slot past each
  // band edge is kept at a true zero so reads off the band are exact.
  std::vector<long double> cur(static_cast<std::size_t>(nu) + 2, 0.0L);
  std::vector<long double> nxt(static_cast<std::size_t>(nu) + 2, 0.0L);
  cur[kappa] = 1.0L;
  long exp2 = 0;

  struct Kept {
    std::vector<long double> row;
    long exp2 = 0;
  };
  std::vector<Kept> kept(static_cast<std::size_t>(n_max) + 1);
  auto keep = [&](int n, const std::vector<long double>& row) {
    kept[n].row.assign(row.begin(), row.begin() + n + 1);
    kept[n].exp2 = exp2;
  };
  if (nu <= n_max) keep(nu, cur);

  for (int n = nu - 1; n >= 0; --n) {
    const int lo = lo_of(n), hi = hi_of(n);
    for (int k = lo; k <= hi; ++k)
      nxt[k] = tri.left_ld(n, k) * cur[k] + tri.right_ld(n, k) * cur[k + 1];
    if (lo > 0) nxt[lo - 1] = 0;
    nxt[hi + 1] = 0;
    rescale(nxt, lo, hi, exp2);
    cur.swap(nxt);
    if (n <= n_max) keep(n, cur);
  }

  const long double root = kept[0].row[0];
  if (!(root > 0)) throw std::runtime_error("float sweep lost the root mass to underflow");

  FloatWindow out;
  out.target = target;
  out.n_max = n_max;
  out.rel_error_bound = envelope(nu);
  out.rows.resize(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    out.rows[n].assign(static_cast<std::size_t>(n) + 1, 0.0L);
    if (kept[n].row.empty()) continue;  // window deeper than the sweep reached
    for (int k = 0; k <= n && k < static_cast<int>(kept[n].row.size()); ++k)
      out.rows[n][k] = ldexpl(kept[n].row[k] / root, kept[n].exp2 - kept[0].exp2);
  }
  return out;
}

FloatSlices float_forward_rows(const MultiplicitySpec& tri, NodeIndex source,
                               const std::vector<int>& keep_levels) {
  if (!source.valid()) throw std::invalid_argument("invalid source node " + node_str(source));
  if (keep_levels.empty()) throw std::invalid_argument("no levels requested");
  std::set<int> want(keep_levels.begin(), keep_levels.end());
  if (*want.begin() < source.n)
    throw std::invalid_argument("requested level above the source node");
  const int top = *want.rbegin();
  require_budget(top - source.n, "float_forward_rows");

  std::vector<long double> cur(static_cast<std::size_t>(top) + 2, 0.0L);
  std::vector<long double> nxt(static_cast<std::size_t>(top) + 2, 0.0L);
  cur[source.k] = 1.0L;
  long exp2 = 0;

  FloatSlices out;
  out.source = source;
  out.rel_error_bound = envelope(top - source.n);
  auto keep = [&](int n) {
    ScaledRow sr;
    sr.row.assign(cur.begin(), cur.begin() + n + 1);
    sr.exp2 = exp2;
    out.levels.emplace(n, std::move(sr));
  };
  if (want.count(source.n)) keep(source.n);

  for (int n = source.n + 1; n <= top; ++n) {
    const int lo = source.k;
    const int hi = source.k + (n - source.n);
    for (int k = hi; k >= lo; --k) {
      const long double down = k <= n - 1 ? tri.left_ld(n - 1, k) * cur[k] : 0.0L;
      const long double diag = k >= 1 ? tri.right_ld(n - 1, k - 1) * cur[k - 1] : 0.0L;
      nxt[k] = down + diag;
    }
    if (lo > 0) nxt[lo - 1] = 0;
    if (hi + 1 <= top + 1) nxt[hi + 1] = 0;
    rescale(nxt, lo, std::min(hi, n), exp2);
    cur.swap(nxt);
    if (want.count(n)) keep(n);
  }
  return out;
}

}  // namespace trilab
