#pragma once

#include "trilab/triangle.hpp"

#include <map>
#include <vector>

namespace trilab {

/// Deep-sweep engine for levels where exact rationals are impractical.
/// Arithmetic is long double (64-bit mantissa) with exact power-of-two row
/// rescaling. Every recursion coefficient is strictly positive, so sums never
/// cancel and each value carries a relative error below (1+u)^{7L} - 1 after L
/// levels; that envelope is tracked and returned with each result, and the
/// engine refuses depths at which it could exceed 1e-12.

/// Martin kernel of `target` restricted to the window n <= n_max.
struct FloatWindow {
  NodeIndex target;
  int n_max = 0;
  std::vector<std::vector<long double>> rows;  // rows[n][k], n <= n_max
  long double rel_error_bound = 0;
};

FloatWindow float_window_kernel(const MultiplicitySpec& tri, NodeIndex target, int n_max);

/// One level of a forward sweep: value(k) = row[k] * 2^exp2.
struct ScaledRow {
  std::vector<long double> row;
  long exp2 = 0;
};

/// Forward path-weight rows seeded at `source`, keeping only the requested
/// levels (all <= top). With source == (0,0) the kept rows are dimension rows;
/// with source == (1,0) they give extended dimensions of every target at the
/// kept level in one sweep.
struct FloatSlices {
  NodeIndex source;
  std::map<int, ScaledRow> levels;
  long double rel_error_bound = 0;
};

FloatSlices float_forward_rows(const MultiplicitySpec& tri, NodeIndex source,
                               const std::vector<int>& keep_levels);

}  // namespace trilab
