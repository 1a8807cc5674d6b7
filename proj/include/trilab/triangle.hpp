#pragma once

#include "trilab/rational.hpp"

#include <functional>
#include <map>
#include <string>

namespace trilab {

/// A node of the triangular graph: level n, position 0 <= k <= n.
struct NodeIndex {
  int n = 0;
  int k = 0;
  bool valid() const { return n >= 0 && k >= 0 && k <= n; }
  friend bool operator==(const NodeIndex& a, const NodeIndex& b) {
    return a.n == b.n && a.k == b.k;
  }
  friend bool operator<(const NodeIndex& a, const NodeIndex& b) {
    return a.n != b.n ? a.n < b.n : a.k < b.k;
  }
};

std::string node_str(const NodeIndex& v);

/// Edge-multiplicity rules for the two out-edges of each node:
///   (n,k) -> (n+1,k)   carries left(n,k),
///   (n,k) -> (n+1,k+1) carries right(n,k).
/// Rules are pure and must be strictly positive. Construction probes a small
/// window of nodes so degenerate rules are rejected up front; every later
/// evaluation keeps the positivity guard. Instances are immutable and safe to
/// share across threads.
class MultiplicitySpec {
 public:
  using Rule = std::function<Rat(int n, int k)>;

  MultiplicitySpec(std::string name, Rule left, Rule right,
                   std::map<std::string, Rat> params = {});

  Rat left(int n, int k) const;
  Rat right(int n, int k) const;

  /// Rounded multiplicities for the deep-sweep engine. By default each call
  /// rounds the exact rule's value; catalog triangles install direct
  /// long-double formulas so deep sweeps avoid big-integer traffic. Either way
  /// the result is within a few ulp of the exact value.
  long double left_ld(int n, int k) const;
  long double right_ld(int n, int k) const;

  using FloatRule = std::function<long double(int n, int k)>;
  void set_float_rules(FloatRule left, FloatRule right);

  const std::string& name() const { return name_; }
  const std::map<std::string, Rat>& params() const { return params_; }

 private:
  std::string name_;
  Rule left_;
  Rule right_;
  FloatRule left_ld_;   // optional fast path
  FloatRule right_ld_;  // optional fast path
  std::map<std::string, Rat> params_;
};

/// Mirror image: left'(n,k) = right(n,n-k), right'(n,k) = left(n,n-k).
/// An involution up to rule identity; dimension rows reverse under it.
MultiplicitySpec transpose(const MultiplicitySpec& tri);

}  // namespace trilab
