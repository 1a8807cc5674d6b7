#pragma once

// Independent reference implementations used by the tests. Everything here
// deliberately avoids the library's recursions: dimensions come from explicit
// path enumeration, the combinatorial counts from enumerating the underlying
// objects, and the membership oracle from a hand-rolled difference table.

#include "trilab/triangle.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <vector>

namespace testutil {

using trilab::MultiplicitySpec;
using trilab::Rat;

/// Total weight of monotone lattice paths (0,0) -> (n,k), by walking every
/// up/flat step sequence.
inline Rat brute_dimension(const MultiplicitySpec& tri, int n, int k) {
  Rat total(0);
  std::function<void(int, int, const Rat&)> go = [&](int level, int pos, const Rat& w) {
    if (pos > k || pos + (n - level) < k) return;
    if (level == n) {
      total += w;
      return;
    }
    go(level + 1, pos, w * tri.left(level, pos));
    go(level + 1, pos + 1, w * tri.right(level, pos));
  };
  go(0, 0, Rat(1));
  return total;
}

/// Number of set partitions of {1..n} into exactly k blocks, by enumerating
/// restricted-growth strings.
inline long partitions_with_blocks(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  long count = 0;
  std::function<void(int, int)> go = [&](int i, int mx) {
    if (i == n) {
      if (mx + 1 == k) ++count;
      return;
    }
    for (int v = 0; v <= mx + 1; ++v) go(i + 1, std::max(mx, v));
  };
  go(1, 0);
  return count;
}

/// Number of permutations of {1..n} with exactly k cycles, by enumeration.
inline long perms_with_cycles(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    std::vector<bool> seen(n, false);
    int cycles = 0;
    for (int i = 0; i < n; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = p[j]) seen[j] = true;
    }
    if (cycles == k) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Number of permutations of {1..n} with exactly k descents, by enumeration.
inline long perms_with_descents(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  long count = 0;
  do {
    int descents = 0;
    for (int i = 0; i + 1 < n; ++i) descents += p[i] > p[i + 1];
    if (descents == k) ++count;
  } while (std::next_permutation(p.begin(), p.end()));
  return count;
}

/// Gaussian binomial coefficient as a subset-sum generating function:
/// sum over k-subsets S of {0..n-1} of q^(sum S - k(k-1)/2).
inline Rat gaussian_binomial(int n, int k, const Rat& q) {
  Rat total(0);
  for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
    int bits = 0;
    long sum = 0;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        ++bits;
        sum += i;
      }
    if (bits == k) total += trilab::rat_pow(q, sum - static_cast<long>(k) * (k - 1) / 2);
  }
  return total;
}

/// Plain iterated-difference membership test for the unit-multiplicity
/// triangle: every entry of every difference row must be nonnegative.
inline bool cm_oracle(const std::vector<Rat>& seq) {
  std::vector<Rat> cur = seq;
  while (!cur.empty()) {
    for (const Rat& v : cur)
      if (v < 0) return false;
    std::vector<Rat> next;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) next.push_back(cur[i] - cur[i + 1]);
    cur = std::move(next);
  }
  return true;
}

/// Random triangle with multiplicities drawn from {1..9}/{1..9}, tabulated up
/// to max(depth, 8) so construction-time probing stays inside the table.
inline MultiplicitySpec random_triangle(std::mt19937_64& rng, int depth,
                                        const std::string& name = "random") {
  const int top = std::max(depth, 8);
  auto table = std::make_shared<std::vector<std::vector<std::pair<Rat, Rat>>>>();
  std::uniform_int_distribution<long> digit(1, 9);
  table->resize(top + 1);
  for (int n = 0; n <= top; ++n)
    for (int k = 0; k <= n; ++k)
      (*table)[n].emplace_back(trilab::make_rat(digit(rng), digit(rng)),
                               trilab::make_rat(digit(rng), digit(rng)));
  return MultiplicitySpec(
      name,
      [table, top](int n, int k) -> Rat {
        if (n > top) throw std::out_of_range("random triangle table exhausted");
        return (*table)[n][k].first;
      },
      [table, top](int n, int k) -> Rat {
        if (n > top) throw std::out_of_range("random triangle table exhausted");
        return (*table)[n][k].second;
      });
}

}  // namespace testutil
