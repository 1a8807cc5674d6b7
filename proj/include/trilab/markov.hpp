#pragma once

#include "trilab/kernel.hpp"

#include <cstdint>
#include <vector>

namespace trilab {

/// Exact probability vector over positions at one level; probs[k] = P(K_level = k).
struct LevelLaw {
  int level = 0;
  std::vector<Rat> probs;
  Rat total() const;
};

/// One sampled path of the backward chain, recorded top-down:
/// states[i] = K_{start.n - i}, ending at K_0 = 0.
struct Trajectory {
  NodeIndex start;
  std::vector<int> states;
};

/// Law of K_{n-1} given K_n = k under the backward kernel
///   P(j | k) = (D_{n-1,j} / D_nk) * (l(n-1,j) 1[j=k] + r(n-1,j) 1[j=k-1]).
/// `dims` must be a root table of depth >= n. At most two entries are nonzero
/// and the row sums to exactly 1.
LevelLaw backward_transition(const MultiplicitySpec& tri, const DimensionTable& dims,
                             int n, int k);

/// Marginal law P(K_n = k) = D_nk * V_nk for a harmonic V. Rejects arrays that
/// fail verify_harmonic up to level n (mass would not be conserved).
LevelLaw marginal_law(const MultiplicitySpec& tri, const DimensionTable& dims,
                      const KernelArray& V, int n);

/// Level law without the harmonicity precondition check, for callers that have
/// already verified V once and evaluate many levels.
LevelLaw level_law_unchecked(const DimensionTable& dims, const KernelArray& V, int n);

/// Runs the backward chain from `start` to the root with exact rational
/// transition probabilities and 128-bit dyadic inverse-CDF draws; deterministic
/// for a given seed. Each step decrements k by 0 or 1; K_0 = 0 always.
Trajectory sample_backward_path(const MultiplicitySpec& tri, const DimensionTable& dims,
                                NodeIndex start, std::uint64_t seed);

enum class StochasticOrder { Equal, StrictlyLess, StrictlyGreater, Incomparable };

/// Exact upper-tail comparison of two laws on the same level:
/// StrictlyLess when every tail of a is <= that of b with at least one strict.
StochasticOrder stochastic_leq(const LevelLaw& a, const LevelLaw& b);

/// The Martin-kernel first-column slice kappa -> V^{(nu,kappa)}_{n,0} computed
/// exactly for all kappa at once; expected nonincreasing in kappa.
struct MonotoneReport {
  int nu = 0;
  int n = 0;
  std::vector<Rat> sequence;     // kappa = 0..nu
  std::vector<int> violations;   // kappa where sequence[kappa] > sequence[kappa-1]
  bool ok() const { return violations.empty(); }
};

MonotoneReport check_monotone_in_kappa(const MultiplicitySpec& tri, int nu, int n);

}  // namespace trilab
