#include "trilab/markov.hpp"

#include <stdexcept>

namespace trilab {

Rat LevelLaw::total() const {
  Rat t(0);
  for (const Rat& p : probs) t += p;
  return t;
}

LevelLaw backward_transition(const MultiplicitySpec& tri, const DimensionTable& dims,
                             int n, int k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("backward transition needs a node with n >= 1, got " +
                                node_str({n, k}));
  if (dims.base.n != 0 || dims.base.k != 0 || dims.depth < n)
    throw std::invalid_argument("backward transition needs a root dimension table of depth >= n");

  LevelLaw law;
  law.level = n - 1;
  law.probs.assign(static_cast<std::size_t>(n), Rat(0));
  const Rat& denom = dims.at(n, k);
  if (denom == 0) throw std::domain_error("backward transition from a zero-dimension node");
  if (k <= n - 1) law.probs[k] = tri.left(n - 1, k) * dims.at(n - 1, k) / denom;
  if (k >= 1) law.probs[k - 1] = tri.right(n - 1, k - 1) * dims.at(n - 1, k - 1) / denom;
  return law;
}

LevelLaw level_law_unchecked(const DimensionTable& dims, const KernelArray& V, int n) {
  LevelLaw law;
  law.level = n;
  law.probs.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) law.probs.push_back(dims.at(n, k) * V.at(n, k));
  return law;
}

LevelLaw marginal_law(const MultiplicitySpec& tri, const DimensionTable& dims,
                      const KernelArray& V, int n) {
  if (n < 0) throw std::invalid_argument("negative level");
  if (V.depth < n || dims.depth < n || dims.base.n != 0)
    throw std::invalid_argument("marginal law needs a root dimension table and V of depth >= n");
  HarmonicReport report = verify_harmonic(tri, V, n);
  if (!report.ok())
    throw std::invalid_argument(
        "marginal law of a nonharmonic array: mass would not be conserved");
  LevelLaw law = level_law_unchecked(dims, V, n);
  if (law.total() != 1)
    throw std::runtime_error("level mass is not 1 despite a harmonic array");
  return law;
}

Trajectory sample_backward_path(const MultiplicitySpec& tri, const DimensionTable& dims,
                                NodeIndex start, std::uint64_t seed) {
  if (!start.valid()) throw std::invalid_argument("invalid start node " + node_str(start));
  if (dims.base.n != 0 || dims.depth < start.n)
    throw std::invalid_argument("sampling needs a root dimension table of depth >= start level");
  if (dims.at(start) == 0)
    throw std::domain_error("cannot condition on a zero-dimension start node");

  std::mt19937_64 rng(seed);
  Trajectory path;
  path.start = start;
  path.states.reserve(static_cast<std::size_t>(start.n) + 1);
  int k = start.k;
  path.states.push_back(k);
  for (int n = start.n; n >= 1; --n) {
    // Inverse CDF over the (at most two) predecessors, ascending j.
    int next = k;
    if (k >= 1) {
      if (k > n - 1) {
        next = k - 1;  // diagonal node: the down-step is the only predecessor
      } else {
        const Rat p_down = tri.right(n - 1, k - 1) * dims.at(n - 1, k - 1) / dims.at(n, k);
        if (dyadic_uniform(rng) < p_down) next = k - 1;
      }
    }
    k = next;
    path.states.push_back(k);
  }
  if (path.states.back() != 0) throw std::runtime_error("backward path did not reach the root");
  return path;
}

StochasticOrder stochastic_leq(const LevelLaw& a, const LevelLaw& b) {
  if (a.level != b.level || a.probs.size() != b.probs.size())
    throw std::invalid_argument("stochastic comparison of laws on different levels");
  bool a_below = false, b_below = false;  // some strict tail inequality in each direction
  Rat tail_a(0), tail_b(0);
  for (std::size_t k = a.probs.size(); k-- > 1;) {
    tail_a += a.probs[k];
    tail_b += b.probs[k];
    if (tail_a < tail_b) a_below = true;
    if (tail_b < tail_a) b_below = true;
  }
  if (a_below && b_below) return StochasticOrder::Incomparable;
  if (a_below) return StochasticOrder::StrictlyLess;
  if (b_below) return StochasticOrder::StrictlyGreater;
  return StochasticOrder::Equal;
}

MonotoneReport check_monotone_in_kappa(const MultiplicitySpec& tri, int nu, int n) {
  if (n < 0 || nu < n) throw std::invalid_argument("monotonicity check needs 0 <= n <= nu");
  MonotoneReport report;
  report.nu = nu;
  report.n = n;
  // V^{(nu,kappa)}_{n,0} = (weight of paths (n,0) -> (nu,kappa)) / D_{nu,kappa},
  // one forward slice for all kappa.
  ForwardSlice slice = forward_weights(tri, NodeIndex{n, 0}, nu);
  DimensionTable dims = dimensions(tri, nu);
  report.sequence.reserve(static_cast<std::size_t>(nu) + 1);
  for (int kappa = 0; kappa <= nu; ++kappa)
    report.sequence.push_back(slice.rows[nu][kappa] / dims.at(nu, kappa));
  for (int kappa = 1; kappa <= nu; ++kappa)
    if (report.sequence[kappa] > report.sequence[kappa - 1]) report.violations.push_back(kappa);
  return report;
}

}  // namespace trilab
