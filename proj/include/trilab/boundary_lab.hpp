#pragma once

#include "trilab/catalog.hpp"
#include "trilab/float_eval.hpp"
#include "trilab/kernel.hpp"

#include <functional>
#include <string>
#include <vector>

namespace trilab {

/// A route to infinity: the target position kappa as a function of the target
/// level nu. Written forms:
///   "m=5"          constant position 5
///   "m=inf"        the diagonal kappa = nu
///   "s=1/3,c=nu"   kappa = round(s * nu)
///   "s=2,c=log"    kappa = round(s * ln nu)
///   "s=1,c=pow:1/2"  kappa = round(s * nu^(1/2))
/// Results are clamped into [0, nu].
struct PathSpec {
  enum class Kind { ConstantM, Diagonal, Scaled };
  enum class Scaling { Linear, Log, Power };

  Kind kind = Kind::ConstantM;
  long m = 0;                        // ConstantM
  Rat s;                             // Scaled: coefficient
  Scaling scaling = Scaling::Linear; // Scaled: growth shape
  Rat exponent;                      // Scaled/Power only, in (0,1]

  long kappa(long nu) const;
  static PathSpec parse(const std::string& text);
  std::string str() const;
};

enum class PrecisionMode { Auto, Exact, Float };
enum class Verdict { Converged, Diverged, Undecided };

std::string verdict_str(Verdict v);

/// The kernel of one target node restricted to a fixed shallow window.
struct TraceSample {
  long nu = 0;
  int kappa = 0;
  bool exact_mode = false;
  KernelArray exact;  // populated only in exact mode
  std::vector<std::vector<long double>> window;  // rows 0..n_max, always set
  long double rel_error_bound = 0;
};

struct LimitEstimate {
  Verdict verdict = Verdict::Undecided;
  std::vector<std::vector<long double>> values;  // window of the last sample
  long double residual = 0;  // largest step among the deciding tail
  double tol = 0;
  int window_count = 0;
};

struct ConvergenceTrace {
  std::string path;
  int n_max = 0;
  std::vector<TraceSample> samples;
  LimitEstimate limit;
};

/// Kernel windows of the nodes (nu, kappa(nu)) along a path, one per entry of
/// `nu_list` (strictly increasing, each >= n_max). Mode Auto switches from
/// exact rationals to the deep-sweep engine once nu exceeds 500. `jobs`
/// bounds the worker threads used to compute samples concurrently.
ConvergenceTrace path_kernel_sequence(const MultiplicitySpec& tri, const PathSpec& path,
                                      int n_max, const std::vector<long>& nu_list,
                                      PrecisionMode mode = PrecisionMode::Auto,
                                      double tol = 1e-6, int window_count = 3, int jobs = 1);

/// Decide convergence from the tail of a sample sequence: the largest
/// entrywise step among the last `window_count` samples decides. Steps below
/// `tol` converge; steps that grow and end an order of magnitude above their
/// start diverge; anything else is undecided.
LimitEstimate estimate_limit(const std::vector<TraceSample>& samples, double tol,
                             int window_count);

/// Exact occupation trace of one position: probabilities P(K_n = m) under the
/// Markov law of kernel V, for n = m..depth. A point of the discrete part of
/// the boundary is certified by this trace rising to 1.
struct DiscreteTraceReport {
  long m = 0;
  int depth = 0;
  std::vector<Rat> trace;  // index i holds the probability at level m + i
  Rat final_gap;           // 1 - trace.back()
};

DiscreteTraceReport discrete_boundary_check(const MultiplicitySpec& tri, const KernelArray& V,
                                            long m, int depth);

/// Sample K_nu from the level law of an extreme kernel, read off the sampled
/// node's own kernel coordinate, and measure how far it sits from the
/// coordinate of the kernel it was drawn from. Concentration of the mean
/// deviation near 0 as nu grows is the conditional-limit effect this
/// experiment exposes.
struct MartingaleCheckpoint {
  int nu = 0;
  double mean_dev = 0;
  double max_dev = 0;
};

struct MartingaleStats {
  std::string point;
  double target_coordinate = 0;
  std::vector<MartingaleCheckpoint> checkpoints;
  int trials = 0;
  unsigned long seed = 0;
  bool exact_mode = false;
  long double rel_error_bound = 0;
};

MartingaleStats martingale_experiment(TriangleName name, const std::map<std::string, Rat>& params,
                                      const BoundaryPoint& point,
                                      const std::vector<int>& checkpoints, int trials,
                                      unsigned long seed,
                                      PrecisionMode mode = PrecisionMode::Auto);

/// One limit computation per parameter value of a triangle family, along a
/// fixed path. Reports the limit's first column and boundary coordinate so a
/// qualitative change across the sweep stands out.
struct PhaseRow {
  Rat param;
  Verdict verdict = Verdict::Undecided;
  std::vector<long double> first_column;  // V_{n,0} of the limit, n = 0..n_max
  long double coordinate = 0;             // left(0,0) * V_{1,0} of the limit
  long double residual = 0;
};

std::vector<PhaseRow> phase_transition_sweep(
    const std::function<MultiplicitySpec(const Rat&)>& family, const std::vector<Rat>& values,
    const PathSpec& path, int n_max, const std::vector<long>& nu_list,
    PrecisionMode mode = PrecisionMode::Auto, double tol = 1e-6, int window_count = 3,
    int jobs = 1);

}  // namespace trilab
