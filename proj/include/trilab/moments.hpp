#pragma once

#include "trilab/catalog.hpp"
#include "trilab/kernel.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trilab {

/// Pointwise convex combination of kernels sharing a depth. Harmonicity and
/// normalization survive by linearity, so mixtures stay inside the membership
/// class their components certify.
KernelArray synthesize_mixture(const std::vector<KernelArray>& kernels,
                               const std::vector<Rat>& weights);

/// Discrete measure on boundary points recovered by the simplex solver,
/// reported with the moment misfit it achieved.
struct MixingMeasure {
  std::vector<std::pair<BoundaryPoint, double>> atoms;
  double residual = 0;  // largest entrywise misfit of the fitted first column
  std::string note;
};

/// Shape diagnostics of the fitting matrix (one column per candidate atom,
/// one row per level of the first column).
struct ConditionReport {
  int rows = 0;
  int atom_count = 0;
  double depth_atom_ratio = 0;
  double min_column_gap = 0;  // smallest pairwise sup-distance between columns
  bool ill_conditioned_warning = false;
};

struct InversionResult {
  MixingMeasure measure;
  ConditionReport condition;
  bool representable = false;  // residual within the acceptance tolerance
};

/// Recover nonnegative weights summing to 1 over the candidate atoms so that
/// the convex combination of their first columns matches `first_col` in least
/// squares. A residual above `accept_tol` flags the sequence as not
/// representable over the given atoms (which never rules out other atoms).
InversionResult invert_mixture(TriangleName name, const std::map<std::string, Rat>& params,
                               const std::vector<Rat>& first_col,
                               const std::vector<BoundaryPoint>& atoms, int depth,
                               double accept_tol = 1e-6);

/// Classical complete-monotonicity check of a sequence with first entry 1:
/// all iterated forward differences must stay nonnegative on the available
/// window. Exactly the unit-multiplicity instance of kernel_from_first_column,
/// and necessarily a finite-window verdict.
ColumnBuildResult hausdorff_check(const std::vector<Rat>& first_col);

struct CmCheckResult {
  ColumnBuildResult build;
  /// For accepted sequences: misfit of re-expressing the sequence over the
  /// geometric atoms m = 0..depth (cross-check of the two memberships).
  std::optional<double> inversion_residual;
};

/// Generalized complete-monotonicity for the geometric-weight triangle with
/// ratio q in (0,1): iterated generalized differences of the first column must
/// stay nonnegative on the window of the given depth.
CmCheckResult qpascal_cm_check(const Rat& q, const std::vector<Rat>& first_col, int depth);

/// min ||A w - b||_2 over the probability simplex, by projected gradient with
/// deterministic uniform start. A is row-major, rows x cols.
std::vector<double> nnls_simplex(const std::vector<std::vector<double>>& A,
                                 const std::vector<double>& b, double grad_tol = 1e-10,
                                 long max_iter = 100000);

}  // namespace trilab
