#include "trilab/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace trilab {

KernelArray synthesize_mixture(const std::vector<KernelArray>& kernels,
                               const std::vector<Rat>& weights) {
  if (kernels.empty()) throw std::invalid_argument("mixture needs at least one kernel");
  if (kernels.size() != weights.size())
    throw std::invalid_argument("one weight per kernel required");
  const int depth = kernels.front().depth;
  Rat total(0);
  for (const Rat& w : weights) {
    if (w < 0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("mixture weights must sum to 1, got " + rat_str(total));
  for (const KernelArray& V : kernels)
    if (V.depth != depth) throw std::invalid_argument("mixture components must share a depth");

  KernelArray out;
  out.depth = depth;
  out.rows.resize(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n) {
    out.rows[n].assign(static_cast<std::size_t>(n) + 1, Rat(0));
    for (std::size_t j = 0; j < kernels.size(); ++j)
      for (int k = 0; k <= n; ++k) out.rows[n][k] += weights[j] * kernels[j].rows[n][k];
  }
  return out;
}

namespace {

// Euclidean projection onto the probability simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> u) {
  std::vector<double> sorted = u;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double csum = 0, tau = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    csum += sorted[j];
    const double t = (csum - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - t > 0) tau = t;
  }
  for (double& x : u) x = std::max(0.0, x - tau);
  return u;
}

}  // namespace

std::vector<double> nnls_simplex(const std::vector<std::vector<double>>& A,
                                 const std::vector<double>& b, double grad_tol, long max_iter) {
  if (A.empty() || A.front().empty()) throw std::invalid_argument("empty design matrix");
  const std::size_t rows = A.size();
  const std::size_t cols = A.front().size();
  if (b.size() != rows) throw std::invalid_argument("right-hand side length mismatch");
  for (const auto& row : A)
    if (row.size() != cols) throw std::invalid_argument("ragged design matrix");

  auto apply = [&](const std::vector<double>& w) {
    std::vector<double> out(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      out[i] = std::inner_product(A[i].begin(), A[i].end(), w.begin(), 0.0);
    return out;
  };
  auto apply_t = [&](const std::vector<double>& r) {
    std::vector<double> out(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) out[j] += A[i][j] * r[i];
    return out;
  };

  // Lipschitz constant of the gradient: top eigenvalue of A^T A by a
  // deterministic power iteration.
  std::vector<double> v(cols, 1.0 / std::sqrt(static_cast<double>(cols)));
  double lip = 0;
  for (int it = 0; it < 100; ++it) {
    std::vector<double> w = apply_t(apply(v));
    const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
    if (norm == 0) break;
    lip = norm;
    for (std::size_t j = 0; j < cols; ++j) v[j] = w[j] / norm;
  }
  if (lip == 0) return std::vector<double>(cols, 1.0 / static_cast<double>(cols));
  lip *= 1.01;  // safety margin keeps the step a descent step

  // Accelerated projected gradient with adaptive restart: the momentum
  // sequence handles the nearly collinear columns geometric atom families
  // produce, where the plain iteration stalls far from the optimum.
  auto objective = [&](const std::vector<double>& x) {
    const std::vector<double> r = apply(x);
    double f = 0;
    for (std::size_t i = 0; i < rows; ++i) f += (r[i] - b[i]) * (r[i] - b[i]);
    return 0.5 * f;
  };

  std::vector<double> w(cols, 1.0 / static_cast<double>(cols));
  std::vector<double> y = w;
  double t = 1.0;
  double best_f = objective(w);
  std::vector<double> best = w;
  for (long it = 0; it < max_iter; ++it) {
    const std::vector<double> r = apply(y);
    std::vector<double> resid(rows);
    for (std::size_t i = 0; i < rows; ++i) resid[i] = r[i] - b[i];
    const std::vector<double> grad = apply_t(resid);
    std::vector<double> step(cols);
    for (std::size_t j = 0; j < cols; ++j) step[j] = y[j] - grad[j] / lip;
    std::vector<double> next = project_simplex(std::move(step));

    // Fixed-point residual of the projected step: zero exactly at the optimum.
    double moved = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double d = next[j] - y[j];
      moved += d * d;
    }
    const double f_next = objective(next);
    if (f_next < best_f) {
      best_f = f_next;
      best = next;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    if (f_next > objective(w)) {
      // Momentum overshot: restart it from the current iterate.
      y = next;
      t = 1.0;
    } else {
      for (std::size_t j = 0; j < cols; ++j)
        y[j] = next[j] + ((t - 1.0) / t_next) * (next[j] - w[j]);
      t = t_next;
    }
    w = std::move(next);
    if (lip * std::sqrt(moved) < grad_tol) break;
  }
  return best;
}

InversionResult invert_mixture(TriangleName name, const std::map<std::string, Rat>& params,
                               const std::vector<Rat>& first_col,
                               const std::vector<BoundaryPoint>& atoms, int depth,
                               double accept_tol) {
  if (atoms.empty()) throw std::invalid_argument("empty atom set");
  if (depth < 1) throw std::invalid_argument("inversion needs depth >= 1");
  if (first_col.size() != static_cast<std::size_t>(depth) + 1)
    throw std::invalid_argument("first column must provide exactly depth+1 entries");
  if (first_col[0] != 1) throw std::invalid_argument("first column must start at 1");
  if (accept_tol <= 0) throw std::invalid_argument("acceptance tolerance must be positive");

  const std::size_t rows = static_cast<std::size_t>(depth) + 1;
  const std::size_t cols = atoms.size();
  std::vector<std::vector<double>> A(rows, std::vector<double>(cols, 0.0));
  for (std::size_t j = 0; j < cols; ++j) {
    const KernelArray Vj = extreme_kernel(name, params, atoms[j], depth);
    for (std::size_t n = 0; n < rows; ++n) A[n][j] = rat_double(Vj.rows[n][0]);
  }
  std::vector<double> b(rows);
  for (std::size_t n = 0; n < rows; ++n) b[n] = rat_double(first_col[n]);

  const std::vector<double> w = nnls_simplex(A, b);

  InversionResult out;
  out.condition.rows = static_cast<int>(rows);
  out.condition.atom_count = static_cast<int>(cols);
  out.condition.depth_atom_ratio = static_cast<double>(rows) / static_cast<double>(cols);
  double gap = cols > 1 ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t j2 = j + 1; j2 < cols; ++j2) {
      double d = 0;
      for (std::size_t n = 0; n < rows; ++n) d = std::max(d, std::fabs(A[n][j] - A[n][j2]));
      gap = std::min(gap, d);
    }
  out.condition.min_column_gap = gap;
  out.condition.ill_conditioned_warning =
      out.condition.depth_atom_ratio < 2.0 || (cols > 1 && gap < 1e-9);

  double residual = 0;
  for (std::size_t n = 0; n < rows; ++n) {
    double fit = 0;
    for (std::size_t j = 0; j < cols; ++j) fit += A[n][j] * w[j];
    residual = std::max(residual, std::fabs(fit - b[n]));
  }

  out.measure.residual = residual;
  for (std::size_t j = 0; j < cols; ++j) out.measure.atoms.emplace_back(atoms[j], w[j]);
  out.representable = residual <= accept_tol;
  out.measure.note = out.representable
                         ? "consistent up to depth " + std::to_string(depth) + " over " +
                               std::to_string(cols) + " atoms"
                         : "not representable over given atoms at tolerance " +
                               decimal_str(static_cast<long double>(accept_tol), 3);
  if (out.condition.ill_conditioned_warning)
    out.measure.note += "; warning: fewer than 2 sequence entries per atom or nearly "
                        "coincident atoms";
  return out;
}

ColumnBuildResult hausdorff_check(const std::vector<Rat>& first_col) {
  if (first_col.empty()) throw std::invalid_argument("empty sequence");
  const MultiplicitySpec pascal = catalog_triangle(TriangleName::Pascal);
  return kernel_from_first_column(pascal, first_col, static_cast<int>(first_col.size()) - 1);
}

CmCheckResult qpascal_cm_check(const Rat& q, const std::vector<Rat>& first_col, int depth) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("generalized check requires 0 < q < 1");
  if (depth < 0) throw std::invalid_argument("negative depth");
  if (first_col.size() < static_cast<std::size_t>(depth) + 1)
    throw std::invalid_argument("sequence shorter than the requested depth");
  const std::vector<Rat> col(first_col.begin(), first_col.begin() + depth + 1);
  const std::map<std::string, Rat> params{{"q", q}};
  const MultiplicitySpec tri = catalog_triangle(TriangleName::QPascal, params);

  CmCheckResult out;
  out.build = kernel_from_first_column(tri, col, depth);
  if (out.build.verdict == Membership::Accept && depth >= 1) {
    std::vector<BoundaryPoint> atoms;
    for (int m = 0; m <= depth; ++m) atoms.push_back(BoundaryPoint::qpascal_m(m));
    out.inversion_residual =
        invert_mixture(TriangleName::QPascal, params, col, atoms, depth).measure.residual;
  }
  return out;
}

}  // namespace trilab
