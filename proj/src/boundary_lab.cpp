#include "trilab/boundary_lab.hpp"

#include "trilab/dimensions.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

namespace trilab {

namespace {

long floor_long(const Rat& t) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::invalid_argument("path position out of range");
  return q.get_si();
}

}  // namespace

long PathSpec::kappa(long nu) const {
  if (nu < 0) throw std::invalid_argument("negative level");
  long k = 0;
  switch (kind) {
    case Kind::ConstantM: k = m; break;
    case Kind::Diagonal: k = nu; break;
    case Kind::Scaled:
      switch (scaling) {
        case Scaling::Linear: k = floor_long(s * Rat(nu) + Rat(1, 2)); break;
        case Scaling::Log:
          k = nu == 0 ? 0
                      : static_cast<long>(floorl(rat_ldouble(s) * logl(static_cast<long double>(nu)) + 0.5L));
          break;
        case Scaling::Power:
          k = static_cast<long>(floorl(
              rat_ldouble(s) * powl(static_cast<long double>(nu), rat_ldouble(exponent)) + 0.5L));
          break;
      }
      break;
  }
  return std::clamp(k, 0L, nu);
}

PathSpec PathSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    parts.push_back(text.substr(pos, comma == std::string::npos ? comma : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  auto bad = [&]() {
    return std::invalid_argument("cannot parse path '" + text +
                                 "' (expected m=<int>, m=inf, or s=<rational>[,c=nu|log|pow:<e>])");
  };

  PathSpec p;
  if (parts.empty() || parts[0].size() < 3) throw bad();
  if (parts[0].rfind("m=", 0) == 0) {
    if (parts.size() != 1) throw bad();
    const std::string val = parts[0].substr(2);
    if (val == "inf") {
      p.kind = Kind::Diagonal;
      return p;
    }
    Rat r = parse_rat(val);
    if (r.get_den() != 1 || r < 0 || !r.get_num().fits_slong_p())
      throw std::invalid_argument("constant path position must be an integer >= 0");
    p.kind = Kind::ConstantM;
    p.m = r.get_num().get_si();
    return p;
  }
  if (parts[0].rfind("s=", 0) != 0) throw bad();
  p.kind = Kind::Scaled;
  p.s = parse_rat(parts[0].substr(2));
  if (p.s < 0) throw std::invalid_argument("path coefficient s must be >= 0");
  p.scaling = Scaling::Linear;
  p.exponent = Rat(1);
  if (parts.size() > 2) throw bad();
  if (parts.size() == 2) {
    const std::string& c = parts[1];
    if (c == "c=nu") {
      p.scaling = Scaling::Linear;
    } else if (c == "c=log") {
      p.scaling = Scaling::Log;
    } else if (c.rfind("c=pow:", 0) == 0) {
      p.scaling = Scaling::Power;
      p.exponent = parse_rat(c.substr(6));
      if (p.exponent <= 0 || p.exponent > 1)
        throw std::invalid_argument("power-path exponent must lie in (0,1]");
    } else {
      throw bad();
    }
  }
  return p;
}

std::string PathSpec::str() const {
  switch (kind) {
    case Kind::ConstantM: return "m=" + std::to_string(m);
    case Kind::Diagonal: return "m=inf";
    case Kind::Scaled:
      switch (scaling) {
        case Scaling::Linear: return "s=" + rat_str(s) + ",c=nu";
        case Scaling::Log: return "s=" + rat_str(s) + ",c=log";
        case Scaling::Power: return "s=" + rat_str(s) + ",c=pow:" + rat_str(exponent);
      }
  }
  throw std::runtime_error("unreachable path kind");
}

std::string verdict_str(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Undecided: return "undecided";
  }
  throw std::runtime_error("unreachable verdict");
}

namespace {

TraceSample make_sample(const MultiplicitySpec& tri, long nu, int kappa, int n_max, bool exact) {
  TraceSample smp;
  smp.nu = nu;
  smp.kappa = kappa;
  smp.exact_mode = exact;
  const NodeIndex target{static_cast<int>(nu), kappa};
  if (exact) {
    DimensionTable ext = extended_dimensions(tri, target);
    const Rat& root = ext.rows[0][0];
    smp.exact.depth = n_max;
    smp.exact.rows.resize(static_cast<std::size_t>(n_max) + 1);
    smp.window.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
      smp.exact.rows[n].resize(static_cast<std::size_t>(n) + 1);
      smp.window[n].resize(static_cast<std::size_t>(n) + 1);
      for (int k = 0; k <= n; ++k) {
        smp.exact.rows[n][k] = ext.rows[n][k] / root;
        smp.window[n][k] = rat_ldouble(smp.exact.rows[n][k]);
      }
    }
  } else {
    FloatWindow fw = float_window_kernel(tri, target, n_max);
    smp.window = std::move(fw.rows);
    smp.rel_error_bound = fw.rel_error_bound;
  }
  return smp;
}

void run_indexed(std::size_t count, int jobs, const std::function<void(std::size_t)>& work) {
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto body = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

ConvergenceTrace path_kernel_sequence(const MultiplicitySpec& tri, const PathSpec& path, int n_max,
                                      const std::vector<long>& nu_list, PrecisionMode mode,
                                      double tol, int window_count, int jobs) {
  if (n_max < 0) throw std::invalid_argument("negative window depth");
  if (nu_list.empty()) throw std::invalid_argument("empty level list");
  for (std::size_t i = 0; i < nu_list.size(); ++i) {
    if (nu_list[i] < n_max)
      throw std::invalid_argument("every sampled level must be at least the window depth");
    if (nu_list[i] > 100000000L) throw std::invalid_argument("sampled level too large");
    if (i > 0 && nu_list[i] <= nu_list[i - 1])
      throw std::invalid_argument("sampled levels must strictly increase");
  }
  if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");

  ConvergenceTrace out;
  out.path = path.str();
  out.n_max = n_max;
  out.samples.resize(nu_list.size());
  run_indexed(nu_list.size(), jobs, [&](std::size_t i) {
    const long nu = nu_list[i];
    const bool exact = mode == PrecisionMode::Exact || (mode == PrecisionMode::Auto && nu <= 500);
    out.samples[i] = make_sample(tri, nu, static_cast<int>(path.kappa(nu)), n_max, exact);
  });
  out.limit = estimate_limit(out.samples, tol, window_count);
  return out;
}

LimitEstimate estimate_limit(const std::vector<TraceSample>& samples, double tol,
                             int window_count) {
  if (window_count < 2) throw std::invalid_argument("decision window needs at least 2 samples");
  if (static_cast<int>(samples.size()) < window_count)
    throw std::invalid_argument("fewer samples than the decision window");

  auto delta = [](const TraceSample& a, const TraceSample& b) {
    long double d = 0;
    for (std::size_t n = 0; n < a.window.size(); ++n)
      for (std::size_t k = 0; k < a.window[n].size(); ++k)
        d = std::max(d, fabsl(a.window[n][k] - b.window[n][k]));
    return d;
  };

  std::vector<long double> steps;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    steps.push_back(delta(samples[i], samples[i + 1]));
  const std::size_t tail_len = static_cast<std::size_t>(window_count) - 1;
  const std::size_t first = steps.size() - tail_len;

  LimitEstimate est;
  est.tol = tol;
  est.window_count = window_count;
  est.values = samples.back().window;
  est.residual = 0;
  bool growing = true;
  for (std::size_t i = first; i < steps.size(); ++i) {
    est.residual = std::max(est.residual, steps[i]);
    if (i > first && steps[i] <= steps[i - 1]) growing = false;
  }
  if (est.residual <= static_cast<long double>(tol))
    est.verdict = Verdict::Converged;
  else if (growing && tail_len >= 2 && steps.back() >= 10 * steps[first])
    est.verdict = Verdict::Diverged;
  else
    est.verdict = Verdict::Undecided;
  return est;
}

DiscreteTraceReport discrete_boundary_check(const MultiplicitySpec& tri, const KernelArray& V,
                                            long m, int depth) {
  if (m < 0) throw std::invalid_argument("position index must be >= 0");
  if (depth < m) throw std::invalid_argument("depth must reach the tracked position");
  if (V.depth < depth) throw std::invalid_argument("kernel array shallower than requested depth");

  DimensionTable dims = dimensions(tri, depth);
  DiscreteTraceReport rep;
  rep.m = m;
  rep.depth = depth;
  const int mi = static_cast<int>(m);
  for (int n = mi; n <= depth; ++n) {
    Rat t = dims.rows[n][mi] * V.at(n, mi);
    if (t < 0 || t > 1)
      throw std::runtime_error("occupation probability outside [0,1] at level " +
                               std::to_string(n) + "; the kernel is not a normalized boundary kernel");
    rep.trace.push_back(t);
  }
  rep.final_gap = Rat(1) - rep.trace.back();
  return rep;
}

MartingaleStats martingale_experiment(TriangleName name, const std::map<std::string, Rat>& params,
                                      const BoundaryPoint& point,
                                      const std::vector<int>& checkpoints, int trials,
                                      unsigned long seed, PrecisionMode mode) {
  if (checkpoints.empty()) throw std::invalid_argument("no checkpoints requested");
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1) throw std::invalid_argument("checkpoints must be >= 1");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1])
      throw std::invalid_argument("checkpoints must strictly increase");
  }
  if (trials < 1) throw std::invalid_argument("need at least one trial");

  const int nu_max = checkpoints.back();
  const bool exact = mode == PrecisionMode::Exact || (mode == PrecisionMode::Auto && nu_max <= 500);
  const MultiplicitySpec tri = catalog_triangle(name, params);
  const Rat l00 = tri.left(0, 0);
  const double target = rat_double(boundary_coordinate(tri, extreme_kernel(name, params, point, 1)));

  MartingaleStats stats;
  stats.point = point.str();
  stats.target_coordinate = target;
  stats.trials = trials;
  stats.seed = seed;
  stats.exact_mode = exact;
  std::mt19937_64 rng(seed);

  if (exact) {
    const DimensionTable dims = dimensions(tri, nu_max);
    const KernelArray V = extreme_kernel(name, params, point, nu_max);
    for (int nu : checkpoints) {
      std::vector<Rat> cdf(static_cast<std::size_t>(nu) + 1);
      Rat acc(0);
      for (int k = 0; k <= nu; ++k) {
        acc += dims.rows[nu][k] * V.at(nu, k);
        cdf[k] = acc;
      }
      if (acc != 1)
        throw std::runtime_error("level law of the kernel does not sum to 1 at level " +
                                 std::to_string(nu));
      const ForwardSlice slice = forward_weights(tri, {1, 0}, nu);
      double sum = 0, mx = 0;
      for (int t = 0; t < trials; ++t) {
        const Rat u = dyadic_uniform(rng);
        const int k = static_cast<int>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        const Rat coord = l00 * slice.rows[nu][k] / dims.rows[nu][k];
        const double dev = std::fabs(rat_double(coord) - target);
        sum += dev;
        mx = std::max(mx, dev);
      }
      stats.checkpoints.push_back({nu, sum / trials, mx});
    }
    return stats;
  }

  std::vector<int> levels(checkpoints.begin(), checkpoints.end());
  const FloatSlices from_root = float_forward_rows(tri, {0, 0}, levels);
  const FloatSlices from_10 = float_forward_rows(tri, {1, 0}, levels);
  stats.rel_error_bound = std::max(from_root.rel_error_bound, from_10.rel_error_bound);
  const long double ln2 = logl(2.0L);
  const long double l00f = rat_ldouble(l00);

  for (int nu : checkpoints) {
    const ScaledRow& drow = from_root.levels.at(nu);
    const ScaledRow& erow = from_10.levels.at(nu);
    // Level-law weights via logs: log D + log V, shifted by the maximum.
    std::vector<long double> logw(static_cast<std::size_t>(nu) + 1,
                                  -std::numeric_limits<long double>::infinity());
    long double top = -std::numeric_limits<long double>::infinity();
    for (int k = 0; k <= nu; ++k) {
      if (!(drow.row[k] > 0)) continue;
      const long double lv = log_extreme_value(name, params, point, nu, k);
      if (lv == -std::numeric_limits<long double>::infinity()) continue;
      logw[k] = logl(drow.row[k]) + drow.exp2 * ln2 + lv;
      top = std::max(top, logw[k]);
    }
    if (top == -std::numeric_limits<long double>::infinity())
      throw std::runtime_error("level law vanished at level " + std::to_string(nu));
    std::vector<long double> cdf(static_cast<std::size_t>(nu) + 1, 0.0L);
    long double acc = 0;
    for (int k = 0; k <= nu; ++k) {
      acc += expl(logw[k] - top);
      cdf[k] = acc;
    }
    std::uniform_real_distribution<long double> uni(0.0L, acc);
    double sum = 0, mx = 0;
    for (int t = 0; t < trials; ++t) {
      const long double u = uni(rng);
      const int k = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const long double coord =
          k <= nu && drow.row[k] > 0
              ? l00f * ldexpl(erow.row[k] / drow.row[k], erow.exp2 - drow.exp2)
              : 0.0L;
      const double dev = std::fabs(static_cast<double>(coord) - target);
      sum += dev;
      mx = std::max(mx, dev);
    }
    stats.checkpoints.push_back({nu, sum / trials, mx});
  }
  return stats;
}

std::vector<PhaseRow> phase_transition_sweep(
    const std::function<MultiplicitySpec(const Rat&)>& family, const std::vector<Rat>& values,
    const PathSpec& path, int n_max, const std::vector<long>& nu_list, PrecisionMode mode,
    double tol, int window_count, int jobs) {
  if (!family) throw std::invalid_argument("triangle family must be callable");
  if (values.empty()) throw std::invalid_argument("no parameter values to sweep");
  if (n_max < 1) throw std::invalid_argument("sweep window must reach level 1");

  std::vector<PhaseRow> rows(values.size());
  run_indexed(values.size(), jobs, [&](std::size_t i) {
    const MultiplicitySpec tri = family(values[i]);
    const ConvergenceTrace trace =
        path_kernel_sequence(tri, path, n_max, nu_list, mode, tol, window_count, 1);
    PhaseRow& row = rows[i];
    row.param = values[i];
    row.verdict = trace.limit.verdict;
    row.residual = trace.limit.residual;
    row.first_column.resize(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) row.first_column[n] = trace.limit.values[n][0];
    row.coordinate = rat_ldouble(tri.left(0, 0)) * trace.limit.values[1][0];
  });
  return rows;
}

}  // namespace trilab
