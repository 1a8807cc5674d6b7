#include "trilab/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace trilab;

namespace {

struct Opts {
  // triangle selection
  std::string triangle, q, alpha, spec, left, right;
  // command inputs
  int depth = -1;
  std::string target;
  std::string point;
  int level = -1;
  long m = -1;
  bool m_set = false;
  std::string seq, seq_file;
  std::string atoms;
  int grid = 0;
  std::string points, weights;
  std::string path, nus, checkpoints, values, param;
  int n_max = 5;
  int trials = 100;
  double tol = 1e-6;
  double accept_tol = 1e-6;
  int window = 3;
  std::string in;
  // run configuration
  std::string format = "json";
  std::string out;
  unsigned long long seed = 0;
  std::string precision = "auto";
  int digits = 12;
  int jobs = 1;
};

int default_digits() {
  const char* env = std::getenv("TRILAB_DIGITS");
  if (!env || !*env) return 12;
  try {
    const int d = std::stoi(env);
    if (d < 1 || d > 50) throw std::out_of_range("digits");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("TRILAB_DIGITS must be an integer in 1..50");
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(sep, pos);
    out.push_back(text.substr(pos, next == std::string::npos ? next : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + " from '" + s + "'");
  }
}

NodeIndex parse_node(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2)
    throw std::invalid_argument("node must be given as 'level,position', got '" + text + "'");
  const long n = parse_long(parts[0], "node level");
  const long k = parse_long(parts[1], "node position");
  if (n < 0 || k < 0 || k > n || n > 100000000L)
    throw std::invalid_argument("node (" + text + ") outside the triangle");
  return NodeIndex{static_cast<int>(n), static_cast<int>(k)};
}

std::map<std::string, Rat> cli_params(const Opts& o) {
  std::map<std::string, Rat> params;
  if (!o.q.empty()) params["q"] = parse_rat(o.q);
  if (!o.alpha.empty()) params["alpha"] = parse_rat(o.alpha);
  return params;
}

MultiplicitySpec make_triangle(const Opts& o) {
  const int sources = (!o.triangle.empty()) + (!o.spec.empty()) + (!o.left.empty() || !o.right.empty());
  if (sources != 1)
    throw std::invalid_argument(
        "choose exactly one triangle source: --triangle <name>, --spec <file>, or --left/--right");
  if (!o.spec.empty()) return triangle_from_file(o.spec);
  if (!o.left.empty() || !o.right.empty()) {
    if (o.left.empty() || o.right.empty())
      throw std::invalid_argument("custom triangles need both --left and --right");
    return custom_triangle("custom", o.left, o.right);
  }
  return catalog_triangle(parse_triangle_name(o.triangle), cli_params(o));
}

std::pair<TriangleName, std::map<std::string, Rat>> catalog_only(const Opts& o,
                                                                 const char* verb) {
  if (o.triangle.empty() || !o.spec.empty() || !o.left.empty() || !o.right.empty())
    throw std::invalid_argument(std::string(verb) + " needs a catalog triangle (--triangle)");
  return {parse_triangle_name(o.triangle), cli_params(o)};
}

PrecisionMode parse_precision(const std::string& s) {
  if (s == "auto") return PrecisionMode::Auto;
  if (s == "exact") return PrecisionMode::Exact;
  if (s == "float") return PrecisionMode::Float;
  throw std::invalid_argument("--precision must be auto, exact, or float");
}

std::vector<Rat> parse_seq(const Opts& o) {
  std::string text = o.seq;
  if (!o.seq_file.empty()) {
    if (!text.empty()) throw std::invalid_argument("give --seq or --seq-file, not both");
    std::ifstream in(o.seq_file);
    if (!in) throw std::invalid_argument("cannot open sequence file '" + o.seq_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    for (char& c : text)
      if (c == '\n' || c == '\t' || c == ' ') c = ',';
  }
  if (text.empty()) throw std::invalid_argument("a sequence is required (--seq or --seq-file)");
  std::vector<Rat> seq;
  for (const std::string& tok : split(text, ','))
    if (!tok.empty()) seq.push_back(parse_rat(tok));
  if (seq.empty()) throw std::invalid_argument("empty sequence");
  return seq;
}

std::vector<long> parse_longs(const std::string& text, const std::string& what) {
  std::vector<long> out;
  for (const std::string& tok : split(text, ','))
    if (!tok.empty()) out.push_back(parse_long(tok, what));
  if (out.empty()) throw std::invalid_argument("no values given for " + what);
  return out;
}

std::vector<BoundaryPoint> parse_points(const std::string& text, TriangleName name) {
  std::vector<BoundaryPoint> out;
  for (const std::string& tok : split(text, ';'))
    if (!tok.empty()) out.push_back(BoundaryPoint::parse(tok, name));
  if (out.empty()) throw std::invalid_argument("no boundary points given");
  return out;
}

std::map<std::string, std::string> run_meta(const Opts& o, const std::string& command) {
  return {{"command", command},
          {"digits", std::to_string(o.digits)},
          {"precision", o.precision},
          {"seed", std::to_string(o.seed)}};
}

void emit(const Opts& o, const std::string& command, const Json& payload,
          const std::function<std::string(const std::map<std::string, std::string>&)>& csv = {}) {
  const auto meta = run_meta(o, command);
  if (o.format == "json") {
    write_text(o.out, render(with_meta(payload, meta)));
  } else if (o.format == "csv") {
    if (!csv) throw std::invalid_argument("this subcommand has no CSV form; use --format json");
    write_text(o.out, csv(meta));
  } else {
    throw std::invalid_argument("--format must be json or csv");
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input artifact '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void add_triangle_opts(CLI::App* cmd, Opts& o) {
  cmd->add_option("--triangle", o.triangle, "catalog triangle: pascal, q-pascal, stirling, stirling-inf, eulerian");
  cmd->add_option("--q", o.q, "ratio parameter for q-pascal");
  cmd->add_option("--alpha", o.alpha, "slope parameter for stirling");
  cmd->add_option("--spec", o.spec, "triangle spec JSON file");
  cmd->add_option("--left", o.left, "left multiplicity expression in n,k");
  cmd->add_option("--right", o.right, "right multiplicity expression in n,k");
}

void add_run_opts(CLI::App* cmd, Opts& o) {
  cmd->add_option("--format", o.format, "output format: json or csv (default json)");
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--digits", o.digits, "decimal digits for floating values");
  cmd->add_option("--precision", o.precision, "precision mode: auto, exact, float");
  cmd->add_option("--seed", o.seed, "random seed (recorded in artifacts)");
}

int require_depth(const Opts& o) {
  if (o.depth < 0) throw std::invalid_argument("--depth is required");
  return o.depth;
}

}  // namespace

int main(int argc, char** argv) {
  std::string command;
  for (int i = 0; i < argc; ++i) command += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"exact laboratory for weighted Pascal-like triangles and their boundary kernels"};
  app.require_subcommand(1);

  Opts o;
  try {
    o.digits = default_digits();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::map<std::string, std::function<int()>> runners;

  {
    auto* cmd = app.add_subcommand("dims", "dimension table of a triangle");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--depth", o.depth, "table depth");
    runners["dims"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const DimensionTable table = dimensions(tri, require_depth(o));
      emit(o, command, dimensions_json(table),
           [&](const auto& meta) { return table_csv(table.rows, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("ext-dims", "extended dimension table of a target node");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--target", o.target, "target node 'level,position'")->required();
    runners["ext-dims"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const DimensionTable table = extended_dimensions(tri, parse_node(o.target));
      emit(o, command, dimensions_json(table),
           [&](const auto& meta) { return table_csv(table.rows, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("kernel", "Martin kernel of a target node, exact");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--target", o.target, "target node 'level,position'")->required();
    runners["kernel"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const KernelArray V = martin_kernel(tri, parse_node(o.target));
      emit(o, command, kernel_json(V),
           [&](const auto& meta) { return table_csv(V.rows, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("extreme", "closed-form boundary kernel of a catalog point");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--point", o.point, "boundary point, e.g. x=1/3, m=2, m=inf, s=1, trivial-0")
        ->required();
    cmd->add_option("--depth", o.depth, "kernel depth");
    runners["extreme"] = [&]() {
      const auto [name, params] = catalog_only(o, "extreme");
      const BoundaryPoint point = BoundaryPoint::parse(o.point, name);
      const KernelArray V = extreme_kernel(name, params, point, require_depth(o));
      emit(o, command, kernel_json(V),
           [&](const auto& meta) { return table_csv(V.rows, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("verify", "check harmonicity of a kernel artifact");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--in", o.in, "kernel artifact (JSON) to verify")->required();
    cmd->add_option("--depth", o.depth, "verify down to this level (default: full depth)");
    runners["verify"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const KernelArray V = kernel_from_json(load_json(o.in));
      const int depth = o.depth < 0 ? V.depth : o.depth;
      const HarmonicReport report = verify_harmonic(tri, V, depth);
      emit(o, command, harmonic_json(report));
      return report.ok() ? 0 : 2;
    };
  }
  {
    auto* cmd = app.add_subcommand(
        "cm-check", "membership of a first column via iterated generalized differences");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--seq", o.seq, "first column as comma-separated rationals");
    cmd->add_option("--seq-file", o.seq_file, "file with the first column");
    cmd->add_option("--depth", o.depth, "window depth (default: sequence length - 1)");
    runners["cm-check"] = [&]() {
      Opts local = o;
      if (local.triangle.empty() && local.spec.empty() && local.left.empty())
        local.triangle = "pascal";
      const MultiplicitySpec tri = make_triangle(local);
      const std::vector<Rat> seq = parse_seq(o);
      const int depth = o.depth < 0 ? static_cast<int>(seq.size()) - 1 : o.depth;
      std::optional<double> cross;
      ColumnBuildResult built;
      if (tri.name() == "q-pascal") {
        CmCheckResult res = qpascal_cm_check(tri.params().at("q"), seq, depth);
        built = std::move(res.build);
        cross = res.inversion_residual;
      } else {
        if (seq.size() < static_cast<std::size_t>(depth) + 1)
          throw std::invalid_argument("sequence shorter than the requested depth");
        built = kernel_from_first_column(tri, {seq.begin(), seq.begin() + depth + 1}, depth);
      }
      emit(o, command, column_build_json(built, cross, o.digits));
      return built.verdict == Membership::Accept ? 0 : 2;
    };
  }
  {
    auto* cmd = app.add_subcommand("transpose", "mirror-image triangle, tabulated");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--depth", o.depth, "tabulation depth");
    runners["transpose"] = [&]() {
      const MultiplicitySpec tri = transpose(make_triangle(o));
      emit(o, command, triangle_table_json(tri, require_depth(o)));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("backtrans", "backward transition law at a node");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--target", o.target, "node 'level,position' with level >= 1")->required();
    runners["backtrans"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const NodeIndex node = parse_node(o.target);
      const DimensionTable dims = dimensions(tri, node.n);
      const LevelLaw law = backward_transition(tri, dims, node.n, node.k);
      emit(o, command, level_law_json(law));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("marginal", "level law of a kernel's Markov measure");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--level", o.level, "level whose law to compute")->required();
    cmd->add_option("--point", o.point, "boundary point whose kernel drives the law");
    cmd->add_option("--in", o.in, "kernel artifact (JSON) instead of --point");
    runners["marginal"] = [&]() {
      if (o.level < 0) throw std::invalid_argument("--level must be >= 0");
      KernelArray V;
      MultiplicitySpec tri = make_triangle(o);
      if (!o.point.empty()) {
        const auto [name, params] = catalog_only(o, "marginal --point");
        V = extreme_kernel(name, params, BoundaryPoint::parse(o.point, name), o.level);
      } else if (!o.in.empty()) {
        V = kernel_from_json(load_json(o.in));
        if (V.depth < o.level)
          throw std::invalid_argument("kernel artifact is shallower than the requested level");
      } else {
        throw std::invalid_argument("marginal needs --point or --in");
      }
      const DimensionTable dims = dimensions(tri, o.level);
      const LevelLaw law = marginal_law(tri, dims, V, o.level);
      emit(o, command, level_law_json(law));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("sample", "sample one backward trajectory from a node");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--target", o.target, "start node 'level,position'")->required();
    runners["sample"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const NodeIndex start = parse_node(o.target);
      const DimensionTable dims = dimensions(tri, start.n);
      const Trajectory traj = sample_backward_path(tri, dims, start, o.seed);
      emit(o, command, trajectory_json(traj));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("monotone", "position-monotonicity of kernels seen from a level");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--nu", o.level, "target level")->required();
    cmd->add_option("--n", o.n_max, "observation level (default 1)");
    runners["monotone"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const MonotoneReport report = check_monotone_in_kappa(tri, o.level, o.n_max);
      emit(o, command, monotone_json(report));
      return report.ok() ? 0 : 2;
    };
  }
  {
    auto* cmd = app.add_subcommand("sweep", "kernel windows along a path to infinity");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--path", o.path, "path spec: m=<int>, m=inf, or s=<rat>[,c=nu|log|pow:<e>]")
        ->required();
    cmd->add_option("--nus", o.nus, "comma-separated target levels, strictly increasing")
        ->required();
    cmd->add_option("--n-max", o.n_max, "window depth (default 5)");
    cmd->add_option("--tol", o.tol, "convergence tolerance (default 1e-6)");
    cmd->add_option("--window", o.window, "decision window size (default 3)");
    cmd->add_option("--jobs", o.jobs, "parallel sample evaluations (default 1)");
    runners["sweep"] = [&]() {
      const MultiplicitySpec tri = make_triangle(o);
      const ConvergenceTrace trace =
          path_kernel_sequence(tri, PathSpec::parse(o.path), o.n_max, parse_longs(o.nus, "level"),
                               parse_precision(o.precision), o.tol, o.window, o.jobs);
      emit(o, command, trace_json(trace, o.digits),
           [&](const auto& meta) { return trace_csv(trace, o.digits, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("discrete-check",
                                   "occupation trace certifying a discrete boundary point");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--point", o.point, "boundary point whose kernel to trace")->required();
    cmd->add_option("--depth", o.depth, "trace depth");
    auto* mopt = cmd->add_option("--m", o.m, "tracked position (default: the point's own index)");
    cmd->callback([&o, mopt]() { o.m_set = mopt->count() > 0; });
    runners["discrete-check"] = [&]() {
      const auto [name, params] = catalog_only(o, "discrete-check");
      const BoundaryPoint point = BoundaryPoint::parse(o.point, name);
      const int depth = require_depth(o);
      long m = o.m;
      if (!o.m_set) {
        const bool has_index = !point.infinite &&
                               (point.kind == BoundaryPoint::Kind::QPascalM ||
                                point.kind == BoundaryPoint::Kind::StirlingM ||
                                point.kind == BoundaryPoint::Kind::EulerianM);
        if (!has_index)
          throw std::invalid_argument("this point has no integer position; give --m explicitly");
        m = point.m;
        if (m < 0) throw std::invalid_argument("tracked position must be >= 0; give --m explicitly");
      }
      const MultiplicitySpec tri = catalog_triangle(name, params);
      const KernelArray V = extreme_kernel(name, params, point, depth);
      const DiscreteTraceReport report = discrete_boundary_check(tri, V, m, depth);
      emit(o, command, discrete_trace_json(report));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("martingale",
                                   "sampled concentration of kernel coordinates along levels");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--point", o.point, "boundary point driving the level laws")->required();
    cmd->add_option("--checkpoints", o.checkpoints, "comma-separated levels to report")
        ->required();
    cmd->add_option("--trials", o.trials, "samples per checkpoint (default 100)");
    runners["martingale"] = [&]() {
      const auto [name, params] = catalog_only(o, "martingale");
      const BoundaryPoint point = BoundaryPoint::parse(o.point, name);
      std::vector<int> cps;
      for (long v : parse_longs(o.checkpoints, "checkpoint")) {
        if (v < 1 || v > 100000000L) throw std::invalid_argument("checkpoint out of range");
        cps.push_back(static_cast<int>(v));
      }
      const MartingaleStats stats = martingale_experiment(
          name, params, point, cps, o.trials, o.seed, parse_precision(o.precision));
      emit(o, command, martingale_json(stats, o.digits));
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("phase", "limit kernels across a parameter sweep");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--param", o.param, "catalog parameter to sweep (q or alpha)")->required();
    cmd->add_option("--values", o.values, "comma-separated parameter values")->required();
    cmd->add_option("--path", o.path, "path spec shared by all sweep rows")->required();
    cmd->add_option("--nus", o.nus, "comma-separated target levels")->required();
    cmd->add_option("--n-max", o.n_max, "window depth (default 5)");
    cmd->add_option("--tol", o.tol, "convergence tolerance (default 1e-6)");
    cmd->add_option("--window", o.window, "decision window size (default 3)");
    cmd->add_option("--jobs", o.jobs, "parallel rows (default 1)");
    runners["phase"] = [&]() {
      if (o.triangle.empty())
        throw std::invalid_argument("phase needs a catalog triangle (--triangle)");
      const TriangleName name = parse_triangle_name(o.triangle);
      const std::string param = o.param;
      std::vector<Rat> values;
      for (const std::string& tok : split(o.values, ','))
        if (!tok.empty()) values.push_back(parse_rat(tok));
      auto family = [name, param](const Rat& v) {
        return catalog_triangle(name, {{param, v}});
      };
      const std::vector<PhaseRow> rows = phase_transition_sweep(
          family, values, PathSpec::parse(o.path), o.n_max, parse_longs(o.nus, "level"),
          parse_precision(o.precision), o.tol, o.window, o.jobs);
      emit(o, command, phase_json(rows, o.digits),
           [&](const auto& meta) { return phase_csv(rows, o.digits, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("synth", "convex combination of boundary kernels");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--points", o.points, "semicolon-separated boundary points")->required();
    cmd->add_option("--weights", o.weights, "comma-separated rational weights summing to 1")
        ->required();
    cmd->add_option("--depth", o.depth, "kernel depth");
    runners["synth"] = [&]() {
      const auto [name, params] = catalog_only(o, "synth");
      const int depth = require_depth(o);
      const std::vector<BoundaryPoint> points = parse_points(o.points, name);
      std::vector<Rat> weights;
      for (const std::string& tok : split(o.weights, ','))
        if (!tok.empty()) weights.push_back(parse_rat(tok));
      std::vector<KernelArray> kernels;
      kernels.reserve(points.size());
      for (const BoundaryPoint& p : points)
        kernels.push_back(extreme_kernel(name, params, p, depth));
      const KernelArray V = synthesize_mixture(kernels, weights);
      emit(o, command, kernel_json(V),
           [&](const auto& meta) { return table_csv(V.rows, meta); });
      return 0;
    };
  }
  {
    auto* cmd = app.add_subcommand("invert", "recover a mixing measure from a first column");
    add_triangle_opts(cmd, o);
    add_run_opts(cmd, o);
    cmd->add_option("--seq", o.seq, "first column as comma-separated rationals");
    cmd->add_option("--seq-file", o.seq_file, "file with the first column");
    cmd->add_option("--atoms", o.atoms, "semicolon-separated candidate boundary points");
    cmd->add_option("--grid", o.grid, "unit-interval grid 0..N (x = j/N candidates)");
    cmd->add_option("--depth", o.depth, "fit depth (default: sequence length - 1)");
    cmd->add_option("--tol", o.accept_tol, "acceptance tolerance (default 1e-6)");
    runners["invert"] = [&]() {
      const auto [name, params] = catalog_only(o, "invert");
      const std::vector<Rat> seq = parse_seq(o);
      const int depth = o.depth < 0 ? static_cast<int>(seq.size()) - 1 : o.depth;
      if (seq.size() < static_cast<std::size_t>(depth) + 1)
        throw std::invalid_argument("sequence shorter than the requested depth");
      std::vector<BoundaryPoint> atoms;
      if (o.grid > 0) {
        if (!o.atoms.empty()) throw std::invalid_argument("give --atoms or --grid, not both");
        if (name != TriangleName::Pascal)
          throw std::invalid_argument("--grid builds x = j/N atoms; only the unit-multiplicity "
                                      "triangle has that boundary");
        for (int j = 0; j <= o.grid; ++j)
          atoms.push_back(BoundaryPoint::pascal_x(Rat(j) / Rat(o.grid)));
      } else {
        atoms = parse_points(o.atoms, name);
      }
      const InversionResult result = invert_mixture(
          name, params, {seq.begin(), seq.begin() + depth + 1}, atoms, depth, o.accept_tol);
      Json payload = inversion_json(result, o.digits);
      if (o.out.empty()) {
        payload["condition"] = condition_json(result.condition);
        emit(o, command, payload);
      } else {
        emit(o, command, payload);
        write_text(o.out + ".diag.json",
                   render(with_meta(condition_json(result.condition), run_meta(o, command))));
      }
      return result.representable ? 0 : 2;
    };
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    const std::string chosen = app.get_subcommands().front()->get_name();
    return runners.at(chosen)();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
