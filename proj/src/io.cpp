#include "trilab/io.hpp"

#include "trilab/expr.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace trilab {

namespace {

Json node_json(const NodeIndex& v) { return Json::array({v.n, v.k}); }

Json rat_rows_json(const std::vector<std::vector<Rat>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (const Rat& v : row) r.push_back(rat_str(v));
    out.push_back(std::move(r));
  }
  return out;
}

Json float_rows_json(const std::vector<std::vector<long double>>& rows, int digits) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (long double v : row) r.push_back(decimal_str(v, digits));
    out.push_back(std::move(r));
  }
  return out;
}

std::string csv_meta(const std::map<std::string, std::string>& meta) {
  std::ostringstream os;
  for (const auto& [key, value] : meta) os << "# " << key << "=" << value << "\n";
  return os.str();
}

}  // namespace

Json with_meta(Json payload, const std::map<std::string, std::string>& meta) {
  Json m = Json::object();
  for (const auto& [key, value] : meta) m[key] = value;
  payload["meta"] = std::move(m);
  return payload;
}

std::string render(const Json& artifact) { return artifact.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing output file '" + path + "'");
}

Json dimensions_json(const DimensionTable& table) {
  Json j;
  j["type"] = "dimensions";
  j["base"] = node_json(table.base);
  j["depth"] = table.depth;
  j["rows"] = rat_rows_json(table.rows);
  return j;
}

Json kernel_json(const KernelArray& V) {
  Json j;
  j["type"] = "kernel";
  j["depth"] = V.depth;
  j["values"] = rat_rows_json(V.rows);
  return j;
}

KernelArray kernel_from_json(const Json& artifact) {
  if (!artifact.is_object() || artifact.value("type", "") != std::string("kernel"))
    throw std::invalid_argument("artifact is not a kernel");
  KernelArray V;
  V.depth = artifact.at("depth").get<int>();
  const Json& values = artifact.at("values");
  if (!values.is_array() || values.size() != static_cast<std::size_t>(V.depth) + 1)
    throw std::invalid_argument("kernel artifact has wrong row count");
  V.rows.resize(values.size());
  for (std::size_t n = 0; n < values.size(); ++n) {
    if (!values[n].is_array() || values[n].size() != n + 1)
      throw std::invalid_argument("kernel artifact row " + std::to_string(n) + " has wrong length");
    V.rows[n].reserve(n + 1);
    for (const auto& cell : values[n]) V.rows[n].push_back(parse_rat(cell.get<std::string>()));
  }
  return V;
}

Json triangle_table_json(const MultiplicitySpec& tri, int depth) {
  if (depth < 0) throw std::invalid_argument("negative depth");
  Json j;
  j["type"] = "triangle";
  j["name"] = tri.name();
  Json params = Json::object();
  for (const auto& [key, value] : tri.params()) params[key] = rat_str(value);
  j["params"] = std::move(params);
  j["depth"] = depth;
  std::vector<std::vector<Rat>> left(depth + 1), right(depth + 1);
  for (int n = 0; n <= depth; ++n)
    for (int k = 0; k <= n; ++k) {
      left[n].push_back(tri.left(n, k));
      right[n].push_back(tri.right(n, k));
    }
  j["left"] = rat_rows_json(left);
  j["right"] = rat_rows_json(right);
  return j;
}

std::string table_csv(const std::vector<std::vector<Rat>>& rows,
                      const std::map<std::string, std::string>& meta) {
  std::ostringstream os;
  os << csv_meta(meta);
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << rat_str(row[k]);
    os << "\n";
  }
  return os.str();
}

Json harmonic_json(const HarmonicReport& report) {
  Json j;
  j["type"] = "harmonic-report";
  j["ok"] = report.ok();
  j["normalized"] = report.normalized;
  Json neg = Json::array();
  for (const auto& v : report.negative) neg.push_back(node_json(v));
  j["negative"] = std::move(neg);
  Json bad = Json::array();
  for (const auto& violation : report.violations) {
    Json b;
    b["node"] = node_json(violation.node);
    b["residual"] = rat_str(violation.residual);
    bad.push_back(std::move(b));
  }
  j["violations"] = std::move(bad);
  return j;
}

Json column_build_json(const ColumnBuildResult& result,
                       const std::optional<double>& inversion_residual, int digits) {
  Json j;
  j["type"] = "membership-check";
  j["verdict"] = result.verdict == Membership::Accept ? "accept" : "reject";
  j["depth"] = result.array.depth;
  j["first_negative"] =
      result.first_negative ? node_json(*result.first_negative) : Json(nullptr);
  j["inversion_residual"] = inversion_residual
                                ? Json(decimal_str(static_cast<long double>(*inversion_residual), digits))
                                : Json(nullptr);
  j["values"] = rat_rows_json(result.array.rows);
  return j;
}

Json monotone_json(const MonotoneReport& report) {
  Json j;
  j["type"] = "monotone-report";
  j["nu"] = report.nu;
  j["n"] = report.n;
  j["ok"] = report.ok();
  Json seq = Json::array();
  for (const Rat& v : report.sequence) seq.push_back(rat_str(v));
  j["sequence"] = std::move(seq);
  j["violations"] = report.violations;
  return j;
}

Json level_law_json(const LevelLaw& law) {
  Json j;
  j["type"] = "level-law";
  j["level"] = law.level;
  Json probs = Json::array();
  for (const Rat& p : law.probs) probs.push_back(rat_str(p));
  j["probs"] = std::move(probs);
  return j;
}

Json trajectory_json(const Trajectory& path) {
  Json j;
  j["type"] = "trajectory";
  j["start"] = node_json(path.start);
  j["states"] = path.states;
  return j;
}

Json trace_json(const ConvergenceTrace& trace, int digits) {
  Json j;
  j["type"] = "trace";
  j["path"] = trace.path;
  j["n_max"] = trace.n_max;
  Json samples = Json::array();
  for (const TraceSample& smp : trace.samples) {
    Json s;
    s["nu"] = smp.nu;
    s["kappa"] = smp.kappa;
    s["mode"] = smp.exact_mode ? "exact" : "float";
    s["rel_error_bound"] = decimal_str(smp.rel_error_bound, 3);
    s["window"] = float_rows_json(smp.window, digits);
    if (smp.exact_mode) s["values"] = rat_rows_json(smp.exact.rows);
    samples.push_back(std::move(s));
  }
  j["samples"] = std::move(samples);
  Json limit;
  limit["verdict"] = verdict_str(trace.limit.verdict);
  limit["residual"] = decimal_str(trace.limit.residual, 3);
  limit["tol"] = decimal_str(static_cast<long double>(trace.limit.tol), 3);
  limit["window_count"] = trace.limit.window_count;
  limit["values"] = float_rows_json(trace.limit.values, digits);
  j["limit"] = std::move(limit);
  return j;
}

std::string trace_csv(const ConvergenceTrace& trace, int digits,
                      const std::map<std::string, std::string>& meta) {
  std::ostringstream os;
  os << csv_meta(meta);
  os << "nu,n,k,value\n";
  for (const TraceSample& smp : trace.samples)
    for (std::size_t n = 0; n < smp.window.size(); ++n)
      for (std::size_t k = 0; k < smp.window[n].size(); ++k)
        os << smp.nu << "," << n << "," << k << "," << decimal_str(smp.window[n][k], digits)
           << "\n";
  return os.str();
}

Json discrete_trace_json(const DiscreteTraceReport& report) {
  Json j;
  j["type"] = "discrete-trace";
  j["m"] = report.m;
  j["depth"] = report.depth;
  Json trace = Json::array();
  for (const Rat& t : report.trace) trace.push_back(rat_str(t));
  j["trace"] = std::move(trace);
  j["final_gap"] = rat_str(report.final_gap);
  return j;
}

Json martingale_json(const MartingaleStats& stats, int digits) {
  Json j;
  j["type"] = "martingale";
  j["point"] = stats.point;
  j["target_coordinate"] = decimal_str(static_cast<long double>(stats.target_coordinate), digits);
  j["trials"] = stats.trials;
  j["seed"] = stats.seed;
  j["mode"] = stats.exact_mode ? "exact" : "float";
  j["rel_error_bound"] = decimal_str(stats.rel_error_bound, 3);
  Json rows = Json::array();
  for (const MartingaleCheckpoint& c : stats.checkpoints) {
    Json r;
    r["nu"] = c.nu;
    r["mean_dev"] = decimal_str(static_cast<long double>(c.mean_dev), digits);
    r["max_dev"] = decimal_str(static_cast<long double>(c.max_dev), digits);
    rows.push_back(std::move(r));
  }
  j["checkpoints"] = std::move(rows);
  return j;
}

Json phase_json(const std::vector<PhaseRow>& rows, int digits) {
  Json j;
  j["type"] = "phase-sweep";
  Json rs = Json::array();
  for (const PhaseRow& row : rows) {
    Json r;
    r["param"] = rat_str(row.param);
    r["verdict"] = verdict_str(row.verdict);
    r["coordinate"] = decimal_str(row.coordinate, digits);
    r["residual"] = decimal_str(row.residual, 3);
    Json col = Json::array();
    for (long double v : row.first_column) col.push_back(decimal_str(v, digits));
    r["first_column"] = std::move(col);
    rs.push_back(std::move(r));
  }
  j["rows"] = std::move(rs);
  return j;
}

std::string phase_csv(const std::vector<PhaseRow>& rows, int digits,
                      const std::map<std::string, std::string>& meta) {
  std::ostringstream os;
  os << csv_meta(meta);
  os << "param,verdict,coordinate,residual";
  const std::size_t cols = rows.empty() ? 0 : rows.front().first_column.size();
  for (std::size_t n = 0; n < cols; ++n) os << ",v" << n;
  os << "\n";
  for (const PhaseRow& row : rows) {
    os << rat_str(row.param) << "," << verdict_str(row.verdict) << ","
       << decimal_str(row.coordinate, digits) << "," << decimal_str(row.residual, 3);
    for (long double v : row.first_column) os << "," << decimal_str(v, digits);
    os << "\n";
  }
  return os.str();
}

Json inversion_json(const InversionResult& result, int digits) {
  Json j;
  j["type"] = "mixing-measure";
  Json atoms = Json::array();
  for (const auto& [point, weight] : result.measure.atoms) {
    Json a;
    a["point"] = point.str();
    a["weight"] = decimal_str(static_cast<long double>(weight), digits);
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  j["residual"] = decimal_str(static_cast<long double>(result.measure.residual), 3);
  j["representable"] = result.representable;
  j["note"] = result.measure.note;
  return j;
}

Json condition_json(const ConditionReport& report) {
  Json j;
  j["type"] = "condition-report";
  j["rows"] = report.rows;
  j["atoms"] = report.atom_count;
  j["depth_atom_ratio"] = decimal_str(static_cast<long double>(report.depth_atom_ratio), 6);
  j["min_column_gap"] = decimal_str(static_cast<long double>(report.min_column_gap), 6);
  j["warning"] = report.ill_conditioned_warning;
  return j;
}

MultiplicitySpec custom_triangle(const std::string& label, const std::string& left_expr,
                                 const std::string& right_expr) {
  auto left = std::make_shared<const Expr>(Expr::parse(left_expr));
  auto right = std::make_shared<const Expr>(Expr::parse(right_expr));
  return MultiplicitySpec(
      label.empty() ? "custom" : label,
      [left](int n, int k) { return left->eval(n, k); },
      [right](int n, int k) { return right->eval(n, k); });
}

MultiplicitySpec triangle_from_json(const Json& spec) {
  if (!spec.is_object() || !spec.contains("name"))
    throw std::invalid_argument("triangle spec must be an object with a \"name\"");
  const std::string name = spec.at("name").get<std::string>();
  if (name == "custom") {
    if (!spec.contains("left") || !spec.contains("right"))
      throw std::invalid_argument("custom triangle spec needs \"left\" and \"right\" expressions");
    return custom_triangle(spec.value("label", std::string("custom")),
                           spec.at("left").get<std::string>(),
                           spec.at("right").get<std::string>());
  }
  std::map<std::string, Rat> params;
  if (spec.contains("params")) {
    const Json& p = spec.at("params");
    if (!p.is_object()) throw std::invalid_argument("\"params\" must be an object");
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (it.value().is_string())
        params[it.key()] = parse_rat(it.value().get<std::string>());
      else if (it.value().is_number_integer())
        params[it.key()] = Rat(it.value().get<long>());
      else
        throw std::invalid_argument("parameter '" + it.key() +
                                    "' must be a rational string or an integer");
    }
  }
  return catalog_triangle(parse_triangle_name(name), params);
}

MultiplicitySpec triangle_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open triangle spec '" + path + "'");
  Json spec;
  try {
    in >> spec;
  } catch (const std::exception& e) {
    throw std::invalid_argument("malformed triangle spec '" + path + "': " + e.what());
  }
  return triangle_from_json(spec);
}

}  // namespace trilab
