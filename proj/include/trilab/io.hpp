#pragma once

#include "trilab/boundary_lab.hpp"
#include "trilab/markov.hpp"
#include "trilab/moments.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace trilab {

/// Artifacts use insertion-ordered JSON so identical runs serialize to
/// identical bytes. All rational values are exact "p/q" strings; all floating
/// values are decimal strings rendered at an explicit digit count.
using Json = nlohmann::ordered_json;

/// Attach a flat metadata object (command line, seed, precision, digits) to a
/// payload. Every artifact the CLI emits carries one.
Json with_meta(Json payload, const std::map<std::string, std::string>& meta);

std::string render(const Json& artifact);  // dump + trailing newline

/// Write to the given path, or to stdout when the path is empty.
void write_text(const std::string& path, const std::string& text);

// --- exact tables ---------------------------------------------------------
Json dimensions_json(const DimensionTable& table);
Json kernel_json(const KernelArray& V);
KernelArray kernel_from_json(const Json& artifact);
Json triangle_table_json(const MultiplicitySpec& tri, int depth);

/// Comment-prefixed metadata lines followed by one line per level.
std::string table_csv(const std::vector<std::vector<Rat>>& rows,
                      const std::map<std::string, std::string>& meta);

// --- verdict-style reports ------------------------------------------------
Json harmonic_json(const HarmonicReport& report);
Json column_build_json(const ColumnBuildResult& result,
                       const std::optional<double>& inversion_residual, int digits);
Json monotone_json(const MonotoneReport& report);

// --- Markov artifacts -------------------------------------------------------
Json level_law_json(const LevelLaw& law);
Json trajectory_json(const Trajectory& path);

// --- boundary laboratory artifacts ------------------------------------------
Json trace_json(const ConvergenceTrace& trace, int digits);
std::string trace_csv(const ConvergenceTrace& trace, int digits,
                      const std::map<std::string, std::string>& meta);
Json discrete_trace_json(const DiscreteTraceReport& report);
Json martingale_json(const MartingaleStats& stats, int digits);
Json phase_json(const std::vector<PhaseRow>& rows, int digits);
std::string phase_csv(const std::vector<PhaseRow>& rows, int digits,
                      const std::map<std::string, std::string>& meta);

// --- moment artifacts -------------------------------------------------------
Json inversion_json(const InversionResult& result, int digits);
Json condition_json(const ConditionReport& report);

// --- triangle specifications ------------------------------------------------
/// {"name": <catalog name>, "params": {...}} or
/// {"name": "custom", "left": <expr in n,k>, "right": <expr>, "label": ...}.
MultiplicitySpec triangle_from_json(const Json& spec);
MultiplicitySpec triangle_from_file(const std::string& path);

/// Build a triangle from arithmetic expressions in n and k.
MultiplicitySpec custom_triangle(const std::string& label, const std::string& left_expr,
                                 const std::string& right_expr);

}  // namespace trilab
