#pragma once

// Stable text renderings. CSV uses a versioned comment line; JSON keeps
// insertion order; charts are self-contained SVG 1.1.

#include <optional>
#include <string>
#include <vector>

#include "binci/analysis.hpp"
#include "binci/intervals.hpp"
#include "binci/simulation.hpp"
#include "json.hpp"

namespace binci {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCoverageSchema = "binci-coverage-csv v1";
inline constexpr const char* kSimulationSchema = "binci-simulation-csv v1";
inline constexpr const char* kCompareSchema = "binci-compare-csv v1";

// 12 significant digits, "%.12g".
std::string format_number(double x);

Json interval_json(const Interval& iv);
std::string interval_text(const Interval& iv);

std::string coverage_csv(const CoverageCurve& curve);
Json coverage_json(const CoverageCurve& curve);

std::string simulation_csv(const SimulationReport& report);
Json simulation_json(const SimulationReport& report);

Json domination_json(const DominationReport& report);
Json refinement_json(const RefinementReport& report);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable parse_csv(const std::string& text);

struct ChartOptions {
  std::string title;
  std::string x_column;
  std::vector<std::string> y_columns;
  std::optional<double> reference;  // horizontal reference line
  std::string reference_label;
  int width = 800;
  int height = 500;
};

// One polyline per y column; a pure function of the table and options.
std::string render_svg_chart(const CsvTable& table, const ChartOptions& options);

}  // namespace binci
