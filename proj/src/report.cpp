#include "binci/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace binci {

namespace {

std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

Json optional_fraction(const std::optional<Fraction>& f) {
  return f ? Json(f->to_string()) : Json(nullptr);
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json interval_json(const Interval& iv) {
  Json j;
  j["method"] = method_name(iv.method);
  j["lower"] = format_number(iv.lower);
  j["upper"] = format_number(iv.upper);
  j["crossed"] = iv.crossed;
  Json in;
  in["n"] = iv.inputs.n;
  in["y"] = iv.inputs.y;
  in["alpha"] = iv.inputs.alpha;
  if (iv.inputs.v_lower) in["v_lower"] = *iv.inputs.v_lower;
  if (iv.inputs.v_upper) in["v_upper"] = *iv.inputs.v_upper;
  if (iv.inputs.w) in["w"] = optional_fraction(iv.inputs.w);
  if (iv.inputs.w_tilde) in["w_tilde"] = optional_fraction(iv.inputs.w_tilde);
  if (iv.inputs.bits) in["bits"] = *iv.inputs.bits;
  if (iv.inputs.n1) in["n1"] = *iv.inputs.n1;
  if (iv.inputs.n2) in["n2"] = *iv.inputs.n2;
  if (iv.inputs.y1) in["y1"] = *iv.inputs.y1;
  if (iv.inputs.y2) in["y2"] = *iv.inputs.y2;
  j["inputs"] = std::move(in);
  return j;
}

std::string interval_text(const Interval& iv) {
  std::ostringstream os;
  os << "method=" << method_name(iv.method) << " n=" << iv.inputs.n << " y=" << iv.inputs.y
     << " alpha=" << format_number(iv.inputs.alpha);
  if (iv.inputs.bits) os << " bits=" << *iv.inputs.bits;
  if (iv.inputs.n1) os << " n1=" << *iv.inputs.n1 << " n2=" << *iv.inputs.n2;
  if (iv.inputs.y1) os << " y1=" << *iv.inputs.y1 << " y2=" << *iv.inputs.y2;
  if (iv.inputs.w) os << " w=" << iv.inputs.w->to_string();
  if (iv.inputs.w_tilde) os << " w_tilde=" << iv.inputs.w_tilde->to_string();
  if (iv.inputs.v_lower) os << " v_lower=" << format_number(*iv.inputs.v_lower);
  if (iv.inputs.v_upper) os << " v_upper=" << format_number(*iv.inputs.v_upper);
  os << "\nlower=" << format_number(iv.lower) << "\nupper=" << format_number(iv.upper) << "\n";
  if (iv.crossed) os << "crossed=true\n";
  return os.str();
}

std::string coverage_csv(const CoverageCurve& c) {
  std::ostringstream os;
  os << "# " << kCoverageSchema << " method=" << c.label << " n=" << c.n
     << " alpha=" << format_number(c.alpha) << "\n";
  os << "theta,upper_noncoverage,lower_noncoverage,expected_length\n";
  for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
    os << format_number(c.theta_grid[i]) << ',' << format_number(c.upper_noncoverage[i]) << ','
       << format_number(c.lower_noncoverage[i]) << ',' << format_number(c.expected_length[i])
       << '\n';
  }
  return os.str();
}

Json coverage_json(const CoverageCurve& c) {
  Json j;
  j["schema"] = "binci-coverage-json v1";
  j["method"] = c.label;
  j["n"] = c.n;
  j["alpha"] = c.alpha;
  j["points"] = c.theta_grid.size();
  const double half = 0.5 * c.alpha;
  double max_upper = 0.0, max_lower = 0.0;
  for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
    max_upper = std::max(max_upper, c.upper_noncoverage[i]);
    max_lower = std::max(max_lower, c.lower_noncoverage[i]);
  }
  j["max_upper_noncoverage"] = format_number(max_upper);
  j["max_lower_noncoverage"] = format_number(max_lower);
  j["equi_tailed_bound"] = format_number(half);
  Json rows = Json::array();
  for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
    rows.push_back(Json{{"theta", format_number(c.theta_grid[i])},
                        {"upper_noncoverage", format_number(c.upper_noncoverage[i])},
                        {"lower_noncoverage", format_number(c.lower_noncoverage[i])},
                        {"expected_length", format_number(c.expected_length[i])}});
  }
  j["curve"] = std::move(rows);
  return j;
}

std::string simulation_csv(const SimulationReport& r) {
  std::ostringstream os;
  os << "# " << kSimulationSchema << " source=" << r.source << " n=" << r.n
     << " theta=" << format_number(r.theta) << " alpha=" << format_number(r.alpha)
     << " m=" << r.m << " seed=" << r.seed << "\n";
  os << "k,upper_prop,lower_prop,average_length\n";
  for (const auto& c : r.checkpoints) {
    os << c.k << ',' << format_number(c.upper_prop) << ',' << format_number(c.lower_prop) << ','
       << format_number(c.average_length) << '\n';
  }
  return os.str();
}

Json simulation_json(const SimulationReport& r) {
  Json j;
  j["schema"] = "binci-simulation-json v1";
  j["source"] = r.source;
  j["source_kind"] = r.source_kind;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["theta"] = r.theta;
  j["m"] = r.m;
  j["seed"] = r.seed;
  j["upper_prop"] = format_number(r.upper_prop);
  j["lower_prop"] = format_number(r.lower_prop);
  j["average_length"] = format_number(r.average_length);
  j["target"] = format_number(0.5 * r.alpha);
  return j;
}

Json domination_json(const DominationReport& r) {
  Json j;
  j["method"] = r.method;
  j["n"] = r.n;
  j["alpha"] = r.alpha;
  j["pairs_checked"] = r.pairs_checked;
  j["containment_violations"] = r.containment_violations;
  j["strictness_violations"] = r.strictness_violations;
  j["worst_slack"] = format_number(r.worst_slack);
  j["worst_upper_slack"] = format_number(r.worst_upper_slack);
  j["worst_lower_slack"] = format_number(r.worst_lower_slack);
  j["dominates_cp"] = r.dominated();
  return j;
}

Json refinement_json(const RefinementReport& r) {
  Json j;
  j["statistic"] = r.statistic;
  j["is_refinement"] = r.is_refinement;
  Json w = Json::array();
  for (const auto& x : r.witnesses) {
    auto point = [](const LatticePoint& p) {
      return Json{{"y1", p.y1}, {"y2", p.y2}, {"y", p.y1 + p.y2}, {"value", p.value.to_string()}};
    };
    w.push_back(Json{{"smaller_count", point(x.smaller_count)},
                     {"larger_count", point(x.larger_count)},
                     {"kind", x.tie ? "tie" : "inversion"}});
  }
  j["witnesses"] = std::move(w);
  return j;
}

std::size_t CsvTable::column(const std::string& name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::invalid_argument("no CSV column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::istringstream is(text);
  std::string line;
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    return out;
  };
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      t.comments.push_back(line.substr(2));
      continue;
    }
    if (t.columns.empty()) {
      t.columns = split(line);
      continue;
    }
    std::vector<double> row;
    for (const auto& cell : split(line)) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size()) throw std::invalid_argument("ragged CSV row");
    t.rows.push_back(std::move(row));
  }
  if (t.columns.empty()) throw std::invalid_argument("CSV has no header");
  return t;
}

std::string render_svg_chart(const CsvTable& table, const ChartOptions& o) {
  const std::size_t xi = table.column(o.x_column);
  std::vector<std::size_t> yis;
  for (const auto& c : o.y_columns) yis.push_back(table.column(c));

  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 0.0;
  bool first = true;
  for (const auto& row : table.rows) {
    if (first) {
      xmin = xmax = row[xi];
      first = false;
    }
    xmin = std::min(xmin, row[xi]);
    xmax = std::max(xmax, row[xi]);
    for (auto yi : yis) ymax = std::max(ymax, row[yi]), ymin = std::min(ymin, row[yi]);
  }
  if (o.reference) ymax = std::max(ymax, *o.reference);
  if (ymax <= ymin) ymax = ymin + 1.0;
  if (xmax <= xmin) xmax = xmin + 1.0;
  ymax *= 1.05;

  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = o.width - left - right;
  const double ph = o.height - top - bottom;
  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return top + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << o.width
     << "\" height=\"" << o.height << "\" viewBox=\"0 0 " << o.width << ' ' << o.height
     << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << o.width << "\" height=\"" << o.height
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed2(left) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
     << xml_escape(o.title) << "</text>\n";
  // Axes.
  os << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top + ph) << "\" x2=\""
     << fixed2(left + pw) << "\" y2=\"" << fixed2(top + ph) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top) << "\" x2=\"" << fixed2(left)
     << "\" y2=\"" << fixed2(top + ph) << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << fixed2(px(xv)) << "\" y=\"" << fixed2(top + ph + 18)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
       << format_number(xv) << "</text>\n";
    os << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(py(yv) + 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
       << format_number(yv) << "</text>\n";
  }
  os << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"" << fixed2(o.height - 10.0)
     << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
     << xml_escape(o.x_column) << "</text>\n";
  if (o.reference) {
    os << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(py(*o.reference)) << "\" x2=\""
       << fixed2(left + pw) << "\" y2=\"" << fixed2(py(*o.reference))
       << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
    os << "<text x=\"" << fixed2(left + pw - 4) << "\" y=\"" << fixed2(py(*o.reference) - 4)
       << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" fill=\"gray\">"
       << xml_escape(o.reference_label) << "</text>\n";
  }
  for (std::size_t s = 0; s < yis.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
      if (r) os << ' ';
      os << fixed2(px(table.rows[r][xi])) << ',' << fixed2(py(table.rows[r][yis[s]]));
    }
    os << "\"/>\n";
    const double ly = top + 14.0 + 16.0 * static_cast<double>(s);
    os << "<line x1=\"" << fixed2(left + 10) << "\" y1=\"" << fixed2(ly - 4) << "\" x2=\""
       << fixed2(left + 30) << "\" y2=\"" << fixed2(ly - 4) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << fixed2(left + 36) << "\" y=\"" << fixed2(ly)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(o.y_columns[s])
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace binci
