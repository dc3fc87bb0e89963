#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "binci/analysis.hpp"
#include "binci/aux_sources.hpp"
#include "binci/intervals.hpp"
#include "binci/korn.hpp"
#include "binci/report.hpp"
#include "binci/simulation.hpp"
#include "binci/split_sample.hpp"

namespace binci::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Flags = std::map<std::string, CLI::Option*>;

bool given(const Flags& flags, const std::string& name) {
  auto it = flags.find(name);
  return it != flags.end() && it->second->count() > 0;
}

// Every flag the user passed must be in `allowed`.
void reject_unused(const Flags& flags, const std::vector<std::string>& allowed,
                   const std::string& context) {
  for (const auto& [name, opt] : flags) {
    if (opt->count() == 0) continue;
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError("--" + name + " does not apply to " + context);
    }
  }
}

void require(const Flags& flags, const std::string& name, const std::string& context) {
  if (!given(flags, name)) throw UsageError(context + " needs --" + name);
}

std::vector<std::string> split_list(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct Formats {
  std::vector<std::string> names;

  bool has(const std::string& f) const {
    return std::find(names.begin(), names.end(), f) != names.end();
  }
};

Formats parse_formats(const std::string& text, const std::vector<std::string>& allowed) {
  Formats f;
  for (const auto& name : split_list(text, ",")) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError("unsupported format '" + name + "'");
    }
    if (!f.has(name)) f.names.push_back(name);
  }
  if (f.names.empty()) throw UsageError("no output format given");
  return f;
}

// Output prefix: --out (relative paths resolved against the output directory
// variable when it is set), else <dir>/<stem> when only the variable is set,
// else none (write to stdout).
std::optional<fs::path> output_prefix(const std::string& out_flag, const std::string& stem) {
  const char* env = std::getenv(kOutputDirEnv);
  const bool has_env = env != nullptr && *env != '\0';
  if (!out_flag.empty()) {
    fs::path p(out_flag);
    if (p.is_relative() && has_env) p = fs::path(env) / p;
    return p;
  }
  if (has_env) return fs::path(env) / stem;
  return std::nullopt;
}

void write_file(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << content;
  f.close();
  if (!f) throw IoError("cannot write " + path.string());
}

// (extension, content) pairs in format order.
using Outputs = std::vector<std::pair<std::string, std::string>>;

void emit(const Outputs& outputs, const std::optional<fs::path>& prefix, std::ostream& out) {
  if (!prefix) {
    if (outputs.size() != 1) {
      throw UsageError("several formats need --out or " + std::string(kOutputDirEnv));
    }
    out << outputs.front().second;
    return;
  }
  for (const auto& [ext, content] : outputs) {
    fs::path path = *prefix;
    path += "." + ext;
    write_file(path, content);
    out << "wrote " << path.string() << "\n";
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::vector<double> parse_grid(const std::string& spec, int n, double alpha) {
  if (spec == "default") return default_theta_grid(n, alpha);
  const std::string tag = "uniform:";
  if (spec.rfind(tag, 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(spec.substr(tag.size()), &used);
      if (used == spec.size() - tag.size() && k >= 1) return uniform_theta_grid(k);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("grid must be 'default' or 'uniform:K' with K >= 1");
}

std::optional<SplitDesign> design_from_flags(const Flags& flags, int n1, int n2,
                                             std::optional<int> n) {
  const bool a = given(flags, "n1");
  const bool b = given(flags, "n2");
  if (a != b) throw UsageError("--n1 and --n2 must be given together");
  if (!a) return std::nullopt;
  const SplitDesign d(n1, n2);
  if (n && *n != d.n()) throw UsageError("--n disagrees with --n1 + --n2");
  return d;
}

// ---------------------------------------------------------------- interval

struct IntervalArgs {
  std::string method;
  int n = 0;
  int y = 0;
  std::string bits;
  int y1 = 0, y2 = 0, n1 = 0, n2 = 0;
  double alpha = 0.05;
  double v = 0.0, v_lower = 0.0, v_upper = 0.0;
  std::string w;
  std::string format = "text";
};

// (n, y) from --n/--y or from --bits, with consistency checks.
std::pair<int, int> resolve_counts(const Flags& flags, const IntervalArgs& a) {
  if (given(flags, "bits")) {
    const auto seq = BernoulliSequence::from_string(a.bits);
    if (given(flags, "n") && a.n != seq.n()) throw UsageError("--n disagrees with the length of --bits");
    if (given(flags, "y") && a.y != seq.y()) throw UsageError("--y disagrees with the ones in --bits");
    return {seq.n(), seq.y()};
  }
  require(flags, "n", "method " + a.method);
  require(flags, "y", "method " + a.method);
  return {a.n, a.y};
}

Interval compute_interval(const Flags& flags, const IntervalArgs& a) {
  const Method m = parse_method(a.method);
  const std::vector<std::string> common{"method", "alpha", "format"};
  auto allow = [&](std::vector<std::string> extra) {
    extra.insert(extra.end(), common.begin(), common.end());
    reject_unused(flags, extra, "method " + a.method);
  };
  switch (m) {
    case Method::ClopperPearson: {
      allow({"n", "y", "bits"});
      const auto [n, y] = resolve_counts(flags, a);
      return cp_interval(n, y, a.alpha);
    }
    case Method::Stevens: {
      allow({"n", "y", "bits", "v"});
      require(flags, "v", "method stevens");
      const auto [n, y] = resolve_counts(flags, a);
      return stevens_interval(n, y, a.v, a.alpha);
    }
    case Method::StevensGeneralized: {
      allow({"n", "y", "bits", "v-lower", "v-upper"});
      require(flags, "v-lower", "method generalized");
      require(flags, "v-upper", "method generalized");
      const auto [n, y] = resolve_counts(flags, a);
      return stevens_generalized(n, y, a.v_lower, a.v_upper, a.alpha);
    }
    case Method::StevensMirrored: {
      allow({"n", "y", "bits", "v"});
      require(flags, "v", "method mirrored");
      const auto [n, y] = resolve_counts(flags, a);
      if (!(a.v >= 0.0 && a.v <= 1.0)) throw std::domain_error("v must lie in [0, 1]");
      Interval iv = stevens_generalized(n, y, 1.0 - a.v, a.v, a.alpha);
      iv.method = Method::StevensMirrored;
      return iv;
    }
    case Method::DiscreteAux: {
      allow({"n", "y", "bits", "w"});
      require(flags, "w", "method discrete");
      const auto [n, y] = resolve_counts(flags, a);
      const Fraction w = parse_fraction(a.w);
      if (w.num == WideCount(0)) throw std::domain_error("w must lie in (0, 1]");
      return discrete_aux_interval(n, y, w, Fraction{w.num - WideCount(1), w.den}, a.alpha);
    }
    case Method::Korn: {
      allow({"n", "y", "bits"});
      require(flags, "bits", "method korn");
      resolve_counts(flags, a);
      return korn_interval(BernoulliSequence::from_string(a.bits), a.alpha);
    }
    case Method::SplitSample: {
      allow({"n", "y", "y1", "y2", "n1", "n2"});
      require(flags, "y1", "method split");
      require(flags, "y2", "method split");
      const std::optional<int> n = given(flags, "n") ? std::optional<int>(a.n) : std::nullopt;
      auto design = design_from_flags(flags, a.n1, a.n2, n);
      if (!design) {
        if (!n) throw UsageError("method split needs --n or --n1/--n2");
        design = split_design(*n);
      }
      if (given(flags, "y") && a.y != a.y1 + a.y2) throw UsageError("--y disagrees with --y1 + --y2");
      return split_sample_interval(a.y1, a.y2, *design, a.alpha);
    }
  }
  throw UsageError("unhandled method");
}

// ---------------------------------------------------------------- procedures

struct ProcedureArgs {
  int n = 10;
  double alpha = 0.05;
  std::uint64_t levels = 0;
  int n1 = 0, n2 = 0;
  std::string grid = "default";
};

ProcedureSpec make_spec(const std::string& name, const Flags& flags, const ProcedureArgs& a) {
  ProcedureSpec spec;
  spec.method = parse_method(name);
  spec.n = a.n;
  spec.alpha = a.alpha;
  validate_alpha(a.alpha);
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (spec.method == Method::DiscreteAux) {
    require(flags, "levels", "method discrete");
    spec.levels = constant_levels(a.levels);
    spec.levels_label = "M=" + std::to_string(a.levels);
  }
  if (spec.method == Method::SplitSample) {
    spec.design = design_from_flags(flags, a.n1, a.n2, a.n);
    if (!spec.design) spec.design = split_design(a.n);
  }
  return spec;
}

void add_procedure_flags(CLI::App* cmd, Flags& flags, ProcedureArgs& a) {
  flags["n"] = cmd->add_option("--n", a.n, "number of trials");
  flags["alpha"] = cmd->add_option("--alpha", a.alpha, "1 - confidence level")->capture_default_str();
  flags["levels"] = cmd->add_option("--levels", a.levels, "discrete level count M (discrete only)");
  flags["n1"] = cmd->add_option("--n1", a.n1, "first split size (split only)");
  flags["n2"] = cmd->add_option("--n2", a.n2, "second split size (split only)");
  flags["grid"] = cmd->add_option("--grid", a.grid, "default | uniform:K")->capture_default_str();
}

// ---------------------------------------------------------------- coverage

struct OutputArgs {
  std::string out;
  std::string format;
};

int run_coverage(const Flags& flags, const std::string& method, const ProcedureArgs& p,
                 const OutputArgs& o, std::ostream& out) {
  require(flags, "n", "coverage");
  const ProcedureSpec spec = make_spec(method, flags, p);
  if (spec.method != Method::DiscreteAux && given(flags, "levels")) {
    throw UsageError("--levels does not apply to method " + method);
  }
  if (spec.method != Method::SplitSample && (given(flags, "n1") || given(flags, "n2"))) {
    throw UsageError("--n1/--n2 do not apply to method " + method);
  }
  const Formats formats = parse_formats(o.format, {"csv", "json", "svg"});
  const auto grid = parse_grid(p.grid, p.n, p.alpha);
  const Procedure proc(spec);
  const CoverageCurve curve = coverage_curve(proc, grid);
  const std::string csv = coverage_csv(curve);

  Outputs outputs;
  for (const auto& f : formats.names) {
    if (f == "csv") outputs.emplace_back("csv", csv);
    if (f == "json") outputs.emplace_back("json", dump(coverage_json(curve)));
    if (f == "svg") {
      ChartOptions chart;
      chart.title = curve.label + " non-coverage, n=" + std::to_string(p.n) +
                    ", alpha=" + format_number(p.alpha);
      chart.x_column = "theta";
      chart.y_columns = {"upper_noncoverage", "lower_noncoverage"};
      chart.reference = 0.5 * p.alpha;
      chart.reference_label = "alpha/2";
      outputs.emplace_back("svg", render_svg_chart(parse_csv(csv), chart));
    }
  }
  emit(outputs, output_prefix(o.out, "coverage-" + method + "-n" + std::to_string(p.n)), out);
  return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string source;
  double lambda = std::sqrt(2.0);
  int base = 2;
  std::string perm;
  std::uint64_t seed = 0;
  std::uint64_t aux_seed = 0;
  int n = 10;
  double theta = 0.3;
  double alpha = 0.05;
  std::uint64_t m = 100000;
  std::uint64_t checkpoint_every = 0;
};

std::vector<int> parse_perm(const std::string& text) {
  std::vector<int> perm;
  for (const auto& tok : split_list(text, " ,")) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw UsageError("--perm entries must be integers");
    perm.push_back(v);
  }
  return perm;
}

AuxSource make_source(const Flags& flags, const SimulateArgs& a) {
  const std::vector<std::string> base_flags{"source", "seed", "n", "theta", "alpha", "m",
                                            "checkpoint-every", "out", "format"};
  auto allow = [&](const std::string& extra) {
    auto list = base_flags;
    list.push_back(extra);
    reject_unused(flags, list, "source " + a.source);
  };
  if (a.source == "uniform") {
    allow("aux-seed");
    return AuxSource::seeded_uniform(given(flags, "aux-seed") ? a.aux_seed : a.seed + 1);
  }
  if (a.source == "weyl") {
    allow("lambda");
    if (!std::isfinite(a.lambda)) throw UsageError("--lambda must be finite");
    return AuxSource::weyl(a.lambda);
  }
  if (a.source == "vdc") {
    allow("base");
    if (a.base < 2) throw UsageError("--base must be >= 2");
    return AuxSource::van_der_corput(a.base);
  }
  if (a.source == "perm") {
    allow("perm");
    require(flags, "perm", "source perm");
    return AuxSource::periodic_perm(parse_perm(a.perm));
  }
  throw UsageError("unknown source '" + a.source + "' (uniform, weyl, vdc, perm)");
}

int run_simulate(const Flags& flags, const SimulateArgs& a, const OutputArgs& o,
                 std::ostream& out) {
  AuxSource source = make_source(flags, a);
  if (a.m < 1) throw UsageError("--m must be >= 1");
  const Formats formats = parse_formats(o.format, {"csv", "json", "svg"});
  const SimulationReport report =
      longrun_simulate(std::move(source), a.n, a.alpha, a.theta, a.m, a.seed, a.checkpoint_every);
  const std::string csv = simulation_csv(report);

  Outputs outputs;
  for (const auto& f : formats.names) {
    if (f == "csv") outputs.emplace_back("csv", csv);
    if (f == "json") outputs.emplace_back("json", dump(simulation_json(report)));
    if (f == "svg") {
      ChartOptions chart;
      chart.title = "running non-coverage, " + report.source + ", n=" + std::to_string(a.n) +
                    ", theta=" + format_number(a.theta);
      chart.x_column = "k";
      chart.y_columns = {"upper_prop", "lower_prop"};
      chart.reference = 0.5 * a.alpha;
      chart.reference_label = "alpha/2";
      outputs.emplace_back("svg", render_svg_chart(parse_csv(csv), chart));
    }
  }
  emit(outputs, output_prefix(o.out, "simulate-" + a.source + "-n" + std::to_string(a.n)), out);
  return kExitOk;
}

// ---------------------------------------------------------------- compare

std::string point_text(const LatticePoint& p) {
  return "(" + std::to_string(p.y1) + "," + std::to_string(p.y2) + ")[y=" +
         std::to_string(p.y1 + p.y2) + "]=" + p.value.to_string();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

constexpr std::size_t kMaxWitnessLines = 20;

void summarize_refinement(const RefinementReport& r, std::vector<std::string>& lines) {
  lines.push_back("refinement " + r.statistic + ": " + yes_no(r.is_refinement) +
                  (r.witnesses.empty() ? "" : " witnesses=" + std::to_string(r.witnesses.size())));
  for (std::size_t i = 0; i < r.witnesses.size() && i < kMaxWitnessLines; ++i) {
    const auto& w = r.witnesses[i];
    lines.push_back("  " + point_text(w.smaller_count) + (w.tie ? " == " : " > ") +
                    point_text(w.larger_count) + (w.tie ? " tie" : " inversion"));
  }
  if (r.witnesses.size() > kMaxWitnessLines) {
    lines.push_back("  ... " + std::to_string(r.witnesses.size() - kMaxWitnessLines) + " more");
  }
}

std::string domination_line(const DominationReport& r) {
  return "domination " + r.method + " within cp: " + yes_no(r.dominated()) +
         " pairs=" + std::to_string(r.pairs_checked) +
         " containment_violations=" + std::to_string(r.containment_violations) +
         " strictness_violations=" + std::to_string(r.strictness_violations) +
         " worst_slack=" + format_number(r.worst_slack);
}

int run_compare(const Flags& flags, const std::string& methods_text, const ProcedureArgs& p,
                const OutputArgs& o, std::ostream& out) {
  require(flags, "n", "compare");
  const auto names = split_list(methods_text, ",");
  if (names.size() < 2) throw UsageError("compare needs two or more methods");
  for (std::size_t i = 0; i < names.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names[i] == names[j]) throw UsageError("method '" + names[i] + "' listed twice");
    }
  }
  std::vector<Procedure> procs;
  bool any_discrete = false, any_split = false;
  for (const auto& name : names) {
    procs.emplace_back(make_spec(name, flags, p));
    any_discrete = any_discrete || procs.back().spec().method == Method::DiscreteAux;
    any_split = any_split || procs.back().spec().method == Method::SplitSample;
  }
  if (!any_discrete && given(flags, "levels")) throw UsageError("--levels needs method discrete");
  if (!any_split && (given(flags, "n1") || given(flags, "n2"))) {
    throw UsageError("--n1/--n2 need method split");
  }
  const Formats formats = parse_formats(o.format, {"csv", "json", "svg"});
  const auto grid = parse_grid(p.grid, p.n, p.alpha);
  const double half = 0.5 * p.alpha;

  std::vector<CoverageCurve> curves;
  for (const auto& proc : procs) curves.push_back(coverage_curve(proc, grid));

  std::vector<std::string> summary;
  Json jsummary;
  Json jmethods = Json::array();
  std::optional<std::string> korn_label, split_label;
  std::optional<std::size_t> split_support;
  for (std::size_t i = 0; i < procs.size(); ++i) {
    const auto& spec = procs[i].spec();
    const auto& c = curves[i];
    double gap_u = 0.0, gap_l = 0.0, max_u = 0.0, max_l = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      gap_u += half - c.upper_noncoverage[k];
      gap_l += half - c.lower_noncoverage[k];
      max_u = std::max(max_u, c.upper_noncoverage[k]);
      max_l = std::max(max_l, c.lower_noncoverage[k]);
    }
    gap_u /= static_cast<double>(grid.size());
    gap_l /= static_cast<double>(grid.size());
    summary.push_back("method " + c.label + ": max_upper=" + format_number(max_u) +
                      " max_lower=" + format_number(max_l) + " mean_gap_upper=" +
                      format_number(gap_u) + " mean_gap_lower=" + format_number(gap_l));
    Json jm{{"method", method_name(spec.method)},
            {"label", c.label},
            {"max_upper_noncoverage", format_number(max_u)},
            {"max_lower_noncoverage", format_number(max_l)},
            {"mean_gap_upper", format_number(gap_u)},
            {"mean_gap_lower", format_number(gap_l)}};

    switch (spec.method) {
      case Method::Stevens:
      case Method::StevensGeneralized:
      case Method::StevensMirrored: {
        std::vector<double> v_grid;
        for (int k = 0; k <= 100; ++k) v_grid.push_back(k / 100.0);
        const auto d = domination_report(spec.n, spec.alpha, v_grid);
        summary.push_back(domination_line(d));
        jm["domination"] = domination_json(d);
        const auto r = stevens_refinement_check(spec.n);
        summarize_refinement(r, summary);
        jm["refinement"] = refinement_json(r);
        break;
      }
      case Method::Korn: {
        if (spec.n <= 20) {
          const auto d = korn_domination_report(spec.n, spec.alpha);
          summary.push_back(domination_line(d));
          jm["domination"] = domination_json(d);
        } else {
          summary.push_back("domination korn within cp: skipped (exhaustive check needs n <= 20)");
        }
        const auto r = korn_refinement_check(spec.n);
        summarize_refinement(r, summary);
        jm["refinement"] = refinement_json(r);
        korn_label = c.label;
        break;
      }
      case Method::SplitSample: {
        const auto r = refinement_check(*spec.design);
        summarize_refinement(r, summary);
        jm["refinement"] = refinement_json(r);
        split_label = c.label;
        split_support = thetahat_support(*spec.design).size();
        jm["support_size"] = *split_support;
        break;
      }
      default:
        break;
    }
    jmethods.push_back(std::move(jm));
  }
  jsummary["methods"] = std::move(jmethods);
  if (korn_label && split_label) {
    WideCount patterns;
    for (int y = 0; y <= p.n; ++y) patterns += choose(p.n, y);
    const std::string line = "cardinality: korn statistic 2^" + std::to_string(p.n) + " = " +
                             patterns.to_string() + " vs " + *split_label +
                             " thetahat support = " + std::to_string(*split_support);
    summary.push_back(line);
    jsummary["cardinality"] = Json{{"korn_patterns", patterns.to_string()},
                                   {"split_support", *split_support}};
  }

  std::ostringstream csv;
  csv << "# " << kCompareSchema << " n=" << p.n << " alpha=" << format_number(p.alpha)
      << " methods=";
  for (std::size_t i = 0; i < curves.size(); ++i) csv << (i ? ";" : "") << curves[i].label;
  csv << "\n";
  for (const auto& line : summary) csv << "# " << line << "\n";
  csv << "theta";
  std::vector<std::string> upper_cols;
  for (const auto& name : names) {
    csv << ',' << name << "_upper," << name << "_lower," << name << "_length";
    upper_cols.push_back(name + "_upper");
  }
  csv << "\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv << format_number(grid[k]);
    for (const auto& c : curves) {
      csv << ',' << format_number(c.upper_noncoverage[k]) << ','
          << format_number(c.lower_noncoverage[k]) << ',' << format_number(c.expected_length[k]);
    }
    csv << "\n";
  }

  Outputs outputs;
  for (const auto& f : formats.names) {
    if (f == "csv") outputs.emplace_back("csv", csv.str());
    if (f == "json") {
      Json j;
      j["schema"] = "binci-compare-json v1";
      j["n"] = p.n;
      j["alpha"] = p.alpha;
      j["summary"] = jsummary;
      Json jc = Json::array();
      for (const auto& c : curves) jc.push_back(coverage_json(c));
      j["curves"] = std::move(jc);
      outputs.emplace_back("json", dump(j));
    }
    if (f == "svg") {
      ChartOptions chart;
      chart.title = "upper non-coverage, n=" + std::to_string(p.n) +
                    ", alpha=" + format_number(p.alpha);
      chart.x_column = "theta";
      chart.y_columns = upper_cols;
      chart.reference = half;
      chart.reference_label = "alpha/2";
      outputs.emplace_back("svg", render_svg_chart(parse_csv(csv.str()), chart));
    }
  }
  const auto prefix = output_prefix(o.out, "compare-n" + std::to_string(p.n));
  if (prefix) {
    for (const auto& line : summary) out << line << "\n";
  }
  emit(outputs, prefix, out);
  return kExitOk;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s;
  for (const auto& a : args) s += (s.empty() ? "" : " ") + a;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and randomized confidence intervals for a binomial probability", "binci"};
  app.require_subcommand(1);

  // interval
  IntervalArgs ia;
  Flags iflags;
  auto* interval = app.add_subcommand("interval", "compute one interval");
  iflags["method"] = interval->add_option("--method", ia.method,
                                          "cp | stevens | generalized | mirrored | discrete | korn | split")
                         ->required();
  iflags["n"] = interval->add_option("--n", ia.n, "number of trials");
  iflags["y"] = interval->add_option("--y", ia.y, "number of successes");
  iflags["bits"] = interval->add_option("--bits", ia.bits, "0/1 outcome string, e.g. 11000");
  iflags["y1"] = interval->add_option("--y1", ia.y1, "successes in the first split group");
  iflags["y2"] = interval->add_option("--y2", ia.y2, "successes in the second split group");
  iflags["n1"] = interval->add_option("--n1", ia.n1, "first split size");
  iflags["n2"] = interval->add_option("--n2", ia.n2, "second split size");
  iflags["alpha"] = interval->add_option("--alpha", ia.alpha, "1 - confidence level")->capture_default_str();
  iflags["v"] = interval->add_option("--v", ia.v, "auxiliary value in [0,1]");
  iflags["v-lower"] = interval->add_option("--v-lower", ia.v_lower, "auxiliary value for the lower endpoint");
  iflags["v-upper"] = interval->add_option("--v-upper", ia.v_upper, "auxiliary value for the upper endpoint");
  iflags["w"] = interval->add_option("--w", ia.w, "discrete level k/M");
  iflags["format"] = interval->add_option("--format", ia.format, "text | json")->capture_default_str();

  // coverage
  std::string cov_method;
  ProcedureArgs cp_args;
  OutputArgs cov_out{"", "csv"};
  Flags cflags;
  auto* coverage = app.add_subcommand("coverage", "non-coverage and expected length over a theta grid");
  cflags["method"] = coverage->add_option("--method", cov_method, "procedure")->required();
  add_procedure_flags(coverage, cflags, cp_args);
  cflags["out"] = coverage->add_option("--out", cov_out.out, "output path prefix");
  cflags["format"] = coverage->add_option("--format", cov_out.format, "csv,json,svg")->capture_default_str();

  // simulate
  SimulateArgs sa;
  OutputArgs sim_out{"", "csv"};
  Flags sflags;
  auto* simulate = app.add_subcommand("simulate", "long-run behaviour under an auxiliary sequence");
  sflags["source"] = simulate->add_option("--source", sa.source, "uniform | weyl | vdc | perm")->required();
  sflags["lambda"] = simulate->add_option("--lambda", sa.lambda, "Weyl multiplier");
  sflags["base"] = simulate->add_option("--base", sa.base, "van der Corput base");
  sflags["perm"] = simulate->add_option("--perm", sa.perm, "permutation of 1..N, e.g. \"3 1 2\"");
  sflags["seed"] = simulate->add_option("--seed", sa.seed, "seed of the binomial stream")->required();
  sflags["aux-seed"] = simulate->add_option("--aux-seed", sa.aux_seed, "seed of the uniform source (default seed+1)");
  sflags["n"] = simulate->add_option("--n", sa.n, "number of trials")->capture_default_str();
  sflags["theta"] = simulate->add_option("--theta", sa.theta, "true probability")->capture_default_str();
  sflags["alpha"] = simulate->add_option("--alpha", sa.alpha, "1 - confidence level")->capture_default_str();
  sflags["m"] = simulate->add_option("--m", sa.m, "number of experiments")->capture_default_str();
  sflags["checkpoint-every"] = simulate->add_option("--checkpoint-every", sa.checkpoint_every,
                                                    "checkpoint spacing (default m/100)");
  sflags["out"] = simulate->add_option("--out", sim_out.out, "output path prefix");
  sflags["format"] = simulate->add_option("--format", sim_out.format, "csv,json,svg")->capture_default_str();

  // compare
  std::string methods;
  ProcedureArgs cmp_args;
  OutputArgs cmp_out{"", "csv"};
  Flags mflags;
  auto* compare = app.add_subcommand("compare", "side-by-side curves with domination and refinement checks");
  mflags["methods"] = compare->add_option("--methods", methods, "comma-separated, e.g. cp,stevens,korn")->required();
  add_procedure_flags(compare, mflags, cmp_args);
  mflags["out"] = compare->add_option("--out", cmp_out.out, "output path prefix");
  mflags["format"] = compare->add_option("--format", cmp_out.format, "csv,json,svg")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (interval->parsed()) {
      if (ia.format != "text" && ia.format != "json") throw UsageError("--format must be text or json");
      const Interval iv = compute_interval(iflags, ia);
      out << (ia.format == "json" ? dump(interval_json(iv)) : interval_text(iv));
      return kExitOk;
    }
    if (coverage->parsed()) return run_coverage(cflags, cov_method, cp_args, cov_out, out);
    if (simulate->parsed()) return run_simulate(sflags, sa, sim_out, out);
    if (compare->parsed()) return run_compare(mflags, methods, cmp_args, cmp_out, out);
  } catch (const BracketError& e) {
    err << "error: root solver could not bracket a solution: " << e.what() << "\n"
        << "inputs: " << join_args(args) << "\n";
    return kExitSolver;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    // Usage, domain and parse errors from the library all land here.
    err << "error: " << e.what() << "\n" << "inputs: " << join_args(args) << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace binci::cli
