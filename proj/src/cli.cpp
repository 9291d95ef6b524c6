#include "polarwell/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "polarwell/csv.hpp"
#include "polarwell/eigensolver.hpp"
#include "polarwell/errors.hpp"
#include "polarwell/polar_model.hpp"
#include "polarwell/report.hpp"
#include "polarwell/svg.hpp"
#include "polarwell/verify.hpp"

namespace polarwell::cli {
namespace {

using nlohmann::json;
using polar::QuantumNumbers;

const std::vector<int> kFigure1M = {0, 1, 2, 5, 10, 30};
const std::vector<int> kFigure3M = {0, 10, 30};
const std::vector<int> kSpectrumM = {0, 1, 2, 5, 10, 30};
constexpr int kVarianceGridCells = 4000;

bool wants(const RunConfiguration& cfg, const std::string& format, std::initializer_list<const char*> defaults) {
  if (cfg.formats.empty()) {
    return std::any_of(defaults.begin(), defaults.end(), [&](const char* d) { return format == d; });
  }
  return cfg.formats.count(format) > 0;
}

std::vector<int> m_or(const RunConfiguration& cfg, const std::vector<int>& fallback) {
  const auto& ms = cfg.m.empty() ? fallback : cfg.m;
  for (int m : ms) {
    if (m < 0) throw DomainError("--m values must be nonnegative, got " + std::to_string(m));
  }
  return ms;
}

std::vector<double> open_samples(int samples) {
  if (samples < 1) throw DomainError("--samples must be positive");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int i = 1; i <= samples; ++i) t[static_cast<std::size_t>(i - 1)] = i * std::numbers::pi / (samples + 1);
  return t;
}

std::vector<double> evaluate(const polar::RealFunction& f, const std::vector<double>& t) {
  std::vector<double> v(t.size());
  std::transform(t.begin(), t.end(), v.begin(), [&](double x) { return f(x); });
  return v;
}

std::vector<double> evaluate(const polar::PotentialSpec& f, const std::vector<double>& t) {
  return evaluate(polar::RealFunction([&f](double x) { return f(x); }), t);
}

// Clip height for potential panels: the configured cap, raised if needed so
// the bottom of every curve stays visible.
double potential_cap(const RunConfiguration& cfg, const std::vector<int>& ms, bool cap_explicit) {
  if (cap_explicit) return cfg.cap;
  double cap = cfg.cap;
  for (int m : ms) cap = std::max(cap, 2.0 * polar::polar_potential(m)(0.5 * std::numbers::pi));
  return cap;
}

double analytic_variance(const QuantumNumbers& qn) {
  const auto grid = eigensolver::Grid::from_cells(kVarianceGridCells);
  const auto state = polar::analytic_eigenfunction(qn);
  std::vector<double> y(static_cast<std::size_t>(grid.n_interior()));
  for (int i = 0; i < grid.n_interior(); ++i) y[static_cast<std::size_t>(i)] = state.wavefunction(grid.node(i));
  return eigensolver::observables(y, grid).variance_about_midpoint;
}

svg::Curve polar_curve(const QuantumNumbers& qn, bool squared, int samples) {
  const auto theta_fn = polar::analytic_theta_function(qn);
  svg::Curve c;
  c.label = fmt::format("l={} m={}", qn.l(), qn.m());
  const int steps = 2 * std::max(samples, 8);
  for (int i = 0; i <= steps; ++i) {
    const double phi = 2.0 * std::numbers::pi * i / steps;  // sweep 0..2pi, mirrored past pi
    const double t = phi <= std::numbers::pi ? phi : 2.0 * std::numbers::pi - phi;
    const double v = theta_fn(std::clamp(t, 0.0, std::numbers::pi));
    const double r = squared ? v * v : std::abs(v);
    c.x.push_back(r * std::sin(phi));
    c.y.push_back(r * std::cos(phi));
  }
  return c;
}

svg::Panel potential_panel(const std::vector<int>& ms, const std::vector<double>& t, double cap) {
  svg::Panel p;
  p.title = "polar potential V_m(theta)";
  p.x_label = "theta";
  p.y_label = "V";
  p.y_max = cap;
  double lowest = 0.0;
  for (int m : ms) {
    auto v = evaluate(polar::polar_potential(m), t);
    lowest = std::min(lowest, *std::min_element(v.begin(), v.end()));
    p.curves.push_back({"m=" + std::to_string(m), t, std::move(v)});
  }
  p.y_min = std::max(lowest, -cap);
  return p;
}

json config_json(const RunConfiguration& cfg) {
  json formats = json::array();
  for (const auto& f : cfg.formats) formats.push_back(f);
  return {{"command", cfg.command}, {"m", cfg.m},         {"n", cfg.n},
          {"n_max", cfg.n_max},     {"grid", cfg.grid},   {"samples", cfg.samples},
          {"richardson", cfg.richardson}, {"numeric", cfg.numeric}, {"formats", formats},
          {"l_max", cfg.l_max},     {"squared", cfg.squared}, {"cap", cfg.cap}};
}

}  // namespace

CommandResult cmd_spectrum(const RunConfiguration& cfg) {
  const auto ms = m_or(cfg, kSpectrumM);
  if (cfg.n_max < 0) throw DomainError("--n-max must be nonnegative");
  const bool numeric = cfg.numeric || cfg.richardson;
  if (numeric && cfg.grid < 4) throw DomainError("--grid too small");
  if (cfg.richardson && cfg.grid % 2 != 0) throw DomainError("--richardson needs an even --grid");

  csv::Table table;
  table.header = {"m", "n", "l", "analytic"};
  if (numeric) table.header.insert(table.header.end(), {"numeric", "abs_error", "rel_error"});
  json rows = json::array();

  for (int m : ms) {
    std::vector<double> energies;
    if (numeric) {
      energies = eigensolver::polar_energies(m, cfg.n_max + 1, cfg.grid);
      if (cfg.richardson) {
        const auto coarse = eigensolver::polar_energies(m, cfg.n_max + 1, cfg.grid / 2);
        for (std::size_t j = 0; j < energies.size(); ++j) {
          energies[j] = eigensolver::richardson_extrapolate(coarse[j], energies[j]);
        }
      }
    }
    for (int n = 0; n <= cfg.n_max; ++n) {
      const auto qn = QuantumNumbers::from_level(m, n);
      const double e = polar::analytic_energy(qn);
      std::vector<double> row = {double(m), double(n), double(qn.l()), e};
      json jr = {{"m", m}, {"n", n}, {"l", qn.l()}, {"analytic", e}};
      if (numeric) {
        const double num = energies[static_cast<std::size_t>(n)];
        const double abs_err = std::abs(num - e);
        row.insert(row.end(), {num, abs_err, abs_err / e});
        jr["numeric"] = num;
        jr["abs_error"] = abs_err;
        jr["rel_error"] = abs_err / e;
      }
      table.rows.push_back(std::move(row));
      rows.push_back(std::move(jr));
    }
  }

  CommandResult result;
  if (wants(cfg, "csv", {"csv"})) result.artifacts.push_back({"spectrum.csv", table.str()});
  if (wants(cfg, "json", {"csv"})) {
    json doc = {{"command", "spectrum"}, {"config", config_json(cfg)}, {"rows", rows}};
    result.artifacts.push_back({"spectrum.json", doc.dump(2) + "\n"});
  }
  result.summary = fmt::format("spectrum: {} rows", table.rows.size());
  return result;
}

CommandResult cmd_potential(const RunConfiguration& cfg) {
  const auto ms = m_or(cfg, kFigure1M);
  const auto t = open_samples(cfg.samples);
  CommandResult result;
  if (wants(cfg, "csv", {"csv", "svg"})) {
    for (int m : ms) {
      csv::Table table;
      table.header = {"theta", "V"};
      const auto v = evaluate(polar::polar_potential(m), t);
      for (std::size_t i = 0; i < t.size(); ++i) table.rows.push_back({t[i], v[i]});
      result.artifacts.push_back({fmt::format("potential_m{}.csv", m), table.str()});
    }
  }
  if (wants(cfg, "svg", {"csv", "svg"})) {
    svg::Figure fig;
    fig.panels.push_back(potential_panel(ms, t, potential_cap(cfg, ms, cfg.cap != 100.0)));
    result.artifacts.push_back({"potential.svg", svg::render(fig)});
  }
  result.summary = fmt::format("potential: {} curves", ms.size());
  return result;
}

CommandResult cmd_eigenfunction(const RunConfiguration& cfg) {
  const auto ms = m_or(cfg, {0});
  const std::vector<int> ns = cfg.n.empty() ? std::vector<int>{0} : cfg.n;
  const auto t = open_samples(cfg.samples);
  CommandResult result;
  for (int m : ms) {
    for (int n : ns) {
      const auto qn = QuantumNumbers::from_level(m, n);
      const auto state = polar::analytic_eigenfunction(qn);
      const auto theta_fn = polar::analytic_theta_function(qn);
      const auto y = evaluate(state.wavefunction, t);
      const auto big_theta = evaluate(theta_fn, t);
      const std::string stem = fmt::format("eigenfunction_m{}_n{}", m, n);
      const std::string col = cfg.squared ? "theta_squared" : "abs_theta";

      if (wants(cfg, "csv", {"csv", "svg"})) {
        csv::Table table;
        table.header = {"theta", "y", col};
        for (std::size_t i = 0; i < t.size(); ++i) {
          const double g = cfg.squared ? big_theta[i] * big_theta[i] : std::abs(big_theta[i]);
          table.rows.push_back({t[i], y[i], g});
        }
        result.artifacts.push_back({stem + ".csv", table.str()});
      }
      if (wants(cfg, "svg", {"csv", "svg"})) {
        svg::Figure line;
        svg::Panel p;
        p.title = fmt::format("y_n^m(theta), m={} n={} E={}", m, n, csv::format_double(state.energy));
        p.x_label = "theta";
        p.y_label = "y";
        p.curves.push_back({fmt::format("m={} n={}", m, n), t, y});
        line.panels.push_back(std::move(p));
        result.artifacts.push_back({stem + ".svg", svg::render(line)});

        svg::Figure polar_fig;
        svg::Panel pp;
        pp.title = fmt::format("{} of N P_l^m(cos theta), l={} m={}", cfg.squared ? "square" : "magnitude", qn.l(), m);
        pp.x_label = "x";
        pp.y_label = "z";
        pp.equal_aspect = true;
        pp.curves.push_back(polar_curve(qn, cfg.squared, cfg.samples));
        polar_fig.panels.push_back(std::move(pp));
        result.artifacts.push_back({stem + "_polar.svg", svg::render(polar_fig)});
      }
    }
  }
  result.summary = fmt::format("eigenfunction: {} states", ms.size() * ns.size());
  return result;
}

CommandResult cmd_figure(const RunConfiguration& cfg) {
  const auto t = open_samples(cfg.samples);
  const bool want_csv = wants(cfg, "csv", {"csv", "svg", "json"});
  const bool want_svg = wants(cfg, "svg", {"csv", "svg", "json"});
  const bool want_json = wants(cfg, "json", {"csv", "svg", "json"});
  CommandResult result;

  auto wide_table = [&](const std::vector<std::string>& names, const std::vector<std::vector<double>>& cols) {
    csv::Table table;
    table.header = {"theta"};
    table.header.insert(table.header.end(), names.begin(), names.end());
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::vector<double> row = {t[i]};
      for (const auto& c : cols) row.push_back(c[i]);
      table.rows.push_back(std::move(row));
    }
    return table.str();
  };

  switch (cfg.figure_id) {
    case 1: {
      const auto ms = m_or(cfg, kFigure1M);
      std::vector<std::string> names;
      std::vector<std::vector<double>> cols;
      for (int m : ms) {
        names.push_back(fmt::format("V_m{}", m));
        cols.push_back(evaluate(polar::polar_potential(m), t));
      }
      if (want_csv) result.artifacts.push_back({"figure1.csv", wide_table(names, cols)});
      if (want_svg) {
        svg::Figure fig;
        fig.panels.push_back(potential_panel(ms, t, potential_cap(cfg, ms, cfg.cap != 100.0)));
        result.artifacts.push_back({"figure1.svg", svg::render(fig)});
      }
      result.summary = fmt::format("figure 1: {} potential curves", ms.size());
      break;
    }
    case 2: {
      if (cfg.l_max < 0) throw DomainError("--l-max must be nonnegative");
      const auto lattice = polar::quantum_lattice(cfg.l_max);
      csv::Table table;
      table.header = {"m", "l", "n"};
      svg::Panel p;
      p.title = "(m, l) lattice, m <= l";
      p.x_label = "m";
      p.y_label = "l";
      for (const auto& qn : lattice) {
        table.rows.push_back({double(qn.m()), double(qn.l()), double(qn.n())});
        p.markers.push_back({double(qn.m()), double(qn.l()), fmt::format("m={} l={} n={}", qn.m(), qn.l(), qn.n())});
      }
      if (want_csv) result.artifacts.push_back({"figure2.csv", table.str()});
      if (want_svg) {
        svg::Figure fig;
        fig.panels.push_back(std::move(p));
        result.artifacts.push_back({"figure2.svg", svg::render(fig)});
      }
      result.summary = fmt::format("figure 2: {} lattice points", lattice.size());
      break;
    }
    case 3: {
      const auto ms = m_or(cfg, kFigure3M);
      svg::Figure fig;
      fig.rows = 3;
      fig.cols = static_cast<int>(ms.size());
      const double cap = potential_cap(cfg, ms, cfg.cap != 100.0);
      std::vector<svg::Panel> potentials, states, polars;
      std::vector<std::string> names;
      std::vector<std::vector<double>> cols;
      json variances = json::array();
      std::vector<double> vars;
      for (int m : ms) {
        const auto qn = QuantumNumbers::from_level(m, 0);
        auto pot = potential_panel({m}, t, cap);
        pot.title = fmt::format("V_m, m={}", m);
        potentials.push_back(std::move(pot));

        auto y = evaluate(polar::analytic_eigenfunction(qn).wavefunction, t);
        names.push_back(fmt::format("y_m{}_n0", m));
        cols.push_back(y);
        svg::Panel sp;
        sp.title = fmt::format("ground state, m={}", m);
        sp.x_label = "theta";
        sp.y_label = "y";
        sp.curves.push_back({fmt::format("m={} n=0", m), t, std::move(y)});
        states.push_back(std::move(sp));

        svg::Panel pp;
        pp.title = fmt::format("polar plot, l={} m={}", qn.l(), m);
        pp.x_label = "x";
        pp.y_label = "z";
        pp.equal_aspect = true;
        pp.curves.push_back(polar_curve(qn, cfg.squared, cfg.samples));
        polars.push_back(std::move(pp));

        vars.push_back(analytic_variance(qn));
        variances.push_back({{"m", m}, {"variance_about_midpoint", vars.back()}});
      }
      bool monotone = true;
      for (std::size_t i = 1; i < vars.size(); ++i) monotone = monotone && vars[i] < vars[i - 1];
      for (auto* row : {&potentials, &states, &polars}) {
        for (auto& p : *row) fig.panels.push_back(std::move(p));
      }
      if (want_csv) result.artifacts.push_back({"figure3.csv", wide_table(names, cols)});
      if (want_svg) result.artifacts.push_back({"figure3.svg", svg::render(fig)});
      if (want_json) {
        json meta = {{"figure", 3}, {"m", ms}, {"variances", variances}, {"squeezing_monotone", monotone}};
        result.artifacts.push_back({"figure3.json", meta.dump(2) + "\n"});
      }
      result.summary = fmt::format("figure 3: {} columns, squeezing monotone: {}", ms.size(), monotone);
      break;
    }
    case 4: {
      const auto ms = m_or(cfg, kFigure3M);
      svg::Panel p;
      p.title = "first excited states (n = 1)";
      p.x_label = "theta";
      p.y_label = "y";
      std::vector<std::string> names;
      std::vector<std::vector<double>> cols;
      json nodes = json::array();
      for (int m : ms) {
        auto y = evaluate(polar::analytic_eigenfunction(QuantumNumbers::from_level(m, 1)).wavefunction, t);
        nodes.push_back({{"m", m}, {"interior_nodes", eigensolver::count_sign_changes(y)}});
        names.push_back(fmt::format("y_m{}_n1", m));
        cols.push_back(y);
        p.curves.push_back({fmt::format("m={} n=1", m), t, std::move(y)});
      }
      if (want_csv) result.artifacts.push_back({"figure4.csv", wide_table(names, cols)});
      if (want_svg) {
        svg::Figure fig;
        fig.panels.push_back(std::move(p));
        result.artifacts.push_back({"figure4.svg", svg::render(fig)});
      }
      if (want_json) {
        json meta = {{"figure", 4}, {"m", ms}, {"node_counts", nodes}};
        result.artifacts.push_back({"figure4.json", meta.dump(2) + "\n"});
      }
      result.summary = fmt::format("figure 4: {} curves", ms.size());
      break;
    }
    default:
      throw DomainError("figure id must be 1, 2, 3 or 4");
  }
  return result;
}

CommandResult cmd_verify(const RunConfiguration& cfg) {
  static const std::vector<std::string> kSuites = {"spectrum",   "residual",   "orthonormality", "confinement",
                                                   "degeneracy", "legendre",   "all"};
  if (std::find(kSuites.begin(), kSuites.end(), cfg.suite) == kSuites.end()) {
    throw DomainError("unknown suite '" + cfg.suite + "'");
  }
  const bool all = cfg.suite == "all";
  verify::VerificationReport report{cfg.suite, {}};
  json config = {{"suite", cfg.suite}, {"grid", cfg.grid}};

  if (all || cfg.suite == "spectrum") {
    const auto ms = m_or(cfg, kSpectrumM);
    report.append(verify::verify_spectrum(ms, cfg.n_max, cfg.grid));
    config["spectrum"] = {{"m", ms}, {"n_max", cfg.n_max}, {"grid", cfg.grid}};
  }
  if (all || cfg.suite == "residual") {
    std::vector<std::pair<int, int>> pairs;
    if (cfg.m.empty() && cfg.n.empty()) {
      pairs = {{0, 0}, {1, 0}, {2, 1}, {5, 0}};
    } else {
      for (int m : m_or(cfg, {0})) {
        for (int n : cfg.n.empty() ? std::vector<int>{0} : cfg.n) pairs.emplace_back(m, n);
      }
    }
    json list = json::array();
    for (auto [m, n] : pairs) {
      report.append(verify::verify_residual(QuantumNumbers::from_level(m, n), cfg.grid));
      list.push_back({{"m", m}, {"n", n}});
    }
    config["residual"] = {{"states", list}, {"grid", cfg.grid}};
  }
  if (all || cfg.suite == "orthonormality") {
    const auto ms = m_or(cfg, {0, 1, 2});
    const int n_max = cfg.n_max_set ? cfg.n_max : 4;
    for (int m : ms) report.append(verify::verify_orthonormality(m, n_max, cfg.grid));
    config["orthonormality"] = {{"m", ms}, {"n_max", n_max}, {"grid", cfg.grid}};
  }
  if (all || cfg.suite == "confinement") {
    if (cfg.m.empty()) {
      report.append(verify::verify_confinement(kFigure1M, 0, cfg.grid));
      report.append(verify::verify_confinement(kFigure3M, 1, cfg.grid));
      config["confinement"] = {{"ground", kFigure1M}, {"first_excited", kFigure3M}, {"grid", cfg.grid}};
    } else {
      const auto ms = m_or(cfg, {});
      const std::vector<int> ns = cfg.n.empty() ? std::vector<int>{0} : cfg.n;
      for (int n : ns) report.append(verify::verify_confinement(ms, n, cfg.grid));
      config["confinement"] = {{"m", ms}, {"n", ns}, {"grid", cfg.grid}};
    }
  }
  if (all || cfg.suite == "degeneracy") {
    const int l_max = cfg.l_max_set ? cfg.l_max : 30;
    report.append(verify::verify_degeneracy(l_max));
    config["degeneracy"] = {{"l_max", l_max}};
  }
  if (all || cfg.suite == "legendre") {
    const int l_max = cfg.l_max_set ? cfg.l_max : 12;
    report.append(verify::verify_legendre(l_max));
    config["legendre"] = {{"l_max", l_max}};
  }

  const json doc = report::to_json(report, config, report::reproducible_timestamp());
  CommandResult result;
  result.artifacts.push_back({"verify_" + cfg.suite + ".json", doc.dump(2) + "\n"});
  const auto failed = std::count_if(report.cases.begin(), report.cases.end(), [](const auto& c) { return !c.pass; });
  result.summary = cfg.json_stdout ? doc.dump(2)
                                   : fmt::format("verify {}: {} cases, {} failed", cfg.suite, report.cases.size(),
                                                 failed);
  result.exit_code = report.pass() ? kSuccess : kVerificationFailure;
  return result;
}

void write_artifacts(const std::vector<Artifact>& artifacts, const std::filesystem::path& out_dir, bool overwrite) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  if (!overwrite) {
    for (const auto& a : artifacts) {
      if (std::filesystem::exists(out_dir / a.filename)) {
        throw IoError((out_dir / a.filename).string() + " exists; pass --overwrite to replace it");
      }
    }
  }
  for (const auto& a : artifacts) {
    const auto path = out_dir / a.filename;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << a.content;
    f.close();
    if (!f) throw IoError("failed writing " + path.string());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfiguration cfg;
  std::string format_list;

  CLI::App app{"Polar-potential spectra, eigenfunctions and figures", "polar-well"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_dir, "Output directory");
    sub->add_option("--format", format_list, "Comma list of csv,json,svg");
    sub->add_flag("--overwrite", cfg.overwrite, "Replace existing output files");
  };
  auto add_m = [&](CLI::App* sub) { sub->add_option("--m", cfg.m, "Comma list of m values")->delimiter(','); };
  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", cfg.n, "Comma list of level indices")->delimiter(','); };

  auto* spectrum = app.add_subcommand("spectrum", "Analytic (and numeric) energy table");
  add_common(spectrum);
  add_m(spectrum);
  spectrum->add_option("--n-max", cfg.n_max, "Highest level index");
  spectrum->add_option("--grid", cfg.grid, "Grid cells for the numeric solve");
  spectrum->add_flag("--numeric", cfg.numeric, "Add finite-difference energies");
  spectrum->add_flag("--richardson", cfg.richardson, "Richardson-extrapolate numeric energies (implies --numeric)");

  auto* potential = app.add_subcommand("potential", "Sampled polar potentials");
  add_common(potential);
  add_m(potential);
  potential->add_option("--samples", cfg.samples, "Samples on the open interval (0, pi)");
  potential->add_option("--cap", cfg.cap, "Vertical clip for plots");

  auto* eigenfunction = app.add_subcommand("eigenfunction", "Analytic eigenfunctions and polar plots");
  add_common(eigenfunction);
  add_m(eigenfunction);
  add_n(eigenfunction);
  eigenfunction->add_option("--samples", cfg.samples, "Samples on the open interval (0, pi)");
  eigenfunction->add_flag("--squared", cfg.squared, "Polar plot of Theta^2 instead of |Theta|");

  auto* figure = app.add_subcommand("figure", "Reproduce figure 1, 2, 3 or 4");
  add_common(figure);
  add_m(figure);
  figure->add_option("id", cfg.figure_id, "Figure id")->required()->check(CLI::Range(1, 4));
  figure->add_option("--samples", cfg.samples, "Samples on the open interval (0, pi)");
  figure->add_option("--l-max", cfg.l_max, "Lattice size for figure 2");
  figure->add_option("--cap", cfg.cap, "Vertical clip for potential panels");
  figure->add_flag("--squared", cfg.squared, "Polar plots of Theta^2");

  auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
  add_common(verify_cmd);
  add_m(verify_cmd);
  add_n(verify_cmd);
  verify_cmd->add_option("--suite", cfg.suite, "spectrum|residual|orthonormality|confinement|degeneracy|legendre|all");
  verify_cmd->add_option("--n-max", cfg.n_max, "Highest level index");
  verify_cmd->add_option("--grid", cfg.grid, "Grid cells");
  verify_cmd->add_option("--l-max", cfg.l_max, "Degree limit for degeneracy/legendre suites");
  verify_cmd->add_flag("--json", cfg.json_stdout, "Print the JSON report to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "polar-well: " << e.what() << "\n";
    return kUsageError;
  }

  for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
  if (auto* opt = verify_cmd->get_option_no_throw("--l-max"); opt && opt->count() > 0) cfg.l_max_set = true;
  if (auto* opt = verify_cmd->get_option_no_throw("--n-max"); opt && opt->count() > 0) cfg.n_max_set = true;
  if (!format_list.empty()) {
    std::string item;
    std::istringstream in(format_list);
    while (std::getline(in, item, ',')) {
      if (item != "csv" && item != "json" && item != "svg") {
        err << "polar-well: unknown format '" << item << "'\n";
        return kUsageError;
      }
      cfg.formats.insert(item);
    }
  }

  try {
    CommandResult result;
    if (cfg.command == "spectrum") result = cmd_spectrum(cfg);
    else if (cfg.command == "potential") result = cmd_potential(cfg);
    else if (cfg.command == "eigenfunction") result = cmd_eigenfunction(cfg);
    else if (cfg.command == "figure") result = cmd_figure(cfg);
    else result = cmd_verify(cfg);
    write_artifacts(result.artifacts, cfg.out_dir, cfg.overwrite);
    out << result.summary << "\n";
    return result.exit_code;
  } catch (const DomainError& e) {
    err << "polar-well: " << e.what() << "\n";
    return kUsageError;
  } catch (const CapabilityError& e) {
    err << "polar-well: " << e.what() << "\n";
    return kUsageError;
  } catch (const IoError& e) {
    err << "polar-well: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    err << "polar-well: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace polarwell::cli
