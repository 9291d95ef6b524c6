// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/core.h>
#include <json.hpp>

#include "polarwell/csv.hpp"
#include "polarwell/eigensolver.hpp"
#include "polarwell/legendre.hpp"
#include "polarwell/polar_model.hpp"
#include "polarwell/verify.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace polarwell;
namespace es = polarwell::eigensolver;
using polar::QuantumNumbers;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double observed, double expected) { return std::abs(observed - expected) / std::abs(expected); }

Verdict box_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = es::Grid::from_interior(3999);
  const auto e = es::lowest_eigenvalues(es::discretize(polar::box_potential(), grid), 3, 1e-12);
  const double secs = seconds_since(t0);
  double worst = 0.0;
  for (int k = 1; k <= 3; ++k) worst = std::max(worst, rel(e[std::size_t(k - 1)], 0.5 * k * k));
  return {worst <= 1e-5 && secs < 1.0, fmt::format("max rel error {:.3e} (<= 1e-5), {:.3f} s (< 1 s)", worst, secs)};
}

Verdict spectrum_reproduction() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_high = 0.0, worst_m1 = 0.0;
  for (int m : {1, 2, 5, 10, 30}) {
    const auto coarse = es::polar_energies(m, 3, 2000);
    const auto fine = es::polar_energies(m, 3, 4000);
    for (int n = 0; n < 3; ++n) {
      const double exact = polar::analytic_energy(QuantumNumbers::from_level(m, n));
      const double err = rel(es::richardson_extrapolate(coarse[std::size_t(n)], fine[std::size_t(n)]), exact);
      (m == 1 ? worst_m1 : worst_high) = std::max(m == 1 ? worst_m1 : worst_high, err);
    }
  }
  ok = ok && worst_high <= 1e-5 && worst_m1 <= 1e-4;
  std::vector<std::vector<double>> m0_err;
  for (int cells : {2000, 4000, 8000}) {
    const auto e = es::polar_energies(0, 3, cells);
    std::vector<double> row;
    for (int n = 0; n < 3; ++n) row.push_back(rel(e[std::size_t(n)], polar::analytic_energy(QuantumNumbers::from_level(0, n))));
    m0_err.push_back(row);
  }
  double worst_m0 = 0.0;
  bool decreasing = true;
  for (int n = 0; n < 3; ++n) {
    worst_m0 = std::max(worst_m0, m0_err[2][std::size_t(n)]);
    decreasing = decreasing && m0_err[1][std::size_t(n)] < m0_err[0][std::size_t(n)] &&
                 m0_err[2][std::size_t(n)] < m0_err[1][std::size_t(n)];
  }
  const double secs = seconds_since(t0);
  ok = ok && worst_m0 <= 1e-2 && decreasing && secs < 30.0;
  return {ok, fmt::format("m>=2 {:.2e} (<= 1e-5), m=1 {:.2e} (<= 1e-4), m=0 at 8000 {:.2e} (<= 1e-2), "
                          "m=0 error decreasing 2000->4000->8000: {}, {:.2f} s (< 30 s)",
                          worst_high, worst_m1, worst_m0, decreasing ? "yes" : "no", secs)};
}

Verdict degeneracy() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int l = 0; l <= 30; ++l)
    for (int m = 0; m <= l; ++m)
      worst = std::max(worst, std::abs(polar::analytic_energy(QuantumNumbers::from_orbital(m, l)) -
                                       0.5 * (l * (l + 1.0) + 0.25)));
  return {worst <= 1e-12, fmt::format("max spread {:.1e} (<= 1e-12), {:.4f} s", worst, seconds_since(t0))};
}

Verdict node_law() {
  std::string bad;
  for (int m : {0, 1, 5}) {
    const auto sols = es::solve_polar(m, 4, 4000, false);
    for (int j = 0; j <= 3; ++j) {
      const int changes = es::count_sign_changes(sols[std::size_t(j)].vector);
      if (changes != j) bad += fmt::format(" m={} j={} saw {}", m, j, changes);
    }
  }
  return {bad.empty(), bad.empty() ? "levels 0..3 of m = 0, 1, 5 have j sign changes" : "mismatch:" + bad};
}

Verdict oracle_equivalence() {
  double worst_scaled = 0.0, worst_abs = 0.0;
  for (int l = 0; l <= 12; ++l)
    for (int m = 0; m <= l; ++m) {
      std::vector<double> a, b;
      double scale = 1.0;
      for (int k = 0; k <= 100; ++k) {
        const double x = -1.0 + 2.0 * k / 100.0;
        a.push_back(legendre::assoc_legendre(l, m, x));
        b.push_back(legendre::rodrigues_oracle(l, m, x));
        scale = std::max(scale, std::abs(b.back()));
      }
      for (std::size_t k = 0; k < a.size(); ++k) {
        worst_abs = std::max(worst_abs, std::abs(a[k] - b[k]));
        worst_scaled = std::max(worst_scaled, std::abs(a[k] - b[k]) / scale);
      }
    }
  return {worst_scaled <= verify::kLegendreOracleTol,
          fmt::format("max |recurrence - Rodrigues| / max(1, max|P|) = {:.2e} (<= 1e-9), unscaled {:.2e}",
                      worst_scaled, worst_abs)};
}

Verdict orthonormality() {
  double worst = 0.0;
  bool ok = true;
  for (int m : {0, 1, 2}) {
    const auto r = verify::verify_orthonormality(m, 4, 4000);
    for (const auto& c : r.cases)
      if (c.id.find("max|G-I|") != std::string::npos) worst = std::max(worst, c.observed);
  }
  ok = worst <= 1e-6;
  return {ok, fmt::format("max |G - I| = {:.2e} (<= 1e-6)", worst)};
}

Verdict squeezing() {
  const auto r0 = verify::verify_confinement({0, 1, 2, 5, 10, 30}, 0, 4000);
  const auto r1 = verify::verify_confinement({0, 10, 30}, 1, 4000);
  double worst_agree = 0.0;
  bool monotone = true, agree = true;
  for (const auto* r : {&r0, &r1})
    for (const auto& c : r->cases) {
      const bool step = c.id.find("/analytic/") != std::string::npos || c.id.find("/numeric/") != std::string::npos;
      if (step) monotone = monotone && c.pass && c.observed < c.expected;
      if (c.id.find("/agreement/") != std::string::npos) {
        agree = agree && c.abs_error <= 1e-3;
        worst_agree = std::max(worst_agree, c.abs_error);
      }
    }
  return {monotone && agree, fmt::format("variances strictly decreasing: {}, max numeric/analytic gap (m>=1) {:.2e} "
                                         "(<= 1e-3)",
                                         monotone ? "yes" : "no", worst_agree)};
}

Verdict eigenfunction_match() {
  const auto grid = es::Grid::from_cells(4000);
  const auto sol = es::solve_polar(2, 1, 4000, false)[0];
  const auto y = polar::analytic_eigenfunction(QuantumNumbers::from_level(2, 0)).wavefunction;
  double dot = 0.0;
  for (int i = 0; i < grid.n_interior(); ++i) dot += sol.vector[std::size_t(i)] * y(grid.node(i));
  const double sign = dot < 0 ? -1.0 : 1.0;
  double worst = 0.0;
  for (int i = 0; i < grid.n_interior(); ++i)
    worst = std::max(worst, std::abs(sign * sol.vector[std::size_t(i)] - y(grid.node(i))));
  return {worst <= 1e-4, fmt::format("max pointwise deviation {:.2e} (<= 1e-4)", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict figures() {
  const auto dir = polarwell::testing::scratch_dir("acceptance_figures");
  const auto t0 = std::chrono::steady_clock::now();
  std::string problems;
  for (int id = 1; id <= 4; ++id) {
    const std::string cmd = fmt::format("\"{}\" figure {} --out \"{}\" >/dev/null 2>&1", POLAR_WELL_EXE, id, dir.string());
    if (std::system(cmd.c_str()) != 0) problems += fmt::format(" figure {} failed;", id);
  }
  const double secs = seconds_since(t0);
  for (int id = 1; id <= 4; ++id) {
    const auto svg = slurp(dir / fmt::format("figure{}.svg", id));
    if (!polarwell::testing::is_well_formed_xml(svg)) problems += fmt::format(" figure{}.svg invalid;", id);
    try {
      if (csv::parse(slurp(dir / fmt::format("figure{}.csv", id))).rows.empty())
        problems += fmt::format(" figure{}.csv empty;", id);
    } catch (const std::exception& ex) {
      problems += fmt::format(" figure{}.csv: {};", id, ex.what());
    }
  }
  std::vector<int> nodes;
  try {
    const auto f4 = csv::parse(slurp(dir / "figure4.csv"));
    for (std::size_t c = 1; c < f4.header.size(); ++c) {
      std::vector<double> col;
      for (const auto& r : f4.rows) col.push_back(r[c]);
      nodes.push_back(es::count_sign_changes(col));
    }
  } catch (const std::exception&) {
  }
  const bool nodes_ok = nodes.size() == 3 && nodes[0] == 1 && nodes[1] == 1 && nodes[2] == 1;
  if (!nodes_ok) problems += " figure 4 curves do not each have one node;";
  fs::remove_all(dir);
  const bool ok = problems.empty() && secs < 60.0;
  return {ok, fmt::format("{:.2f} s (< 60 s), figure 4 node counts [{}]{}", secs,
                          nodes.size() == 3 ? fmt::format("{}, {}, {}", nodes[0], nodes[1], nodes[2]) : "?",
                          problems.empty() ? "" : ";" + problems)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"box oracle", box_oracle},
      {"spectrum reproduction", spectrum_reproduction},
      {"degeneracy identity", degeneracy},
      {"node law", node_law},
      {"special-function oracle equivalence", oracle_equivalence},
      {"orthonormality", orthonormality},
      {"squeezing monotonicity", squeezing},
      {"eigenfunction pointwise match", eigenfunction_match},
      {"figure reproduction", figures},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    failures += v.pass ? 0 : 1;
    fmt::print("[{}] {} {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - std::size_t(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
