#include "polarwell/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <string>

#include "polarwell/eigensolver.hpp"
#include "polarwell/errors.hpp"
#include "polarwell/legendre.hpp"

namespace polarwell::verify {
namespace {

using eigensolver::Grid;
using polar::QuantumNumbers;

CaseRecord make_case(std::string id, double expected, double observed, double tolerance, bool relative) {
  CaseRecord c;
  c.id = std::move(id);
  c.expected = expected;
  c.observed = observed;
  c.abs_error = std::abs(observed - expected);
  c.rel_error = expected != 0.0 ? c.abs_error / std::abs(expected) : c.abs_error;
  c.tolerance = tolerance;
  c.pass = (relative ? c.rel_error : c.abs_error) <= tolerance;
  c.note = relative ? "relative tolerance" : "absolute tolerance";
  return c;
}

// observed must lie strictly below the bound carried in `expected`.
CaseRecord make_upper_bound_case(std::string id, double bound, double observed) {
  CaseRecord c;
  c.id = std::move(id);
  c.expected = bound;
  c.observed = observed;
  c.abs_error = std::abs(observed - bound);
  c.rel_error = bound != 0.0 ? c.abs_error / std::abs(bound) : c.abs_error;
  c.tolerance = 0.0;
  c.pass = observed < bound;
  c.note = "strict upper bound: observed < expected";
  return c;
}

CaseRecord failed_case(std::string id, const std::exception& ex) {
  CaseRecord c;
  c.id = std::move(id);
  c.expected = std::nan("");
  c.observed = std::nan("");
  c.abs_error = std::nan("");
  c.rel_error = std::nan("");
  c.pass = false;
  c.note = std::string("error: ") + ex.what();
  return c;
}

std::string mn_id(const char* suite, int m, int n) {
  return std::string(suite) + "/m=" + std::to_string(m) + "/n=" + std::to_string(n);
}

// Runs `work(i)` for i in [0, count) in parallel; each call returns the
// records for that item, assembled afterwards in item order.
std::vector<CaseRecord> run_items(int count, const std::function<std::vector<CaseRecord>(int)>& work,
                                  const std::function<std::string(int)>& label) {
  std::vector<std::vector<CaseRecord>> slots(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CaseRecord> out;
    try {
      out = work(i);
    } catch (const std::exception& ex) {
      out = {failed_case(label(i), ex)};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& c : out) c.runtime_seconds = elapsed / static_cast<double>(out.size());
    slots[static_cast<std::size_t>(i)] = std::move(out);
  }
  std::vector<CaseRecord> all;
  for (auto& s : slots) all.insert(all.end(), s.begin(), s.end());
  return all;
}

std::vector<double> sample(const polar::RealFunction& f, const Grid& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.n_interior()));
  for (int i = 0; i < grid.n_interior(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
  return v;
}

struct ResidualMeasurement {
  double residual;
  double predicted;  // max over the window of (h^2/24) |y''''|
};

ResidualMeasurement measure_residual(const QuantumNumbers& qn, int n_cells) {
  const Grid grid = Grid::from_cells(n_cells);
  const auto potential = polar::polar_potential(qn.m());
  const auto op = eigensolver::discretize(potential, grid, eigensolver::EndpointTreatment::pointwise);
  const auto state = polar::analytic_eigenfunction(qn);
  const auto y = sample(state.wavefunction, grid);
  const auto hy = op.apply(y);

  const double h = grid.spacing();
  const double c = *potential.endpoint_coefficient();
  const double lo = std::numbers::pi / 8.0;
  const double hi = 7.0 * std::numbers::pi / 8.0;
  const double delta = 1e-5;

  ResidualMeasurement out{0.0, 0.0};
  for (int i = 2; i < grid.n_interior() - 2; ++i) {
    const double t = grid.node(i);
    if (t < lo || t > hi) continue;
    const double yi = y[static_cast<std::size_t>(i)];
    out.residual = std::max(out.residual, std::abs(hy[static_cast<std::size_t>(i)] - state.energy * yi));

    // y'' = 2 (V - E) y  =>  y'''' = 2 V'' y + 4 V' y' + 4 (V - E)^2 y
    const double s = std::sin(t);
    const double cs = std::cos(t);
    const double v = c / (s * s);
    const double dv = -2.0 * c * cs / (s * s * s);
    const double d2v = 2.0 * c / (s * s) + 6.0 * c * cs * cs / (s * s * s * s);
    const double dy = (state.wavefunction(t + delta) - state.wavefunction(t - delta)) / (2.0 * delta);
    const double y4 = 2.0 * d2v * yi + 4.0 * dv * dy + 4.0 * (v - state.energy) * (v - state.energy) * yi;
    out.predicted = std::max(out.predicted, h * h / 24.0 * std::abs(y4));
  }
  return out;
}

}  // namespace

bool VerificationReport::pass() const {
  return std::all_of(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.pass; });
}

void VerificationReport::append(const VerificationReport& other) {
  cases.insert(cases.end(), other.cases.begin(), other.cases.end());
}

double orthonormal_diagonal_tolerance(int m) {
  return m == 0 ? kOrthonormalOffDiagonalTol : kOrthonormalDiagonalTol;
}

double spectrum_tolerance(int m) {
  if (m == 0) return 1e-2;
  if (m == 1) return 1e-4;
  return 1e-5;
}

VerificationReport verify_spectrum(const std::vector<int>& m_values, int n_max, int n_cells) {
  if (m_values.empty()) throw DomainError("spectrum suite needs at least one m value");
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  if (n_cells % 2 != 0 || n_cells / 2 <= n_max + 1) {
    throw DomainError("spectrum suite needs an even cell count large enough to halve");
  }
  for (int m : m_values) {
    if (m < 0) throw DomainError("m values must be nonnegative");
  }
  VerificationReport report{"spectrum", {}};
  const int levels = n_max + 1;
  report.cases = run_items(
      static_cast<int>(m_values.size()),
      [&](int idx) {
        const int m = m_values[static_cast<std::size_t>(idx)];
        std::vector<CaseRecord> out;
        const auto coarse = eigensolver::polar_energies(m, levels, n_cells / 2);
        const auto fine = eigensolver::polar_energies(m, levels, n_cells);
        for (int n = 0; n < levels; ++n) {
          const double exact = polar::analytic_energy(QuantumNumbers::from_level(m, n));
          const double ec = coarse[static_cast<std::size_t>(n)];
          const double ef = fine[static_cast<std::size_t>(n)];
          if (m == 0) {
            auto c = make_case(mn_id("spectrum", m, n), exact, ef, spectrum_tolerance(m), true);
            c.note = "raw energy, relative tolerance";
            out.push_back(std::move(c));
            auto r = make_upper_bound_case(mn_id("spectrum", m, n) + "/refinement",
                                           std::abs(ec - exact) / exact, std::abs(ef - exact) / exact);
            r.note = "relative error at n_cells must be below the error at n_cells/2";
            out.push_back(std::move(r));
          } else {
            auto c = make_case(mn_id("spectrum", m, n), exact, eigensolver::richardson_extrapolate(ec, ef),
                               spectrum_tolerance(m), true);
            c.note = "Richardson extrapolated, relative tolerance";
            out.push_back(std::move(c));
          }
        }
        return out;
      },
      [&](int idx) { return "spectrum/m=" + std::to_string(m_values[static_cast<std::size_t>(idx)]); });
  return report;
}

VerificationReport verify_residual(const QuantumNumbers& qn, int n_cells) {
  if (n_cells % 2 != 0 || n_cells < 32) throw DomainError("residual suite needs an even cell count >= 32");
  VerificationReport report{"residual", {}};
  const std::string base = mn_id("residual", qn.m(), qn.n());
  report.cases = run_items(
      1,
      [&](int) {
        const auto coarse = measure_residual(qn, n_cells / 2);
        const auto fine = measure_residual(qn, n_cells);
        std::vector<CaseRecord> out;
        const double order = std::log2(coarse.residual / fine.residual);
        auto oc = make_case(base + "/order", 2.0, order, kResidualOrderTolerance, false);
        oc.note = "observed p from residuals at n_cells/2 and n_cells over [pi/8, 7pi/8]";
        out.push_back(std::move(oc));

        const double h = std::numbers::pi / n_cells;
        const double bound = 1.5 * fine.predicted + 1e-12;
        auto mc = make_upper_bound_case(base + "/magnitude", bound, fine.residual);
        mc.note = "max |(H y - E y)_i| over the window <= 1.5 C h^2 with C = " +
                  std::to_string(fine.predicted / (h * h)) + ", p = 2";
        out.push_back(std::move(mc));
        return out;
      },
      [&](int) { return base; });
  return report;
}

VerificationReport verify_orthonormality(int m, int n_max, int n_cells) {
  if (m < 0 || n_max < 0) throw DomainError("orthonormality suite needs m, n_max >= 0");
  const Grid grid = Grid::from_cells(n_cells);
  std::vector<std::vector<double>> states(static_cast<std::size_t>(n_max + 1));
  for (int n = 0; n <= n_max; ++n) {
    states[static_cast<std::size_t>(n)] =
        sample(polar::analytic_eigenfunction(QuantumNumbers::from_level(m, n)).wavefunction, grid);
  }
  VerificationReport report{"orthonormality", {}};
  report.cases = run_items(
      n_max + 1,
      [&](int i) {
        std::vector<CaseRecord> out;
        for (int j = i; j <= n_max; ++j) {
          const double g = eigensolver::inner_product(states[static_cast<std::size_t>(i)],
                                                      states[static_cast<std::size_t>(j)], grid);
          const bool diag = i == j;
          out.push_back(make_case("orthonormality/m=" + std::to_string(m) + "/G[" + std::to_string(i) + "," +
                                      std::to_string(j) + "]",
                                  diag ? 1.0 : 0.0, g, diag ? orthonormal_diagonal_tolerance(m) : kOrthonormalOffDiagonalTol,
                                  false));
        }
        return out;
      },
      [&](int i) { return "orthonormality/m=" + std::to_string(m) + "/row=" + std::to_string(i); });
  double worst = 0.0;
  for (const auto& c : report.cases) worst = std::max(worst, c.abs_error);
  auto summary = make_case("orthonormality/m=" + std::to_string(m) + "/max|G-I|", 0.0, worst,
                           kOrthonormalOffDiagonalTol, false);
  report.cases.push_back(std::move(summary));
  return report;
}

VerificationReport verify_confinement(const std::vector<int>& m_values, int n, int n_cells) {
  if (m_values.empty()) throw DomainError("confinement suite needs at least one m value");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 0) throw DomainError("m values must be nonnegative");
    if (i > 0 && m_values[i] <= m_values[i - 1]) throw DomainError("m values must be strictly ascending");
  }
  const Grid grid = Grid::from_cells(n_cells);
  const int count = static_cast<int>(m_values.size());
  std::vector<double> analytic(static_cast<std::size_t>(count));
  std::vector<double> numeric(static_cast<std::size_t>(count), std::nan(""));
  std::vector<std::string> numeric_error(static_cast<std::size_t>(count));

  const auto start = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    const int m = m_values[static_cast<std::size_t>(i)];
    const auto y = sample(polar::analytic_eigenfunction(QuantumNumbers::from_level(m, n)).wavefunction, grid);
    analytic[static_cast<std::size_t>(i)] = eigensolver::observables(y, grid).variance_about_midpoint;
    try {
      const auto sols = eigensolver::solve_polar(m, n + 1, n_cells, false);
      numeric[static_cast<std::size_t>(i)] =
          eigensolver::observables(sols[static_cast<std::size_t>(n)], grid).variance_about_midpoint;
    } catch (const std::exception& ex) {
      numeric_error[static_cast<std::size_t>(i)] = ex.what();
    }
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  VerificationReport report{"confinement", {}};
  const std::string level = "/n=" + std::to_string(n);
  for (int i = 0; i < count; ++i) {
    const int m = m_values[static_cast<std::size_t>(i)];
    if (!numeric_error[static_cast<std::size_t>(i)].empty()) {
      report.cases.push_back(failed_case("confinement/numeric" + level + "/m=" + std::to_string(m),
                                         NumericError(numeric_error[static_cast<std::size_t>(i)])));
    }
    if (i > 0) {
      const std::string step = "/m=" + std::to_string(m_values[static_cast<std::size_t>(i - 1)]) + "->" +
                               std::to_string(m);
      report.cases.push_back(make_upper_bound_case("confinement/analytic" + level + step,
                                                   analytic[static_cast<std::size_t>(i - 1)],
                                                   analytic[static_cast<std::size_t>(i)]));
      report.cases.push_back(make_upper_bound_case("confinement/numeric" + level + step,
                                                   numeric[static_cast<std::size_t>(i - 1)],
                                                   numeric[static_cast<std::size_t>(i)]));
    }
    if (m >= 1) {
      report.cases.push_back(make_case("confinement/agreement" + level + "/m=" + std::to_string(m),
                                       analytic[static_cast<std::size_t>(i)], numeric[static_cast<std::size_t>(i)],
                                       kVarianceAgreementTol, false));
    }
  }
  // Harmonic expansion about pi/2 gives Var ~ 1/(2m) at large m; check a loose envelope.
  const auto anchor = std::find_if(m_values.begin(), m_values.end(), [](int m) { return m >= 10; });
  if (anchor != m_values.end() && *anchor != m_values.back()) {
    const auto ia = static_cast<std::size_t>(anchor - m_values.begin());
    const double ma = *anchor;
    const double mb = m_values.back();
    auto c = make_upper_bound_case("confinement/harmonic-envelope" + level + "/m=" + std::to_string(*anchor) +
                                       "->" + std::to_string(m_values.back()),
                                   analytic[ia] * std::sqrt(ma / mb) * 1.5, analytic.back());
    c.note = "Var(m_last) < Var(m_anchor) * sqrt(m_anchor/m_last) * 1.5";
    report.cases.push_back(std::move(c));
  }
  for (auto& c : report.cases) c.runtime_seconds = elapsed / static_cast<double>(report.cases.size());
  return report;
}

VerificationReport verify_degeneracy(int l_max) {
  if (l_max < 0) throw DomainError("l_max must be nonnegative");
  VerificationReport report{"degeneracy", {}};
  report.cases = run_items(
      l_max + 1,
      [](int l) {
        const double target = 0.5 * (l * (l + 1.0) + 0.25);
        double worst = target;
        for (int m = 0; m <= l; ++m) {
          const double e = polar::analytic_energy(QuantumNumbers::from_orbital(m, l));
          if (std::abs(e - target) >= std::abs(worst - target)) worst = e;
        }
        auto c = make_case("degeneracy/l=" + std::to_string(l), target, worst, kDegeneracyTol, false);
        c.note = "worst of " + std::to_string(l + 1) + " m values";
        return std::vector<CaseRecord>{c};
      },
      [](int l) { return "degeneracy/l=" + std::to_string(l); });
  return report;
}

VerificationReport verify_legendre(int l_max) {
  if (l_max < 0 || l_max > legendre::kRodriguesMaxDegree) throw DomainError("l_max outside the oracle range");
  VerificationReport report{"legendre", {}};
  report.cases = run_items(
      l_max + 1,
      [](int l) {
        std::vector<CaseRecord> out;
        for (int m = 0; m <= l; ++m) {
          double worst = 0.0;
          double at_rec = 0.0;
          double at_oracle = 0.0;
          double scale = 1.0;
          for (int k = 0; k <= 100; ++k) {
            const double x = -1.0 + 2.0 * k / 100.0;
            const double a = legendre::assoc_legendre(l, m, x);
            const double b = legendre::rodrigues_oracle(l, m, x);
            scale = std::max(scale, std::abs(b));
            if (std::abs(a - b) >= worst) {
              worst = std::abs(a - b);
              at_rec = a;
              at_oracle = b;
            }
          }
          auto c = make_case("legendre/l=" + std::to_string(l) + "/m=" + std::to_string(m), at_oracle, at_rec,
                             kLegendreOracleTol * scale, false);
          c.note = "worst point of 101; tolerance scaled by max(1, max|P_l^m|)";
          out.push_back(std::move(c));
        }
        return out;
      },
      [](int l) { return "legendre/l=" + std::to_string(l); });
  return report;
}

}  // namespace polarwell::verify
