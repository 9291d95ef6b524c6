#include <doctest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "polarwell/eigensolver.hpp"
#include "polarwell/errors.hpp"
#include "polarwell/polar_model.hpp"
#include "test_support.hpp"

using namespace polarwell;
using namespace polarwell::eigensolver;
constexpr double kPi = std::numbers::pi;

namespace {

TridiagonalOperator random_operator(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n - 1));
  for (auto& v : diag) v = d(rng);
  for (auto& v : off) v = d(rng);
  return TridiagonalOperator(diag, off);
}

Eigen::VectorXd dense_eigenvalues(const TridiagonalOperator& op) {
  const int n = op.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = op.diagonal()[std::size_t(i)];
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = op.off_diagonal()[std::size_t(i)];
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace

TEST_CASE("grid geometry") {
  const auto g = Grid::from_interior(3);
  CHECK(g.spacing() == doctest::Approx(kPi / 4));
  CHECK(g.n_cells() == 4);
  CHECK(g.node(0) == doctest::Approx(kPi / 4));
  CHECK(g.node(2) == doctest::Approx(3 * kPi / 4));
  const auto c = Grid::from_cells(4000);
  CHECK(c.n_interior() == 3999);
  CHECK(c.spacing() == doctest::Approx(kPi / 4000));
  CHECK_THROWS_AS((void)Grid::from_interior(0), DomainError);
  CHECK_THROWS_AS((void)Grid::from_cells(1), DomainError);
}

TEST_CASE("discretize a zero potential") {
  const auto g = Grid::from_interior(3);
  const auto op = discretize(polar::box_potential(), g);
  const double h = kPi / 4;
  REQUIRE(op.size() == 3);
  for (double d : op.diagonal()) CHECK(d == doctest::Approx(1.0 / (h * h)).epsilon(1e-15));
  REQUIRE(op.off_diagonal().size() == 2);
  for (double o : op.off_diagonal()) CHECK(o == doctest::Approx(-0.5 / (h * h)).epsilon(1e-15));
}

TEST_CASE("discretize V_1 near the midpoint") {
  for (int cells : {10, 100, 1000, 4000}) {
    const auto g = Grid::from_cells(cells);
    const auto op = discretize(polar::polar_potential(1), g);
    const int mid = cells / 2 - 1;  // node(mid) = pi/2 for even cell counts
    const double h = g.spacing();
    CHECK(op.diagonal()[std::size_t(mid)] - 1.0 / (h * h) == doctest::Approx(0.375).epsilon(1e-9));
  }
  const auto odd = Grid::from_cells(101);
  const auto op = discretize(polar::polar_potential(1), odd);
  const double h = odd.spacing();
  // nearest node is h/2 from the midpoint; V'' (pi/2) = 0.75
  CHECK(std::abs(op.diagonal()[50] - 1.0 / (h * h) - 0.375) <= 0.75 * h * h);
}

TEST_CASE("discretize rejects non-finite samples") {
  const polar::PotentialSpec bad([](double t) { return t > 1.0 ? std::nan("") : 0.0; }, "bad");
  CHECK_THROWS_AS((void)discretize(bad, Grid::from_cells(20)), NumericError);
  const polar::PotentialSpec inf([](double) { return HUGE_VAL; }, "inf");
  CHECK_THROWS_AS((void)discretize(inf, Grid::from_cells(20)), NumericError);
}

TEST_CASE("box spectrum at 3999 interior nodes") {
  const auto g = Grid::from_interior(3999);
  const auto start = std::chrono::steady_clock::now();
  const auto op = discretize(polar::box_potential(), g);
  const auto e = lowest_eigenvalues(op, 3, 1e-12);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  REQUIRE(e.size() == 3);
  CHECK(e[0] == doctest::Approx(0.5).epsilon(1e-5));
  CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(e[2] == doctest::Approx(4.5).epsilon(1e-5));
  CHECK(secs < 1.0);
}

TEST_CASE("2x2 closed form") {
  const TridiagonalOperator op({2.0, 2.0}, {1.0});
  const double tol = 1e-13;
  const auto e = lowest_eigenvalues(op, 2, tol);
  CHECK(std::abs(e[0] - 1.0) <= tol);
  CHECK(std::abs(e[1] - 3.0) <= tol);
  CHECK_THROWS_AS((void)lowest_eigenvalues(op, 3, tol), DomainError);
  CHECK_THROWS_AS((void)lowest_eigenvalues(op, 0, tol), DomainError);
  CHECK_THROWS_AS((void)lowest_eigenvalues(op, 1, 0.0), DomainError);
}

TEST_CASE("operator shape is validated") {
  CHECK_THROWS_AS(TridiagonalOperator({1.0, 2.0}, {}), DomainError);
  const TridiagonalOperator op({2.0, 2.0, 2.0}, {1.0, -1.0});
  const auto y = op.apply(std::vector<double>{1.0, 2.0, 3.0});
  CHECK(y[0] == doctest::Approx(4.0));
  CHECK(y[1] == doctest::Approx(2.0));
  CHECK(y[2] == doctest::Approx(4.0));
}

TEST_CASE("bisection agrees with a dense symmetric eigensolver") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial * 3;
    const auto op = random_operator(rng, n);
    const auto dense = dense_eigenvalues(op);
    const int k = std::min(n, 10);
    const auto e = lowest_eigenvalues(op, k, 1e-12);
    for (int j = 0; j < k; ++j) CHECK(e[std::size_t(j)] == doctest::Approx(dense(j)).epsilon(1e-10));
    const auto [lo, hi] = gershgorin_bounds(op);
    CHECK(lo <= dense(0));
    CHECK(hi >= dense(n - 1));
  }
}

TEST_CASE("sturm count at midpoints between eigenvalues") {
  for (int m : {0, 1, 5}) {
    const auto g = Grid::from_cells(2000);
    const auto op = discretize(polar::polar_potential(m), g, EndpointTreatment::automatic);
    const auto e = lowest_eigenvalues(op, 6, 1e-12);
    for (int j = 0; j + 1 < 6; ++j) {
      CHECK(e[std::size_t(j)] < e[std::size_t(j + 1)]);
      CHECK(sturm_count(op, 0.5 * (e[std::size_t(j)] + e[std::size_t(j + 1)])) == j + 1);
    }
    CHECK(sturm_count(op, e[0] - 1.0) == 0);
  }
}

TEST_CASE("box eigenvectors") {
  const auto g = Grid::from_interior(3999);
  const auto op = discretize(polar::box_potential(), g);
  const auto e = lowest_eigenvalues(op, 2, 1e-12);
  const auto ground = eigenvector(op, e[0], g);
  double worst = 0.0;
  for (int i = 0; i < g.n_interior(); ++i)
    worst = std::max(worst, std::abs(ground.vector[std::size_t(i)] - std::sqrt(2.0 / kPi) * std::sin(g.node(i))));
  CHECK(worst <= 1e-4);
  CHECK(ground.node_count == 0);
  CHECK(ground.provenance == Provenance::numeric);
  CHECK(inner_product(ground.vector, ground.vector, g) == doctest::Approx(1.0).epsilon(1e-12));
  const auto second = eigenvector(op, e[1], g);
  CHECK(second.node_count == 1);
  CHECK(second.vector.front() > 0.0);
  CHECK(std::abs(inner_product(ground.vector, second.vector, g)) <= 1e-8);
}

TEST_CASE("m = 0 ground state matches the analytic state") {
  const auto g = Grid::from_interior(8000);
  const auto sols = solve_potential(polar::polar_potential(0), 1, g);
  const auto exact = polar::analytic_eigenfunction(polar::QuantumNumbers::from_level(0, 0)).wavefunction;
  double worst = 0.0;
  for (int i = 0; i < g.n_interior(); ++i)
    worst = std::max(worst, std::abs(sols[0].vector[std::size_t(i)] - std::sqrt(std::sin(g.node(i)) / 2.0)));
  CHECK(worst <= 5e-3);
  for (int i = 0; i < g.n_interior(); i += 97)
    CHECK(exact(g.node(i)) == doctest::Approx(std::sqrt(std::sin(g.node(i)) / 2.0)).epsilon(1e-12));
}

TEST_CASE("richardson extrapolation") {
  CHECK(richardson_extrapolate(1.0, 1.0) == 1.0);
  // exact on pure h^2 error
  CHECK(richardson_extrapolate(2.0 + 4.0 * 0.3, 2.0 + 0.3) == doctest::Approx(2.0).epsilon(1e-15));
  const auto coarse = lowest_eigenvalues(discretize(polar::box_potential(), Grid::from_interior(999)), 1, 1e-13);
  const auto fine = lowest_eigenvalues(discretize(polar::box_potential(), Grid::from_interior(1999)), 1, 1e-13);
  CHECK(richardson_extrapolate(coarse[0], fine[0]) == doctest::Approx(0.5).epsilon(1e-8));
  const auto m2 = solve_polar(2, 1, 4000, true);
  CHECK(m2[0].energy == doctest::Approx(3.125).epsilon(1e-6));
}

TEST_CASE("observables") {
  const auto g = Grid::from_interior(3999);
  const auto op = discretize(polar::box_potential(), g);
  const auto e = lowest_eigenvalues(op, 1, 1e-12);
  const auto obs = observables(eigenvector(op, e[0], g), g);
  const double closed = kPi * kPi / 12.0 - 0.5;
  const double quad = polarwell::testing::simpson(
      [](double t) { return (t - kPi / 2) * (t - kPi / 2) * (2 / kPi) * std::sin(t) * std::sin(t); }, 0.0, kPi, 2001);
  CHECK(quad == doctest::Approx(closed).epsilon(1e-12));
  CHECK(obs.variance_about_midpoint == doctest::Approx(closed).epsilon(1e-5));
  CHECK(std::abs(obs.mean_theta - kPi / 2) <= 1e-10);

  const auto v10 = observables(solve_polar(10, 1, 4000, false)[0], Grid::from_cells(4000));
  const auto v30 = observables(solve_polar(30, 1, 4000, false)[0], Grid::from_cells(4000));
  CHECK(v30.variance_about_midpoint < v10.variance_about_midpoint);
  CHECK(v30.variance_about_midpoint > 0.0);
  for (int m : {0, 1, 5}) {
    const auto g2 = Grid::from_cells(2000);
    for (const auto& s : solve_polar(m, 4, 2000, false)) CHECK(std::abs(observables(s, g2).mean_theta - kPi / 2) <= 1e-10);
  }
}

TEST_CASE("solve_polar examples") {
  const auto m1 = solve_polar(1, 1, 4000, true);
  CHECK(m1[0].energy == doctest::Approx(1.125).epsilon(1e-4));
  const auto m0 = solve_polar(0, 2, 8000, false);
  CHECK(m0[0].energy == doctest::Approx(0.125).epsilon(1e-2));
  CHECK(m0[1].energy == doctest::Approx(1.125).epsilon(1e-2));
  const auto m10 = solve_polar(10, 1, 4000, true);
  CHECK(m10[0].energy == doctest::Approx(55.125).epsilon(1e-5));
  CHECK_THROWS_AS((void)solve_polar(1, 1, 4001, true), DomainError);
  CHECK_THROWS_AS((void)solve_polar(1, 5000, 4000, false), DomainError);
}

TEST_CASE("node counts and ordering of polar solutions") {
  for (int m : {0, 1, 2, 5, 30}) {
    const auto sols = solve_polar(m, 5, 2000, false);
    for (int j = 0; j < 5; ++j) {
      CHECK(sols[std::size_t(j)].node_count == j);
      CHECK(count_sign_changes(sols[std::size_t(j)].vector) == j);
      if (j > 0) CHECK(sols[std::size_t(j)].energy > sols[std::size_t(j - 1)].energy);
    }
  }
}

TEST_CASE("refinement decreases the raw error for m >= 1") {
  for (int m : {1, 2, 5, 10}) {
    const double exact = polar::analytic_energy(polar::QuantumNumbers::from_level(m, 0));
    std::vector<double> err;
    for (int cells : {500, 1000, 2000, 4000}) err.push_back(std::abs(polar_energies(m, 1, cells)[0] - exact));
    for (std::size_t i = 1; i < err.size(); ++i) CHECK(err[i] < err[i - 1]);
    const double order = std::log2(err[2] / err[3]);
    MESSAGE("m=" << m << " observed order " << order);
    if (m >= 2) CHECK(order == doctest::Approx(2.0).epsilon(0.1));
    else CHECK(order > 0.5);
  }
}

TEST_CASE("variational lower bounds") {
  for (int m : {0, 1, 2, 5, 10, 30}) {
    const auto g = Grid::from_cells(1000);
    const auto pot = polar::polar_potential(m);
    const auto op = discretize(pot, g, EndpointTreatment::automatic);
    const double e0 = lowest_eigenvalues(op, 1, 1e-12)[0];
    CHECK(e0 >= gershgorin_bounds(op).first);
    double vmin = HUGE_VAL;
    for (int i = 0; i < g.n_interior(); ++i) vmin = std::min(vmin, pot(g.node(i)));
    if (m >= 1) CHECK(e0 >= vmin);
  }
}

TEST_CASE("eigenvectors of one operator are orthogonal") {
  for (int m : {0, 1, 2, 10}) {
    const auto g = Grid::from_cells(2000);
    const auto sols = solve_potential(polar::polar_potential(m), 5, g);
    for (std::size_t a = 0; a < sols.size(); ++a) {
      CHECK(inner_product(sols[a].vector, sols[a].vector, g) == doctest::Approx(1.0).epsilon(1e-12));
      for (std::size_t b = a + 1; b < sols.size(); ++b)
        CHECK(std::abs(inner_product(sols[a].vector, sols[b].vector, g)) <= 1e-8);
    }
  }
}

TEST_CASE("operator symmetry of V_m") {
  const auto g = Grid::from_cells(400);
  for (int m : {0, 1, 3}) {
    const auto op = discretize(polar::polar_potential(m), g, EndpointTreatment::automatic);
    const int n = op.size();
    for (int i = 0; i < n / 2; ++i)
      CHECK(op.diagonal()[std::size_t(i)] == doctest::Approx(op.diagonal()[std::size_t(n - 1 - i)]).epsilon(1e-13));
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d;
    std::vector<double> x(static_cast<std::size_t>(n)), y(static_cast<std::size_t>(n));
    for (auto& v : x) v = d(rng);
    for (auto& v : y) v = d(rng);
    const auto tx = op.apply(x), ty = op.apply(y);
    double a = 0, b = 0;
    for (int i = 0; i < n; ++i) a += y[std::size_t(i)] * tx[std::size_t(i)], b += x[std::size_t(i)] * ty[std::size_t(i)];
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("power-law endpoint correction") {
  for (double c : {0.0, 1.0, 3.0})
    for (int i = 1; i < 50; ++i) CHECK(std::abs(power_law_correction(c, i)) <= 1e-12);
  // c = -1/8 has local solution t^{1/2}; the corrected stencil is exact on it
  const double c = -0.125;
  for (int i = 1; i < 200; ++i) {
    const double u = i;
    const double lap = std::sqrt(u + 1) - 2 * std::sqrt(u) + std::sqrt(u - 1);  // in units with h = 1
    const double lhs = -0.5 * lap + (c / (u * u) + power_law_correction(c, i)) * std::sqrt(u);
    CHECK(std::abs(lhs) <= 1e-12 * std::sqrt(u) + 1e-14);
  }
  CHECK_THROWS_AS((void)power_law_correction(-0.2, 1), DomainError);
  CHECK_THROWS_AS((void)power_law_correction(0.0, 0), DomainError);
}

TEST_CASE("count_sign_changes ignores insignificant samples") {
  CHECK(count_sign_changes(std::vector<double>{1, -1, 1}) == 2);
  CHECK(count_sign_changes(std::vector<double>{1, -1e-12, 1}) == 0);
  CHECK(count_sign_changes(std::vector<double>{0, 0, 0}) == 0);
}
