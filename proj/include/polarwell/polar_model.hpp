#pragma once

// The polar equation recast as a one-dimensional Schroedinger problem on
// (0, pi) in natural units (hbar = mass = 1):
//
//   -1/2 y'' + (m^2 - 1/4) / (2 sin^2 t) y = E y,   y(0) = y(pi) = 0,
//
// with Theta(t) = sin^{-1/2}(t) y(t). The letter m is used only for the
// magnetic quantum number; the particle mass is fixed to 1.

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polarwell::polar {

/// (m, n, l) with l = m + n. Only m and n are stored so the relation cannot break.
class QuantumNumbers {
 public:
  static QuantumNumbers from_level(int m, int n);
  static QuantumNumbers from_orbital(int m, int l);

  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int l() const { return m_ + n_; }

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

 private:
  QuantumNumbers(int m, int n) : m_(m), n_(n) {}
  int m_;
  int n_;
};

using RealFunction = std::function<double(double)>;

/// An evaluable potential on the open interval (0, pi).
class PotentialSpec {
 public:
  /// endpoint_coefficient, when present, is c in V(t) ~ c / t^2 as t -> 0 and
  /// V(t) ~ c / (pi - t)^2 as t -> pi.
  PotentialSpec(RealFunction evaluator, std::string label,
                std::optional<double> endpoint_coefficient = std::nullopt);

  /// Throws DomainError unless 0 < theta < pi.
  [[nodiscard]] double operator()(double theta) const;
  [[nodiscard]] const std::string& label() const { return label_; }
  [[nodiscard]] std::optional<double> endpoint_coefficient() const { return endpoint_coefficient_; }

 private:
  RealFunction evaluator_;
  std::string label_;
  std::optional<double> endpoint_coefficient_;
};

/// V_m(t) = (m^2 - 1/4) / (2 sin^2 t).
[[nodiscard]] PotentialSpec polar_potential(int m);

/// V == 0 on (0, pi): the particle in a box of width pi.
[[nodiscard]] PotentialSpec box_potential();

struct AnalyticState {
  QuantumNumbers qn;
  double energy;
  RealFunction wavefunction;  // y-form, defined on [0, pi]
};

/// (1/2)(n + m + 1/2)^2.
[[nodiscard]] double analytic_energy(const QuantumNumbers& qn);

/// y_n^m(t) = N_l^m sin^{1/2} t P_l^m(cos t), unit norm under dt, positive
/// just right of t = 0. Requires l <= 150.
[[nodiscard]] AnalyticState analytic_eigenfunction(const QuantumNumbers& qn);

/// Theta_l^m(t) = N_l^m P_l^m(cos t), unit norm under sin t dt.
[[nodiscard]] RealFunction analytic_theta_function(const QuantumNumbers& qn);

/// y(t) = sin^{1/2}(t) Theta(t).
[[nodiscard]] RealFunction to_schrodinger_form(RealFunction theta_wavefunction);

/// Theta(t) = sin^{-1/2}(t) y(t); the returned function throws DomainError
/// outside the open interval (0, pi).
[[nodiscard]] RealFunction from_schrodinger_form(RealFunction y);

/// e^{i m phi}; m must be integral.
[[nodiscard]] std::complex<double> azimuthal_mode(double m, double phi);

/// V(r) + l(l+1)/(2 r^2).
[[nodiscard]] double effective_radial_potential(const RealFunction& v, int l, double r);

/// Every (m, l) with 0 <= m <= l <= l_max, ordered by m then l.
[[nodiscard]] std::vector<QuantumNumbers> quantum_lattice(int l_max);

}  // namespace polarwell::polar
