#include "polarwell/polar_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "polarwell/errors.hpp"
#include "polarwell/legendre.hpp"

namespace polarwell::polar {
namespace {

void check_open_interval(double theta) {
  if (!(theta > 0.0 && theta < std::numbers::pi)) {
    throw DomainError("theta must lie in the open interval (0, pi), got " + std::to_string(theta));
  }
}

}  // namespace

QuantumNumbers QuantumNumbers::from_level(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("quantum numbers m and n must be nonnegative");
  return {m, n};
}

QuantumNumbers QuantumNumbers::from_orbital(int m, int l) {
  if (m < 0) throw DomainError("magnetic quantum number must be nonnegative");
  if (m > l) throw DomainError("requires m <= l");
  return {m, l - m};
}

PotentialSpec::PotentialSpec(RealFunction evaluator, std::string label,
                             std::optional<double> endpoint_coefficient)
    : evaluator_(std::move(evaluator)),
      label_(std::move(label)),
      endpoint_coefficient_(endpoint_coefficient) {}

double PotentialSpec::operator()(double theta) const {
  check_open_interval(theta);
  return evaluator_(theta);
}

PotentialSpec polar_potential(int m) {
  if (m < 0) throw DomainError("polar potential index m must be nonnegative");
  const double coefficient = 0.5 * (static_cast<double>(m) * m - 0.25);
  return PotentialSpec(
      [coefficient](double theta) {
        const double s = std::sin(theta);
        return coefficient / (s * s);
      },
      "m=" + std::to_string(m), coefficient);
}

PotentialSpec box_potential() {
  return PotentialSpec([](double) { return 0.0; }, "box");
}

double analytic_energy(const QuantumNumbers& qn) {
  const double k = qn.n() + qn.m() + 0.5;
  return 0.5 * k * k;
}

RealFunction analytic_theta_function(const QuantumNumbers& qn) {
  const int l = qn.l();
  const int m = qn.m();
  if (l > legendre::kNormalizationMaxDegree) {
    throw CapabilityError("analytic eigenfunctions limited to l <= 150");
  }
  return [l, m](double theta) { return legendre::normalized_assoc_legendre(l, m, std::cos(theta)); };
}

AnalyticState analytic_eigenfunction(const QuantumNumbers& qn) {
  const int l = qn.l();
  const int m = qn.m();
  if (l > legendre::kNormalizationMaxDegree) {
    throw CapabilityError("analytic eigenfunctions limited to l <= 150");
  }
  // P_l^m(cos t) > 0 near t = 0 without the Condon-Shortley phase, so the
  // first lobe is already positive.
  auto y = [l, m](double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
      throw DomainError("y-form wavefunction is defined on [0, pi]");
    }
    const double s = std::sin(theta);
    return std::sqrt(std::max(s, 0.0)) * legendre::normalized_assoc_legendre(l, m, std::cos(theta));
  };
  return {qn, analytic_energy(qn), std::move(y)};
}

RealFunction to_schrodinger_form(RealFunction theta_wavefunction) {
  return [f = std::move(theta_wavefunction)](double theta) {
    check_open_interval(theta);
    return std::sqrt(std::sin(theta)) * f(theta);
  };
}

RealFunction from_schrodinger_form(RealFunction y) {
  return [f = std::move(y)](double theta) {
    check_open_interval(theta);
    return f(theta) / std::sqrt(std::sin(theta));
  };
}

std::complex<double> azimuthal_mode(double m, double phi) {
  if (!std::isfinite(m) || std::trunc(m) != m) {
    throw DomainError("azimuthal mode requires integral m for a single-valued solution");
  }
  // Reduce m*phi modulo 2 pi so that phi and phi + 2 pi land on the same angle.
  const double reduced_phi = std::remainder(phi, 2.0 * std::numbers::pi);
  const double angle = std::remainder(m * reduced_phi, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle);
}

double effective_radial_potential(const RealFunction& v, int l, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (l < 0) throw DomainError("orbital quantum number must be nonnegative");
  return v(r) + 0.5 * l * (l + 1.0) / (r * r);
}

std::vector<QuantumNumbers> quantum_lattice(int l_max) {
  std::vector<QuantumNumbers> lattice;
  if (l_max < 0) return lattice;
  lattice.reserve(static_cast<std::size_t>((l_max + 1) * (l_max + 2) / 2));
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m; l <= l_max; ++l) lattice.push_back(QuantumNumbers::from_orbital(m, l));
  }
  return lattice;
}

}  // namespace polarwell::polar
