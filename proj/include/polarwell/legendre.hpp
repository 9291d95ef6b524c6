#pragma once

// Legendre polynomials and associated Legendre functions.
//
// Sign convention: P_l^m(x) = (1 - x^2)^{m/2} (d/dx)^m P_l(x) with no
// Condon-Shortley (-1)^m factor. Many tables (and std::assoc_legendre in some
// libraries) include that factor; values here differ from them by (-1)^m.
//
// Two independent paths are provided:
//  * assoc_legendre(): stable upward recurrence in l, the production path;
//  * rodrigues_oracle(): literal coefficient expansion and differentiation of
//    (x^2 - 1)^l, used to check the recurrence. Limited to l <= 30.

#include <cstddef>
#include <vector>

namespace polarwell::legendre {

inline constexpr int kRodriguesMaxDegree = 30;
inline constexpr int kNormalizationMaxDegree = 150;

/// Dense polynomial in x, coefficient index = power.
class PolynomialCoefficients {
 public:
  PolynomialCoefficients() = default;
  explicit PolynomialCoefficients(std::vector<double> coeffs);

  /// Index of the last nonzero coefficient; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;
  [[nodiscard]] const std::vector<double>& coeffs() const { return coeffs_; }
  [[nodiscard]] double operator()(double x) const;
  [[nodiscard]] PolynomialCoefficients derivative(int order = 1) const;
  [[nodiscard]] PolynomialCoefficients scaled(double factor) const;

 private:
  std::vector<double> coeffs_;
};

/// Coefficients of P_l obtained from the Rodrigues formula (l <= 30).
[[nodiscard]] PolynomialCoefficients rodrigues_polynomial(int l);

/// P_l(x) by the three-term recurrence.
[[nodiscard]] double legendre_poly(int l, double x);

/// P_l^m(x) by literal differentiation of the Rodrigues expansion (l <= 30).
[[nodiscard]] double rodrigues_oracle(int l, int m, double x);

/// P_l^m(x) by recurrence: seed P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward in l.
/// Returns 0 for m > l. May overflow for very large m (use normalized_assoc_legendre).
[[nodiscard]] double assoc_legendre(int l, int m, double x);

/// N_l^m with int_0^pi (N P_l^m(cos t))^2 sin t dt = 1, i.e.
/// sqrt((2l+1)/2 * (l-m)!/(l+m)!). Requires m <= l <= 150.
[[nodiscard]] double theta_normalization(int l, int m);

/// N_l^m P_l^m(x) evaluated directly by the normalized recurrence, which stays
/// in range where the separate factors would overflow or underflow.
[[nodiscard]] double normalized_assoc_legendre(int l, int m, double x);

}  // namespace polarwell::legendre
