#include "polarwell/legendre.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "polarwell/errors.hpp"

namespace polarwell::legendre {
namespace {

void check_argument(double x) {
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("Legendre argument must satisfy |x| <= 1, got " + std::to_string(x));
  }
}

void check_degree(int l) {
  if (l < 0) throw DomainError("Legendre degree must be nonnegative, got " + std::to_string(l));
}

void check_order(int m) {
  if (m < 0) throw DomainError("Legendre order must be nonnegative, got " + std::to_string(m));
}

// (1 - x^2)^{m/2} computed as ((1-x)(1+x))^{m/2} to keep accuracy near |x| = 1.
double sine_power(int m, double x) {
  return std::pow((1.0 - x) * (1.0 + x), 0.5 * m);
}

}  // namespace

PolynomialCoefficients::PolynomialCoefficients(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

int PolynomialCoefficients::degree() const {
  for (int i = static_cast<int>(coeffs_.size()) - 1; i >= 0; --i) {
    if (coeffs_[static_cast<std::size_t>(i)] != 0.0) return i;
  }
  return -1;
}

double PolynomialCoefficients::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

PolynomialCoefficients PolynomialCoefficients::derivative(int order) const {
  std::vector<double> c = coeffs_;
  for (int k = 0; k < order && !c.empty(); ++k) {
    std::vector<double> d(c.size() > 1 ? c.size() - 1 : 0);
    for (std::size_t p = 1; p < c.size(); ++p) d[p - 1] = static_cast<double>(p) * c[p];
    c = std::move(d);
  }
  return PolynomialCoefficients(std::move(c));
}

PolynomialCoefficients PolynomialCoefficients::scaled(double factor) const {
  std::vector<double> c = coeffs_;
  for (double& v : c) v *= factor;
  return PolynomialCoefficients(std::move(c));
}

PolynomialCoefficients rodrigues_polynomial(int l) {
  check_degree(l);
  if (l > kRodriguesMaxDegree) {
    throw CapabilityError("Rodrigues expansion limited to l <= " + std::to_string(kRodriguesMaxDegree));
  }
  // (x^2 - 1)^l = sum_k C(l,k) (-1)^{l-k} x^{2k}
  std::vector<double> c(static_cast<std::size_t>(2 * l + 1), 0.0);
  double binom = 1.0;
  for (int k = 0; k <= l; ++k) {
    c[static_cast<std::size_t>(2 * k)] = ((l - k) % 2 == 0 ? binom : -binom);
    binom = binom * (l - k) / (k + 1);
  }
  double scale = 1.0;  // 1 / (2^l l!)
  for (int k = 1; k <= l; ++k) scale /= 2.0 * k;
  return PolynomialCoefficients(std::move(c)).derivative(l).scaled(scale);
}

double legendre_poly(int l, double x) {
  check_degree(l);
  check_argument(x);
  if (l == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 2; k <= l; ++k) {
    const double next = ((2 * k - 1) * x * cur - (k - 1) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double rodrigues_oracle(int l, int m, double x) {
  check_degree(l);
  check_order(m);
  check_argument(x);
  if (l > kRodriguesMaxDegree) {
    throw CapabilityError("Rodrigues oracle limited to l <= " + std::to_string(kRodriguesMaxDegree));
  }
  if (m > l) return 0.0;
  return sine_power(m, x) * rodrigues_polynomial(l).derivative(m)(x);
}

double assoc_legendre(int l, int m, double x) {
  check_degree(l);
  check_order(m);
  check_argument(x);
  if (m > l) return 0.0;

  double pmm = sine_power(m, x);
  for (int k = 1; k <= m; ++k) pmm *= 2.0 * k - 1.0;
  if (l == m) return pmm;

  double prev = pmm;
  double cur = x * (2.0 * m + 1.0) * pmm;
  for (int k = m + 2; k <= l; ++k) {
    const double next = ((2.0 * k - 1.0) * x * cur - (k + m - 1.0) * prev) / (k - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

double theta_normalization(int l, int m) {
  check_degree(l);
  check_order(m);
  if (m > l) throw DomainError("normalization requires m <= l");
  if (l > kNormalizationMaxDegree) {
    throw CapabilityError("normalization limited to l <= " + std::to_string(kNormalizationMaxDegree));
  }
  // sqrt((l-m)!/(l+m)!) as a running product of 1/sqrt(k) to stay clear of underflow.
  double ratio = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= std::sqrt(static_cast<double>(k));
  return std::sqrt(0.5 * (2.0 * l + 1.0)) * ratio;
}

double normalized_assoc_legendre(int l, int m, double x) {
  check_degree(l);
  check_order(m);
  check_argument(x);
  if (m > l) return 0.0;

  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = std::sqrt(0.5);
  for (int k = 1; k <= m; ++k) pmm *= std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  if (l == m) return pmm;

  double prev = pmm;
  double cur = x * std::sqrt(2.0 * m + 3.0) * pmm;
  double a_prev = std::sqrt(2.0 * m + 3.0);
  for (int k = m + 2; k <= l; ++k) {
    const double kk = static_cast<double>(k);
    const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - static_cast<double>(m) * m));
    const double next = a * (x * cur - prev / a_prev);
    prev = cur;
    cur = next;
    a_prev = a;
  }
  return cur;
}

}  // namespace polarwell::legendre
