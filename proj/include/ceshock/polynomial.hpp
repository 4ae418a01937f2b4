#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ceshock {

using Rational = mpq_class;

/// Exact conversion of a finite double to a rational (doubles are dyadic).
Rational to_rational(double v);
double to_double(const Rational& q);

/// Univariate polynomial with exact rational coefficients, lowest degree first.
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and degree() == -1.
class ExactPolynomial {
 public:
  ExactPolynomial() = default;
  explicit ExactPolynomial(std::vector<Rational> coeffs);

  static ExactPolynomial constant(const Rational& c);
  /// The monomial x - root.
  static ExactPolynomial linear(const Rational& root);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t k) const;

  Rational operator()(const Rational& x) const;
  /// Exact evaluation at a double, rounded once at the end.
  double eval(double x) const;
  /// Sign of the exact value at a double point.
  int sign_at(double x) const;

  ExactPolynomial derivative() const;
  /// Largest numerator/denominator size over all coefficients, in bits.
  std::size_t max_coefficient_bits() const;

  friend ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
  friend ExactPolynomial operator*(const Rational& s, const ExactPolynomial& a);
  friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// All real roots of p in the closed interval [lo, hi], ascending. Uses a
/// derivative cascade: the roots of p' split [lo, hi] into monotone pieces,
/// each bracketed and bisected with exact sign evaluation down to adjacent
/// doubles. Even-multiplicity roots that are not exactly representable are
/// missed; they carry no sign change.
std::vector<double> real_roots(const ExactPolynomial& p, double lo, double hi);

}  // namespace ceshock
