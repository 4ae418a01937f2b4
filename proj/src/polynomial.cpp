#include "ceshock/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "ceshock/errors.hpp"

namespace ceshock {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw ConfigError("cannot convert non-finite value to rational");
  Rational q(v);  // mpq_set_d is exact
  return q;
}

double to_double(const Rational& q) {
  // get_d truncates; pick the nearer of the two neighbouring doubles
  const double t = q.get_d();
  if (sgn(q) == 0 || !std::isfinite(t)) return t;
  const double away = std::nextafter(t, sgn(q) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return t;
  const Rational dt = abs(q - to_rational(t)), da = abs(to_rational(away) - q);
  if (da < dt) return away;
  if (dt < da) return t;
  std::int64_t bits;
  std::memcpy(&bits, &t, sizeof bits);
  return (bits & 1) ? away : t;
}

ExactPolynomial::ExactPolynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

ExactPolynomial ExactPolynomial::constant(const Rational& c) { return ExactPolynomial({c}); }

ExactPolynomial ExactPolynomial::linear(const Rational& root) {
  return ExactPolynomial({Rational(-root), Rational(1)});
}

void ExactPolynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational ExactPolynomial::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational ExactPolynomial::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

double ExactPolynomial::eval(double x) const { return to_double((*this)(to_rational(x))); }

int ExactPolynomial::sign_at(double x) const { return sgn((*this)(to_rational(x))); }

ExactPolynomial ExactPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return ExactPolynomial();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<long>(k);
  return ExactPolynomial(std::move(d));
}

std::size_t ExactPolynomial::max_coefficient_bits() const {
  std::size_t bits = 0;
  for (const auto& c : coeffs_) {
    bits = std::max(bits, mpz_sizeinbase(c.get_num_mpz_t(), 2));
    bits = std::max(bits, mpz_sizeinbase(c.get_den_mpz_t(), 2));
  }
  return bits;
}

ExactPolynomial operator+(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator-(const ExactPolynomial& a, const ExactPolynomial& b) {
  std::vector<Rational> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return ExactPolynomial();
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return ExactPolynomial(std::move(c));
}

ExactPolynomial operator*(const Rational& s, const ExactPolynomial& a) {
  std::vector<Rational> c(a.coeffs_);
  for (auto& v : c) v *= s;
  return ExactPolynomial(std::move(c));
}

std::string ExactPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!first) os << " + ";
    os << "(" << coeffs_[k].get_str() << ")";
    if (k >= 1) os << "*u";
    if (k >= 2) os << "^" << k;
    first = false;
  }
  return os.str();
}

namespace {

// Bisect a sign change of p on [lo, hi] where p is monotone.
double bisect_root(const ExactPolynomial& p, double lo, double hi, int sign_lo) {
  for (int iter = 0; iter < 2200; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) return std::abs(p.eval(lo)) <= std::abs(p.eval(hi)) ? lo : hi;
    const int s = p.sign_at(mid);
    if (s == 0) return mid;
    if (s == sign_lo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw RootFindingError("bisection failed to converge on a polynomial root");
}

}  // namespace

std::vector<double> real_roots(const ExactPolynomial& p, double lo, double hi) {
  if (!(lo <= hi)) throw RootFindingError("real_roots: empty interval");
  if (p.degree() <= 0) return {};
  if (p.degree() == 1) {
    const Rational r = -p.coeff(0) / p.coeff(1);
    const double rd = to_double(r);
    if (rd >= lo && rd <= hi) return {rd};
    return {};
  }
  std::vector<double> breaks{lo};
  for (double c : real_roots(p.derivative(), lo, hi))
    if (c > breaks.back()) breaks.push_back(c);
  if (hi > breaks.back()) breaks.push_back(hi);

  std::vector<double> roots;
  auto push = [&](double r) {
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    const int sa = p.sign_at(a), sb = p.sign_at(b);
    if (sa == 0) {
      push(a);
      continue;
    }
    if (sb == 0) continue;  // picked up as the left end of the next piece
    if (sa != sb) push(bisect_root(p, a, b, sa));
  }
  if (p.sign_at(breaks.back()) == 0) push(breaks.back());
  return roots;
}

}  // namespace ceshock
