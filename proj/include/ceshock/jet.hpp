#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace ceshock {

/// Truncated Taylor series around a fixed point.
///
/// `c[k]` holds the k-th normalized derivative u^(k)/k!. Arithmetic keeps the
/// shorter of the two operand lengths, so derivative() (which drops one term)
/// propagates the loss of order automatically.
template <class T>
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

  static Jet constant(T value, std::size_t length) {
    std::vector<T> c(length, T(0));
    if (length > 0) c[0] = value;
    return Jet(std::move(c));
  }

  /// The identity series x0 + t.
  static Jet variable(T x0, std::size_t length) {
    auto j = constant(x0, length);
    if (length > 1) j.c_[1] = T(1);
    return j;
  }

  std::size_t size() const { return c_.size(); }
  const T& operator[](std::size_t k) const { return c_[k]; }
  T& operator[](std::size_t k) { return c_[k]; }
  T value() const { return c_.empty() ? T(0) : c_[0]; }

  /// k-th derivative at the expansion point.
  T derivative_value(std::size_t k) const {
    T fact(1);
    for (std::size_t i = 2; i <= k; ++i) fact *= T(i);
    return c_[k] * fact;
  }

  Jet derivative() const {
    if (c_.size() <= 1) return Jet();
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 0; k + 1 < c_.size(); ++k) d[k] = T(k + 1) * c_[k + 1];
    return Jet(std::move(d));
  }

  Jet truncated(std::size_t length) const {
    std::vector<T> c(c_.begin(), c_.begin() + std::min(length, c_.size()));
    return Jet(std::move(c));
  }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  friend Jet operator+(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<T> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = a.c_[k] + b.c_[k];
    return Jet(std::move(c));
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<T> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = a.c_[k] - b.c_[k];
    return Jet(std::move(c));
  }
  friend Jet operator-(const Jet& a) {
    std::vector<T> c(a.c_);
    for (auto& v : c) v = -v;
    return Jet(std::move(c));
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<T> c(n, T(0));
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i <= k; ++i) c[k] += a.c_[i] * b.c_[k - i];
    return Jet(std::move(c));
  }
  friend Jet operator+(const Jet& a, T s) {
    Jet r(a);
    if (!r.c_.empty()) r.c_[0] += s;
    return r;
  }
  friend Jet operator+(T s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, T s) { return a + (-s); }
  friend Jet operator-(T s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, T s) {
    Jet r(a);
    for (auto& v : r.c_) v *= s;
    return r;
  }
  friend Jet operator*(T s, const Jet& a) { return a * s; }

 private:
  std::vector<T> c_;
};

/// exp of a series via E' = u' E.
template <class T>
Jet<T> exp(const Jet<T>& u) {
  using std::exp;
  const std::size_t n = u.size();
  std::vector<T> e(n, T(0));
  if (n == 0) return Jet<T>();
  e[0] = exp(u[0]);
  for (std::size_t k = 1; k < n; ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += T(j) * u[j] * e[k - j];
    e[k] = acc / T(k);
  }
  return Jet<T>(std::move(e));
}

/// Horner evaluation of a polynomial (lowest degree first) on a series.
template <class T, class Coeff>
Jet<T> horner(const std::vector<Coeff>& coeffs, const Jet<T>& u) {
  auto acc = Jet<T>::constant(T(0), u.size());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + T(*it);
  return acc;
}

}  // namespace ceshock
