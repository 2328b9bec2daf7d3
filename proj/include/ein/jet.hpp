#pragma once

// Truncated Taylor series in one variable. c[k] holds f^(k)(t0)/k!.

#include <array>
#include <cmath>

namespace ein {

constexpr int kJetOrder = 8;

struct Jet {
  static constexpr int N = kJetOrder + 1;
  std::array<double, N> c{};

  Jet() = default;
  Jet(double a) { c[0] = a; }  // NOLINT: implicit constant promotion

  static Jet var(double t0) {
    Jet r(t0);
    r.c[1] = 1.0;
    return r;
  }
  double value() const { return c[0]; }
  // k-th derivative at the expansion point
  double deriv(int k) const {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return c[k] * f;
  }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < N; ++i) c[i] += o.c[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < N; ++i) c[i] -= o.c[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }
  Jet operator-() const {
    Jet r;
    for (int i = 0; i < N; ++i) r.c[i] = -c[i];
    return r;
  }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator+(Jet a, double b) { a.c[0] += b; return a; }
inline Jet operator+(double b, Jet a) { a.c[0] += b; return a; }
inline Jet operator-(Jet a, double b) { a.c[0] -= b; return a; }
inline Jet operator-(double b, const Jet& a) { Jet r = -a; r.c[0] += b; return r; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }
inline Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  for (int k = 0; k < Jet::N; ++k) {
    double s = 0;
    for (int j = 0; j <= k; ++j) s += a.c[j] * b.c[k - j];
    r.c[k] = s;
  }
  return r;
}

inline Jet inv(const Jet& a) {
  Jet r;
  r.c[0] = 1.0 / a.c[0];
  for (int k = 1; k < Jet::N; ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += a.c[j] * r.c[k - j];
    r.c[k] = -s * r.c[0];
  }
  return r;
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * inv(b); }
inline Jet operator/(double a, const Jet& b) { return a * inv(b); }

inline Jet sqrt(const Jet& a) {
  Jet r;
  r.c[0] = std::sqrt(a.c[0]);
  for (int k = 1; k < Jet::N; ++k) {
    double s = a.c[k];
    for (int j = 1; j < k; ++j) s -= r.c[j] * r.c[k - j];
    r.c[k] = s / (2 * r.c[0]);
  }
  return r;
}

// a^p for a(t0) > 0
inline Jet pow(const Jet& a, double p) {
  Jet r;
  r.c[0] = std::pow(a.c[0], p);
  for (int k = 1; k < Jet::N; ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += (p * j - (k - j)) * a.c[j] * r.c[k - j];
    r.c[k] = s / (k * a.c[0]);
  }
  return r;
}

inline Jet exp(const Jet& a) {
  Jet r;
  r.c[0] = std::exp(a.c[0]);
  for (int k = 1; k < Jet::N; ++k) {
    double s = 0;
    for (int j = 1; j <= k; ++j) s += j * a.c[j] * r.c[k - j];
    r.c[k] = s / k;
  }
  return r;
}

inline void sincos(const Jet& a, Jet& s, Jet& co) {
  s = Jet();
  co = Jet();
  s.c[0] = std::sin(a.c[0]);
  co.c[0] = std::cos(a.c[0]);
  for (int k = 1; k < Jet::N; ++k) {
    double ss = 0, cc = 0;
    for (int j = 1; j <= k; ++j) {
      ss += j * a.c[j] * co.c[k - j];
      cc -= j * a.c[j] * s.c[k - j];
    }
    s.c[k] = ss / k;
    co.c[k] = cc / k;
  }
}
inline Jet sin(const Jet& a) { Jet s, c; sincos(a, s, c); return s; }
inline Jet cos(const Jet& a) { Jet s, c; sincos(a, s, c); return c; }
inline Jet sinh(const Jet& a) { Jet e = exp(a); return 0.5 * (e - inv(e)); }
inline Jet cosh(const Jet& a) { Jet e = exp(a); return 0.5 * (e + inv(e)); }

inline Jet derivative(const Jet& a) {
  Jet r;
  for (int k = 0; k + 1 < Jet::N; ++k) r.c[k] = (k + 1) * a.c[k + 1];
  return r;
}
// antiderivative vanishing at the expansion point
inline Jet integral(const Jet& a) {
  Jet r;
  for (int k = 1; k < Jet::N; ++k) r.c[k] = a.c[k - 1] / k;
  return r;
}

// a(b(s)) where b(s0) = expansion point of a; uses b - b(s0)
inline Jet compose(const Jet& a, const Jet& b) {
  Jet d = b;
  d.c[0] = 0;
  Jet r(a.c[Jet::N - 1]);
  for (int k = Jet::N - 2; k >= 0; --k) r = r * d + a.c[k];
  return r;
}

using Jet5 = std::array<Jet, 5>;

}  // namespace ein
