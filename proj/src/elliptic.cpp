#include "ein/elliptic.hpp"

#include <boost/math/special_functions/ellint_rf.hpp>
#include <boost/math/special_functions/ellint_rj.hpp>

#include <cmath>
#include <numbers>

#include "ein/types.hpp"

namespace ein {

namespace {

constexpr double kPi = std::numbers::pi;

void check_m(double m) {
  if (!(m >= 0 && m < 1)) throw DomainError("elliptic parameter m must lie in [0,1)");
}

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return 0.5 * (a + b);
}

// am on the reduced interval |u| <= K
double am_reduced(double u, double m) {
  if (m == 0) return u;
  constexpr int kMax = 32;
  double a[kMax], c[kMax];
  a[0] = 1;
  double b = std::sqrt(1 - m);
  c[0] = std::sqrt(m);
  int n = 0;
  while (std::abs(c[n]) > 1e-17 && n + 1 < kMax) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  return phi;
}

}  // namespace

double ellip_K(double m) {
  check_m(m);
  return kPi / (2 * agm(1, std::sqrt(1 - m)));
}

double jacobi_am(double u, double m) {
  check_m(m);
  // am(u + 2K) = am(u) + pi
  double K = ellip_K(m);
  double n = std::round(u / (2 * K));
  return am_reduced(u - 2 * K * n, m) + n * kPi;
}

Jacobi jacobi(double u, double m) {
  double phi = jacobi_am(u, m);
  double s = std::sin(phi), c = std::cos(phi);
  return {s, c, std::sqrt(1 - m * s * s)};
}

double jacobi_sn(double u, double m) { return jacobi(u, m).sn; }
double jacobi_cn(double u, double m) { return jacobi(u, m).cn; }
double jacobi_dn(double u, double m) { return jacobi(u, m).dn; }
double jacobi_sd(double u, double m) {
  Jacobi j = jacobi(u, m);
  return j.sn / j.dn;
}
double jacobi_nd(double u, double m) { return 1 / jacobi(u, m).dn; }

JacobiJet jacobi(const Jet& u, double m) {
  Jacobi j0 = jacobi(u.value(), m);
  // sn' = cn dn, cn' = -sn dn, dn' = -m sn cn; each pass fixes one more order
  JacobiJet t{Jet(j0.sn), Jet(j0.cn), Jet(j0.dn)};
  for (int k = 0; k < Jet::N; ++k) {
    Jet s = j0.sn + integral(t.cn * t.dn);
    Jet c = j0.cn - integral(t.sn * t.dn);
    Jet d = j0.dn - m * integral(t.sn * t.cn);
    t = {s, c, d};
  }
  return {compose(t.sn, u), compose(t.cn, u), compose(t.dn, u)};
}

Jet jacobi_sd(const Jet& u, double m) {
  JacobiJet j = jacobi(u, m);
  return j.sn / j.dn;
}

Jet jacobi_nd(const Jet& u, double m) { return inv(jacobi(u, m).dn); }

double ellip_Pi_complete(double x, double m, bool principal_value) {
  check_m(m);
  if (x == 1) throw DomainError("ellip_Pi: divergent at x = 1");
  if (x > 1 && !principal_value) throw DomainError("ellip_Pi: pole on the integration path");
  using boost::math::ellint_rf;
  using boost::math::ellint_rj;
  // R_J with negative p is the Cauchy principal value
  return ellint_rf(0.0, 1 - m, 1.0) + x / 3 * ellint_rj(0.0, 1 - m, 1.0, 1 - x);
}

double ellip_Pi(double x, double phi, double m, bool principal_value) {
  check_m(m);
  // phi = j pi + r with |r| <= pi/2; each half period contributes the complete value twice
  double j = std::round(phi / kPi);
  double r = phi - j * kPi;
  double s = std::sin(r), c = std::cos(r);
  double s2 = s * s;
  bool pole = x * s2 >= 1 || (j != 0 && x >= 1);
  if (pole && !principal_value) throw DomainError("ellip_Pi: pole on the integration path");
  if (x * s2 == 1) throw DomainError("ellip_Pi: endpoint on the pole");
  double part = 0;
  if (s != 0) {
    using boost::math::ellint_rf;
    using boost::math::ellint_rj;
    double q = 1 - m * s2;
    part = s * ellint_rf(c * c, q, 1.0) + x / 3 * s * s2 * ellint_rj(c * c, q, 1.0, 1 - x * s2);
  }
  return (j != 0 ? 2 * j * ellip_Pi_complete(x, m, principal_value) : 0.0) + part;
}

}  // namespace ein
