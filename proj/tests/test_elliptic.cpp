#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ein/elliptic.hpp"
#include "ein/types.hpp"

using namespace ein;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double quad(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

double F_quad(double phi, double m) {
  return quad([m](double t) { return 1 / std::sqrt(1 - m * std::sin(t) * std::sin(t)); }, 0, phi);
}

double Pi_integrand(double t, double x, double m) {
  double s2 = std::sin(t) * std::sin(t);
  return 1 / (std::sqrt(1 - m * s2) * (1 - x * s2));
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("complete integral of the first kind") {
    CHECK(ellip_K(0) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(std::abs(ellip_K(0.5) - F_quad(kPi / 2, 0.5)) < 1e-12);
    double prev = 0;
    for (int i = 0; i < 100; ++i) {
      double m = i / 100.0;
      double K = ellip_K(m);
      CHECK(K > prev);
      prev = K;
      CHECK(std::abs(K - F_quad(kPi / 2, m)) < 1e-13 * K);
    }
    CHECK_THROWS_AS(ellip_K(1), DomainError);
    CHECK_THROWS_AS(ellip_K(-0.1), DomainError);
  }

  TEST_CASE("jacobi trivial values and identities") {
    CHECK(jacobi_nd(0, 0.3) == 1);
    CHECK(jacobi_sd(0, 0.3) == 0);
    CHECK(jacobi_am(0.77, 0) == 0.77);
    CHECK_THROWS_AS(jacobi_sn(0.1, 1.0), DomainError);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 500; ++i) {
      double m = 0.999 * U(rng), u = 40 * (U(rng) - 0.5);
      Jacobi j = jacobi(u, m);
      CHECK(std::abs(j.dn * j.dn + m * j.sn * j.sn - 1) < 1e-12);
      CHECK(std::abs(j.sn * j.sn + j.cn * j.cn - 1) < 1e-12);
    }
  }

  TEST_CASE("periodicity") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 100; ++i) {
      double m = 0.99 * U(rng), u = 10 * (U(rng) - 0.5), K = ellip_K(m);
      CHECK(std::abs(jacobi_sn(u + 4 * K, m) - jacobi_sn(u, m)) < 1e-12);
      CHECK(std::abs(jacobi_sd(u + 4 * K, m) - jacobi_sd(u, m)) < 1e-11 * (1 + std::abs(jacobi_sd(u, m))));
      CHECK(std::abs(jacobi_dn(u + 2 * K, m) - jacobi_dn(u, m)) < 1e-12);
      CHECK(std::abs(jacobi_nd(u + 2 * K, m) - jacobi_nd(u, m)) < 1e-11 * jacobi_nd(u, m));
      CHECK(std::abs(jacobi_sn(u + 2 * K, m) + jacobi_sn(u, m)) < 1e-12);
    }
  }

  TEST_CASE("amplitude inverts the incomplete integral") {
    for (double m : {0.0, 0.1, 0.5, 0.9, 0.99}) {
      double K = ellip_K(m);
      for (int i = 0; i <= 40; ++i) {
        double u = 4 * K * i / 40;
        double phi = jacobi_am(u, m);
        CHECK(std::abs(F_quad(phi, m) - u) < 1e-11 * (1 + u));
      }
    }
  }

  TEST_CASE("derivatives") {
    std::mt19937_64 rng(33);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 50; ++i) {
      double m = 0.95 * U(rng), u = 8 * (U(rng) - 0.5), e = 1e-4;
      Jacobi j = jacobi(u, m);
      // d/du sd = cn / dn^2 = cd nd
      double fd = (jacobi_sd(u + e, m) - jacobi_sd(u - e, m)) / (2 * e);
      CHECK(std::abs(fd - j.cn / (j.dn * j.dn)) < 1e-8);
      double fdn = (jacobi_nd(u + e, m) - jacobi_nd(u - e, m)) / (2 * e);
      CHECK(std::abs(fdn - m * j.sn * j.cn / (j.dn * j.dn)) < 1e-8);
    }
  }

  TEST_CASE("taylor jets") {
    std::mt19937_64 rng(34);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 30; ++i) {
      double m = 0.9 * U(rng), u = 6 * (U(rng) - 0.5), d = 0.05;
      JacobiJet J = jacobi(Jet::var(u), m);
      auto sum = [d](const Jet& a) {
        double s = 0, p = 1;
        for (int k = 0; k < Jet::N; ++k, p *= d) s += a.c[k] * p;
        return s;
      };
      Jacobi j = jacobi(u + d, m);
      CHECK(std::abs(sum(J.sn) - j.sn) < 1e-11);
      CHECK(std::abs(sum(J.cn) - j.cn) < 1e-11);
      CHECK(std::abs(sum(J.dn) - j.dn) < 1e-11);
      CHECK(std::abs(sum(jacobi_sd(Jet::var(u), m)) - j.sn / j.dn) < 1e-10);
      // chain rule through a non-trivial inner jet
      Jet w = 2.0 * Jet::var(u / 2);
      CHECK(std::abs(jacobi_nd(w, m).c[1] - 2 * m * jacobi(u, m).sn * jacobi(u, m).cn /
                                                  std::pow(jacobi(u, m).dn, 2)) < 1e-12);
    }
  }

  TEST_CASE("third kind: closed forms") {
    for (double phi : {0.3, 1.0, 2.5, -4.0}) CHECK(std::abs(ellip_Pi(0, phi, 0) - phi) < 1e-15);
    double x = 0.5, phi = 1.0;
    double want = std::atan(std::sqrt(1 - x) * std::tan(phi)) / std::sqrt(1 - x);
    CHECK(std::abs(ellip_Pi(x, phi, 0) - want) < 1e-14);
    // x = 0 reduces to the first kind
    CHECK(std::abs(ellip_Pi_complete(0, 0.4) - ellip_K(0.4)) < 1e-14);
  }

  TEST_CASE("third kind against quadrature") {
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 200; ++i) {
      double m = 0.99 * U(rng), x = 4 * U(rng) - 3.01, phi = 14 * (U(rng) - 0.5);
      double q = quad([&](double t) { return Pi_integrand(t, x, m); }, 0, phi);
      CHECK(std::abs(ellip_Pi(x, phi, m) - q) < 1e-10 * (1 + std::abs(q)));
    }
  }

  TEST_CASE("third kind additivity") {
    std::mt19937_64 rng(36);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 50; ++i) {
      double m = 0.99 * U(rng), x = 1.9 * U(rng) - 0.95, phi = 6 * (U(rng) - 0.5);
      double inc = ellip_Pi(x, phi + 2 * kPi, m) - ellip_Pi(x, phi, m);
      double q = quad([&](double t) { return Pi_integrand(t, x, m); }, 0, 2 * kPi);
      CHECK(std::abs(inc - q) < 1e-10 * (1 + std::abs(q)));
      CHECK(std::abs(inc - 4 * ellip_Pi_complete(x, m)) < 1e-12 * (1 + std::abs(q)));
    }
  }

  TEST_CASE("third kind principal value") {
    double m = 0.3, x = 2.0, phi = 1.2;
    CHECK_THROWS_AS(ellip_Pi(x, phi, m), DomainError);
    CHECK_THROWS_AS(ellip_Pi_complete(x, m), DomainError);
    double tp = std::asin(1 / std::sqrt(x));
    // subtract the simple pole R / (t - tp) and add back its principal value
    double R = 1 / (std::sqrt(1 - m * std::sin(tp) * std::sin(tp)) * (-x * std::sin(2 * tp)));
    // 1 - x sin^2 t = x sin(tp - t) sin(tp + t) avoids cancellation near the pole
    auto smooth = [&](double t) {
      double s = std::sin(t);
      return 1 / (std::sqrt(1 - m * s * s) * x * std::sin(tp - t) * std::sin(tp + t)) - R / (t - tp);
    };
    double pv = quad(smooth, 0, tp) + quad(smooth, tp, phi) + R * std::log((phi - tp) / tp);
    CHECK(std::abs(ellip_Pi(x, phi, m, true) - pv) < 1e-9 * (1 + std::abs(pv)));
    CHECK_THROWS_AS(ellip_Pi(1.0, 2.0, m, true), DomainError);
  }
}
