#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ein/frames.hpp"
#include "ein/homogeneous.hpp"

using namespace ein;

namespace {

const HClass kRegular[] = {HClass::C1, HClass::C2i, HClass::C2ii, HClass::C3, HClass::C4};

std::pair<double, double> random_params(HClass c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  for (;;) {
    double a = 0, b = 0;
    switch (c) {
      case HClass::C1: a = -1 + 2 * U(rng), b = std::exp(4 * U(rng) - 2); break;
      case HClass::C2i: a = U(rng), b = U(rng); break;
      case HClass::C2ii: a = U(rng), b = 1 + 3 * U(rng); break;
      case HClass::C3: a = 0.25 + 3 * U(rng), b = 1 + 4 * U(rng); break;
      case HClass::C4: a = U(rng), b = 3 * U(rng); break;
      default: break;
    }
    // keep away from the boundary so the inversion is well conditioned
    if (!in_domain(c, a, b)) continue;
    bool inner = true;
    for (double da : {-0.02, 0.02})
      for (double db : {-0.02, 0.02}) inner = inner && in_domain(c, a + da, b * (1 + db));
    if (!inner) continue;
    // and away from the other strata in the (k,h) plane, where the inversion degenerates
    auto [k, h] = curvatures_from_params(c, a, b);
    double sg = k * k - 2 * h;
    if (std::abs(sg - 2) < 1e-2 || std::abs(sg + 2) < 1e-2 || std::abs(h + 1 / (2 * k * k)) < 1e-2) continue;
    return {a, b};
  }
}

}  // namespace

TEST_SUITE("homogeneous") {
  TEST_CASE("classify examples") {
    CHECK(*classify(1, -0.5).cls == HClass::C9);
    CHECK(*classify(1, 0.5).cls == HClass::C1);
    CHECK(*classify(2, 0.5).cls == HClass::C2ii);
    CHECK(classify(0, 0.3).ads_wall);
    CHECK_THROWS_AS(classify(-1, 0), UsageError);
    auto f = classify_signed(-2, 0.5);
    CHECK(f.flipped);
    CHECK(*f.cls == HClass::C2ii);
  }

  TEST_CASE("C2ii curvature formula") {
    double a = 0.8, b = 1.2;
    auto [k, h] = curvatures_from_params(HClass::C2ii, a, b);
    CHECK(k == doctest::Approx(a * std::sqrt(b) / std::pow(std::pow(b * b - 1, 2) * (1 - a * a), 0.25)));
    (void)h;
    CHECK_THROWS_AS(curvatures_from_params(HClass::C2ii, 0.8, 0.5), DomainError);
    // k -> 0 as a -> 0
    CHECK(curvatures_from_params(HClass::C2i, 1e-9, 0.5).first < 1e-8);
  }

  TEST_CASE("region round trip") {
    std::mt19937_64 rng(11);
    for (HClass c : kRegular)
      for (int i = 0; i < 100; ++i) {
        auto [a, b] = random_params(c, rng);
        auto [k, h] = curvatures_from_params(c, a, b);
        auto cl = classify(k, h);
        REQUIRE(cl.cls);
        CHECK(*cl.cls == c);
      }
    for (double b : {1.3, 2.0, 5.0}) CHECK(*classify(std::sqrt(b), -1 / (2 * b)).cls == HClass::C5);
    for (double b : {0.2, 0.7}) CHECK(*classify(std::sqrt(b), -1 / (2 * b)).cls == HClass::C6);
    for (double b : {0.2, 0.7}) {
      auto [k, h] = curvatures_from_params(HClass::C8, 0, b);
      CHECK(*classify(k, h).cls == HClass::C8);
    }
    for (double b : {1.5, 3.0}) {
      auto [k, h] = curvatures_from_params(HClass::C7i, 0, b);
      CHECK(*classify(k, h).cls == HClass::C7i);
      auto [k2, h2] = curvatures_from_params(HClass::C7ii, 0, b);
      CHECK(*classify(k2, h2).cls == HClass::C7ii);
    }
  }

  TEST_CASE("parameter inversion") {
    std::mt19937_64 rng(12);
    for (HClass c : kRegular)
      for (int i = 0; i < 100; ++i) {
        auto [a, b] = random_params(c, rng);
        auto [k, h] = curvatures_from_params(c, a, b);
        auto [a2, b2] = params_from_curvatures(c, k, h);
        CHECK(std::abs(a2 - a) < 1e-8 * (1 + std::abs(a)));
        CHECK(std::abs(b2 - b) < 1e-8 * (1 + std::abs(b)));
      }
    auto [k, h] = curvatures_from_params(HClass::C2i, 0.5, 2.0 / 3);
    auto [a, b] = params_from_curvatures(HClass::C2i, k, h);
    CHECK(std::abs(a - 0.5) < 1e-8);
    CHECK(std::abs(b - 2.0 / 3) < 1e-8);
    // close to the C1 / C2ii-C3 boundary
    double kk = 1.2, hh = (kk * kk - 2 + 1e-6) / 2;
    REQUIRE(*classify(kk, hh).cls == HClass::C1);
    auto [a3, b3] = params_from_curvatures(HClass::C1, kk, hh);
    auto [k3, h3] = curvatures_from_params(HClass::C1, a3, b3);
    CHECK(std::abs(k3 - kk) < 1e-9);
    CHECK(std::abs(h3 - hh) < 1e-9);
  }

  TEST_CASE("jet frame matches constant-curvature formulas on all classes") {
    struct Case {
      HClass c;
      double a, b;
    };
    const Case cases[] = {{HClass::C1, -0.8, 3.0}, {HClass::C1, -0.5, 0.2}, {HClass::C2i, 0.5, 2.0 / 3},
                          {HClass::C2ii, 0.8, 1.2}, {HClass::C3, 1.0, 2.0}, {HClass::C4, 0.9, 1.0},
                          {HClass::C5, 0, 2.0}, {HClass::C6, 0, 0.5}, {HClass::C7i, 0, 1.5},
                          {HClass::C7ii, 0, 1.5}, {HClass::C8, 0, 0.3}, {HClass::C9, 0, 0}};
    for (const Case& cs : cases) {
      CAPTURE(class_name(cs.c));
      auto g = parametrize(cs.c, cs.a, cs.b);
      auto [k, h] = curvatures_from_params(cs.c, cs.a, cs.b);
      for (double t : {0.1, 0.7}) {
        CanonicalFrame f = canonical_frame(g, t);
        CHECK(frame_defect(f.M) < 1e-9);
        CHECK(f.M.determinant() == doctest::Approx(1).epsilon(1e-9));
        CHECK(std::abs(f.k - k) < 1e-8);
        CHECK(std::abs(f.h - h) < 1e-8);
        OrbitCurvatures o = orbit_curvatures(g, t);
        CHECK(std::abs(o.k - f.k) < 1e-8);
        CHECK(std::abs(o.h - f.h) < 1e-8);
        CHECK(frame_defect(o.frame) < 1e-9);
        CHECK(std::abs(strain_density(g, t) - o.upsilon) < 1e-8 * o.upsilon);
      }
    }
  }

  TEST_CASE("orbit property") {
    for (HClass c : {HClass::C1, HClass::C3, HClass::C4}) {
      auto [a, b] = c == HClass::C1 ? std::pair{-0.8, 3.0} : c == HClass::C3 ? std::pair{1.0, 2.0}
                                                                               : std::pair{0.9, 1.0};
      auto g = parametrize(c, a, b);
      auto prods = [&](double t) {
        Jet5 x = g.eval(Jet::var(t));
        Eigen::Matrix4d P;
        Jet5 d[4] = {x, jet_derivative(x), {}, {}};
        d[2] = jet_derivative(d[1]);
        d[3] = jet_derivative(d[2]);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) P(i, j) = jet_product(d[i], d[j], BasisKind::Poincare).value();
        return P;
      };
      Eigen::Matrix4d P0 = prods(0.0);
      for (double t : {0.4, 1.1}) CHECK((prods(t) - P0).cwiseAbs().maxCoeff() < 1e-9 * (1 + P0.cwiseAbs().maxCoeff()));
    }
  }

  TEST_CASE("exponential orbit equivalence") {
    auto [k, h] = curvatures_from_params(HClass::C4, 0.9, 1.0);
    Mat5 K = frenet_matrix(k, h);
    static const Mat5 Tpm = basis_transition(BasisKind::Poincare, BasisKind::Mobius);
    // t -> exp(t K) e0 is a curve whose frame is exp(t K)
    auto g = make_curve(
        [K](const Jet& t) {
          // Taylor coefficients exp(t0 K) K^n e0 / n!
          Mat5 E = expm(Mat5(t.value() * K));
          Jet dt = t - t.value();
          Jet5 r;
          Vec5 kn = Vec5::Unit(0);
          Jet pw(1.0);
          double f = 1;
          for (int n = 0; n < Jet::N; ++n) {
            Vec5 w = Tpm * E * kn;
            for (int i = 0; i < 5; ++i) r[i] += (w[i] / f) * pw;
            kn = K * kn;
            pw = pw * dt;
            f *= (n + 1);
          }
          return r;
        },
        -3, 3);
    auto f = canonical_frame(g, 0.3);
    CHECK(std::abs(f.k - k) < 1e-8);
    CHECK(std::abs(f.h - h) < 1e-8);
  }

  TEST_CASE("closed C2i curve") {
    auto g = parametrize_closed_c2i(0.5, Rational(2, 5));
    CHECK(g.period == doctest::Approx(10 * std::numbers::pi));
    CHECK((g.point(0).x - g.point(g.period).x).norm() < 1e-12);
    CHECK(maslov_index(g, 0, g.period) == 5);
  }

  TEST_CASE("trapping") {
    auto cyc = make_periodic_curve(
        [](const Jet& t) { return Jet5{cos(t), sin(t), Jet(1.0), Jet(0.0), Jet(0.0)}; }, 2 * std::numbers::pi);
    auto r0 = trapped_report(cyc, 0, 2 * std::numbers::pi, 200);
    CHECK(r0.ads);
    auto g = parametrize_closed_c2i(0.5, Rational(2, 5));
    auto r1 = trapped_report(g, 0, g.period, 600);
    CHECK_FALSE(r1.minkowski);
    CHECK_FALSE(r1.desitter);
    auto c5 = parametrize(HClass::C5, 0, 2.0);
    auto r2 = trapped_report(c5, -10, 10, 600);
    CHECK(r2.minkowski);
    CHECK(r2.ads);
  }
}
