#include <cmath>
#include <random>

#include "doctest.h"
#include "ein/geometry.hpp"

using namespace ein;

TEST_SUITE("geometry") {
  TEST_CASE("mobius basis products") {
    auto e = [](int i) { return Vec5::Unit(i); };
    const auto M = BasisKind::Mobius;
    CHECK(product(e(0), e(4), M) == -1);
    CHECK(product(e(1), e(1), M) == -1);
    CHECK(product(e(2), e(2), M) == 1);
    CHECK(product(e(0), e(0), M) == 0);
  }

  TEST_CASE("gram signatures") {
    for (auto k : {BasisKind::Mobius, BasisKind::Poincare, BasisKind::Lie}) {
      Eigen::SelfAdjointEigenSolver<Mat5> es(gram(k));
      int neg = 0, pos = 0;
      for (int i = 0; i < 5; ++i) (es.eigenvalues()[i] < 0 ? neg : pos)++;
      CHECK(neg == 2);
      CHECK(pos == 3);
    }
  }

  TEST_CASE("product symmetry and kind mismatch") {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    Vec5 u, v;
    for (int i = 0; i < 5; ++i) u[i] = n(rng), v[i] = n(rng);
    for (auto k : {BasisKind::Mobius, BasisKind::Poincare, BasisKind::Lie})
      CHECK(product(u, v, k) == doctest::Approx(product(v, u, k)));
    CHECK_THROWS_AS(product(BasisVec{u, BasisKind::Lie}, BasisVec{v, BasisKind::Mobius}), UsageError);
  }

  TEST_CASE("transitions") {
    Mat5 T = basis_transition(BasisKind::Mobius, BasisKind::Poincare);
    const double r = 1 / std::sqrt(2.0);
    CHECK(T(0, 0) == doctest::Approx(r));
    CHECK(T(4, 0) == doctest::Approx(r));
    CHECK(T(4, 4) == doctest::Approx(r));
    CHECK(T(0, 4) == doctest::Approx(-r));
    CHECK((basis_transition(BasisKind::Mobius, BasisKind::Mobius) - Mat5::Identity()).norm() == 0);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> n;
    const BasisKind ks[3] = {BasisKind::Mobius, BasisKind::Poincare, BasisKind::Lie};
    for (auto a : ks)
      for (auto b : ks) {
        Mat5 t = basis_transition(a, b);
        // Gram conjugation
        CHECK((t.transpose() * gram(a) * t - gram(b)).cwiseAbs().maxCoeff() < 1e-14);
        Vec5 u, v;
        for (int i = 0; i < 5; ++i) u[i] = n(rng), v[i] = n(rng);
        CHECK(std::abs(product(t * u, t * v, a) - product(u, v, b)) < 1e-12);
        CHECK((basis_transition(b, a) * t - Mat5::Identity()).cwiseAbs().maxCoeff() < 1e-14);
      }
  }

  TEST_CASE("ray normalization") {
    Vec5 x;
    x << 2, 0, 2, 0, 0;
    Vec5 want;
    want << 1, 0, 1, 0, 0;
    CHECK((ray_normalize(x).x - want).norm() < 1e-15);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n;
    for (int i = 0; i < 50; ++i) {
      Eigen::Vector2d a(n(rng), n(rng));
      Vec3 b(n(rng), n(rng), n(rng));
      Vec5 y;
      y << a.normalized() * 3.7, b.normalized() * 3.7;
      EinsteinPoint p = ray_normalize(y);
      CHECK(std::abs(p.time().norm() - 1) < 1e-12);
      CHECK(std::abs(p.space().norm() - 1) < 1e-12);
      CHECK((ray_normalize(p.x).x - p.x).norm() < 1e-15);
      CHECK((ray_normalize(0.25 * y).x - p.x).norm() < 1e-14);
    }
    Vec5 bad = Vec5::Unit(0);
    CHECK_THROWS_AS(ray_normalize(bad), DomainError);
    Vec5 notime;
    notime << 0, 0, 0, 0, 0;
    CHECK_THROWS_AS(ray_normalize(notime), DegenerateError);
  }

  TEST_CASE("chambers and embeddings") {
    EinsteinPoint o = embed_minkowski(0, 0, 0);
    ChamberReport r = chamber(o);
    CHECK(r.minkowski == Side::Positive);
    Vec5 want;
    want << 1, 0, 1, 0, 0;
    CHECK((embed_ads(1, 0, 0, 0).x - want).norm() < 1e-15);
    CHECK((embed_desitter(0, 1, 0, 0).x - want).norm() < 1e-15);
    CHECK_THROWS_AS(embed_ads(1, 1, 0, 0), DomainError);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-3, 3);
    for (int i = 0; i < 1000; ++i) {
      // adS quadric: pick y, then scale x
      double y1 = U(rng), y2 = U(rng), th = U(rng);
      double rr = std::sqrt(1 + y1 * y1 + y2 * y2);
      CHECK(chamber(embed_ads(rr * std::cos(th), rr * std::sin(th), y1, y2)).ads == Side::Positive);
      CHECK(chamber(embed_minkowski(U(rng), U(rng), U(rng))).minkowski == Side::Positive);
      double w2 = U(rng), w3 = U(rng), w4 = U(rng);
      Vec3 w(w2, w3, w4);
      double w1 = U(rng);
      w *= std::sqrt(1 + w1 * w1) / w.norm();
      CHECK(chamber(embed_desitter(w1, w[0], w[1], w[2])).desitter == DsSide::Positive);
    }
    Vec5 wall;
    wall << 1, 0, 0, 1, 0;
    CHECK(chamber({wall}).ads == Side::Wall);
    Vec5 dsw;
    dsw << 0, -1, 1, 0, 0;
    CHECK(chamber({dsw}).desitter == DsSide::WallMinus);
  }

  TEST_CASE("toroidal projection") {
    Vec5 x;
    x << 1, 0, 1, 0, 0;
    Vec3 t = toroidal_projection({x});
    CHECK((t - Vec3(1, 2, 0)).norm() < 1e-15);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-3.2, 3.2);
    for (int i = 0; i < 200; ++i) {
      double phi = U(rng), a = U(rng);
      Vec5 c;
      c << std::cos(phi), std::sin(phi), 1, 0, 0;
      CHECK(toroid_radius(toroidal_projection({c})) < 1);
      Vec5 w;  // adS wall: x2 = 0
      w << std::cos(phi), std::sin(phi), 0, std::cos(a), std::sin(a);
      CHECK(toroid_radius(toroidal_projection({w})) == doctest::Approx(1).epsilon(1e-12));
    }
    // 2:1 covering: flipping x2 and rotating eta gives the other preimage
    for (int i = 0; i < 100; ++i) {
      double phi = U(rng), a = U(rng), b = U(rng) / 2;
      Vec5 p;
      p << std::cos(phi), std::sin(phi), std::cos(b) * std::cos(a), std::cos(b) * std::sin(a), std::sin(b);
      Vec3 t1 = toroidal_projection({p});
      double psi = std::atan2(p[3] + 2, p[2]);
      double psi2 = std::atan2(p[3] + 2, -p[2]);
      double phi2 = phi + psi - psi2;
      Vec5 q;
      q << std::cos(phi2), std::sin(phi2), -p[2], p[3], p[4];
      Vec3 t2 = toroidal_projection({q});
      CHECK((t1 - t2).norm() < 1e-12);
    }
  }

  TEST_CASE("mobius frames") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
      Mat5 A = random_m23(rng, 0.5);
      CHECK(m23_defect(A) < 1e-14);
      Mat5 F = expm(A);
      CHECK(frame_defect(F) < 1e-12);
      CHECK(F.determinant() == doctest::Approx(1).epsilon(1e-10));
      CHECK((mobius_dual(F) * F - Mat5::Identity()).cwiseAbs().maxCoeff() < 1e-12);
      Mat5 G = F;
      std::normal_distribution<double> n(0, 1e-6);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) G(r, c) += n(rng);
      reorthonormalize_mobius(G);
      CHECK(frame_defect(G) < 1e-13);
      CHECK((G - F).cwiseAbs().maxCoeff() < 1e-4);
    }
  }
}
