#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ein/knots.hpp"
#include "ein/symplectic.hpp"

using namespace ein;

namespace {

constexpr double kPi = std::numbers::pi;

SpatialKnot circle(const Vec3& c, const Vec3& e1, const Vec3& e2, double r, int n) {
  return sample_knot([=](double t) { return Vec3(c + r * (std::cos(t) * e1 + std::sin(t) * e2)); }, 2 * kPi, n);
}

SpatialKnot rotated(const SpatialKnot& k, const Eigen::Matrix3d& R) {
  SpatialKnot out = k;
  for (std::size_t i = 0; i < k.size(); ++i) {
    out.x[i] = R * k.x[i];
    out.d1[i] = R * k.d1[i];
    out.d2[i] = R * k.d2[i];
  }
  return out;
}

// N rotated by w turns plus a smooth wobble, in the normal plane
std::vector<Vec3> twisted_framing(const SpatialKnot& k, int w, double wobble, double phase) {
  auto N = frenet_normal(k), B = frenet_binormal(k);
  std::vector<Vec3> X;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double t = k.param(i);
    double a = w * t + wobble * std::sin(2 * t + phase);
    X.push_back(std::cos(a) * N[i] + std::sin(a) * B[i] + 0.3 * k.d1[i].normalized());
  }
  return X;
}

Soa3 random_soa(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> N(0, 1);
  Soa3 s;
  for (std::size_t i = 0; i < n; ++i) {
    s.x.push_back(N(rng));
    s.y.push_back(N(rng));
    s.z.push_back(N(rng));
  }
  return s;
}

}  // namespace

TEST_SUITE("knots") {
  TEST_CASE("kernel variants agree") {
    std::mt19937_64 rng(61);
    for (std::size_t n : {1, 3, 4, 7, 64, 257}) {
      Soa3 a = random_soa(rng, 5), da = random_soa(rng, 5), b = random_soa(rng, n), db = random_soa(rng, n);
      double s = gauss_sum(a, da, b, db, KernelMode::Scalar);
      double v = gauss_sum(a, da, b, db, KernelMode::Avx2);
      CHECK(std::abs(s - v) < 1e-12 * (1 + std::abs(s)));
      double p[3] = {0.1, -0.2, 0.3};
      for (std::size_t j0 : {std::size_t(0), std::size_t(1)})
        if (j0 < n) CHECK(std::abs(min_dist2(p, b, j0, n, KernelMode::Scalar) - min_dist2(p, b, j0, n, KernelMode::Avx2)) < 1e-15);
    }
    CHECK((resolve_mode(KernelMode::Scalar) == KernelMode::Scalar));
    CHECK((resolve_mode(KernelMode::Auto) == (avx2_available() ? KernelMode::Avx2 : KernelMode::Scalar)));
  }

  TEST_CASE("stereographic transfer") {
    CHECK(stereographic(Vec4(0, 0, 0, -1)).norm() == 0);
    CHECK_THROWS_AS(stereographic(Vec4(0, 0, 0, 1)), DomainError);
    std::mt19937_64 rng(62);
    std::normal_distribution<double> N(0, 1);
    for (int i = 0; i < 20; ++i) {
      Vec4 y(N(rng), N(rng), N(rng), N(rng));
      y.normalize();
      auto tangent = [&] {
        Vec4 v(N(rng), N(rng), N(rng), N(rng));
        return Vec4(v - v.dot(y) * y);
      };
      Vec4 u = tangent(), w = tangent();
      Vec3 U = stereographic_push(y, u), W = stereographic_push(y, w);
      double e = 1e-6;
      Vec3 fd = (stereographic(Vec4((y + e * u).normalized())) - stereographic(Vec4((y - e * u).normalized()))) / (2 * e);
      CHECK((fd - U).norm() < 1e-6 * (1 + U.norm()));
      double before = u.dot(w) / (u.norm() * w.norm()), after = U.dot(W) / (U.norm() * W.norm());
      CHECK(std::abs(before - after) < 1e-8);
    }
  }

  TEST_CASE("Hopf fibers link once in every chart") {
    auto fiber = [](const Vec4& p, int n) {
      std::vector<Vec4> c;
      for (int i = 0; i < n; ++i) {
        double t = 2 * kPi * i / n;
        c.push_back(std::cos(t) * p + std::sin(t) * reeb_field(p));
      }
      return c;
    };
    Vec4 p1 = Vec4(1, 0.2, 0.1, -0.3).normalized(), p2 = Vec4(0.1, 1, -0.4, 0.2).normalized();
    auto f1 = fiber(p1, 1500), f2 = fiber(p2, 1500);
    std::mt19937_64 rng(63);
    std::uniform_real_distribution<double> U(0, 2 * kPi);
    int first = 0;
    for (int i = 0; i < 4; ++i) {
      Mat4 R = i == 0 ? Mat4::Identity() : u2_rotation(U(rng), U(rng), U(rng));
      std::vector<Vec4> a, b;
      for (const Vec4& y : f1) a.push_back(R * y);
      for (const Vec4& y : f2) b.push_back(R * y);
      int lk = linking_number(stereographic(a, 2 * kPi), stereographic(b, 2 * kPi));
      if (i == 0) first = lk;
      CHECK(std::abs(lk) == 1);
      CHECK(lk == first);
    }
  }

  TEST_CASE("linking numbers of torus links") {
    auto K = torus_knot(TorusKind::Standard, 3, 7, 4000), Ks = torus_knot(TorusKind::Starred, 3, 7, 4000);
    auto r = link(K, Ks);
    CHECK(r.lk == 21);
    CHECK(std::abs(r.gauss - 21) < 0.1);
    // independent of the projection direction
    for (unsigned seed = 2; seed < 7; ++seed) {
      LinkOptions o;
      o.seed = seed;
      o.gauss_guard = -1;
      CHECK(linking_number(K, Ks, o) == 21);
    }
    std::mt19937_64 rng(64);
    std::uniform_int_distribution<int> P(1, 4), Q(2, 9);
    int done = 0;
    while (done < 20) {
      int p = P(rng), q = Q(rng);
      if (q <= p || std::gcd(p, q) != 1) continue;
      auto a = torus_knot(TorusKind::Standard, p, q, 1500), b = torus_knot(TorusKind::Starred, p, q, 1500);
      auto ab = link(a, b), ba = link(b, a);
      CHECK(ab.lk == ba.lk);
      CHECK(ab.lk == p * q);
      CHECK(std::abs(ab.gauss - ab.lk) < 0.1);
      ++done;
    }
  }

  TEST_CASE("split and intersecting pairs") {
    auto a = circle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), 1, 400);
    auto b = circle(Vec3(10, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1), 1, 400);
    CHECK(linking_number(a, b) == 0);
    auto c = circle(Vec3(1, 0, 0), Vec3(1, 0, 0), Vec3(0, 0, 1), 1, 400);
    CHECK(std::abs(linking_number(a, c)) == 1);
    auto d = circle(Vec3(1, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), 1, 400);
    CHECK_THROWS_AS(linking_number(a, d), DomainError);
  }

  TEST_CASE("torus knot catalog") {
    CHECK_THROWS_AS(torus_knot(TorusKind::Standard, 2, 4), DomainError);
    CHECK_THROWS_AS(torus_knot(TorusKind::Standard, 3, 2), DomainError);
    auto t = torus_knot(TorusKind::Standard, 2, 3, 2000);
    CHECK(min_self_distance(t, 20) > 0.1);
    CHECK((t.x.front() - sample_knot([](double) { return Vec3(1.5, 0, 0); }, 1, 8).x[0]).norm() < 1e-15);
    auto c = torus_knot(TorusKind::Check, 3, 5, 6000);
    double kmin = 1e9;
    for (std::size_t i = 0; i < c.size(); ++i)
      kmin = std::min(kmin, c.d1[i].cross(c.d2[i]).norm() / std::pow(c.d1[i].norm(), 3));
    CHECK(kmin > 1e-2);
    CHECK(min_self_distance(c, 30) > 1e-3);
  }

  TEST_CASE("the check knot is the stereographic image of a contact torus knot") {
    for (auto [p, q] : {std::pair{3, 5}, std::pair{2, 3}}) {
      auto y = contact_torus_knot(3, p, q, 500);
      auto c = torus_knot(TorusKind::Check, p, q, 500);
      for (std::size_t i = 0; i < y.size(); ++i) CHECK((stereographic(y[i]) - c.x[i]).norm() < 1e-12);
    }
  }

  TEST_CASE("writhe") {
    auto a = circle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), 1, 300);
    CHECK(writhe(a, Vec3(0.1, 0.2, 1)) == 0);
    auto c = torus_knot(TorusKind::Check, 3, 5, 6000);
    CHECK(writhe(c, Vec3(0, 1, 0)) == 12);
    CHECK(self_crossings(c, Vec3(0, 1, 0)).crossings.size() == 12);
    // the writhe is the linking with a constant push-off
    std::vector<Vec3> v(c.size(), Vec3(0, 1, 0));
    CHECK(linking_of_field(c, v) == 12);
  }

  TEST_CASE("self-linking") {
    auto c35 = torus_knot(TorusKind::Check, 3, 5, 6000);
    CHECK(self_linking(c35) == 12);
    CHECK(self_linking(torus_knot(TorusKind::Check, 2, 3, 4000)) == 4);
    Eigen::Matrix3d R = Eigen::AngleAxisd(0.7, Vec3(1, 2, -1).normalized()).toRotationMatrix();
    CHECK(self_linking(rotated(c35, R)) == 12);
    // flipping the third component gives the mirror image
    auto mirror = sample_knot(
        [](double t) -> Vec3 { return Vec3(3 * std::sin(5 * t), 4 * std::sin(3 * t), -3 * std::cos(5 * t)) / (4 * std::cos(3 * t) - 5); },
        2 * kPi, 6000);
    CHECK(self_linking(mirror) == -12);
    auto line = sample_knot([](double t) { return Vec3(std::cos(t), std::sin(2 * t) / 2, 0); }, 2 * kPi, 400);
    CHECK_THROWS_AS(self_linking(line), DomainError);
  }

  TEST_CASE("linking of fields") {
    auto a = circle(Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0, 1, 0), 1, 400);
    std::vector<Vec3> x(a.size(), Vec3(1, 0, 0));
    CHECK_THROWS_AS(linking_of_field(a, x), DomainError);  // tangent at two points
    std::vector<Vec3> radial;
    for (const Vec3& p : a.x) radial.push_back(p);
    CHECK(linking_of_field(a, radial) == 0);
    auto c = torus_knot(TorusKind::Check, 3, 5, 6000);
    auto N = frenet_normal(c);
    double eta = push_off_scale(c, N);
    int l0 = linking_of_field(c, N, eta);
    CHECK(linking_of_field(c, N, eta / 2) == l0);
    CHECK(linking_of_field(c, N, eta / 4) == l0);
    CHECK(rotation_number(c, N) == 0);
  }

  TEST_CASE("CFP identity") {
    int done = 0;
    struct Item {
      TorusKind kind;
      int p, q, n;
    };
    for (Item it : {Item{TorusKind::Check, 3, 5, 6000}, Item{TorusKind::Check, 2, 3, 4000},
                    Item{TorusKind::Standard, 2, 3, 3000}, Item{TorusKind::Standard, 2, 5, 4000}}) {
      auto k = torus_knot(it.kind, it.p, it.q, it.n);
      int sl = self_linking(k);
      for (int w : {-2, -1, 1, 3, 0}) {
        auto X = twisted_framing(k, w, 0.5, done);
        int lk = linking_of_field(k, X), th = rotation_number(k, X);
        CHECK(th == w);
        CHECK(lk == sl + th);
        ++done;
      }
    }
    CHECK(done == 20);
  }

  TEST_CASE("rotation number of the contact push-off field") {
    int p = 3, q = 7;
    for (double A : {2.5, 3.0}) {
      auto y = contact_torus_knot(A, p, q, 8000);
      std::vector<Vec3> x, W;
      for (const Vec4& pt : y) {
        x.push_back(stereographic(pt));
        W.push_back(stereographic_push(pt, contact_E1(pt)));
      }
      auto k = knot_from_samples(x, 2 * kPi);
      CHECK(rotation_number(k, W) == -q);
      CHECK(self_linking(k) == p * q - p);
    }
  }

  TEST_CASE("Bennequin numbers of contact torus knots") {
    for (double A : {2.5, 3.0, 4.0})
      for (auto [p, q] : {std::pair{3, 7}, std::pair{1, 2}, std::pair{2, 3}}) {
        auto y = contact_torus_knot(A, p, q, 6000);
        Bennequin b = bennequin(y);
        CHECK(b.e1 == p * q - p - q);
        CHECK(b.e2 == b.e1);
      }
  }

  TEST_CASE("E1 and E2 push-offs agree on sampled transverse torus knots") {
    std::mt19937_64 rng(65);
    std::uniform_real_distribution<double> U(1.5, 5);
    for (int i = 0; i < 10; ++i) {
      int p = 1 + i % 3, q = p + 1 + i % 2;
      if (std::gcd(p, q) != 1) q += 1;
      auto y = contact_torus_knot(U(rng), p, q, 3000);
      Bennequin b = bennequin(y);
      CHECK(b.e1 == b.e2);
    }
  }

  TEST_CASE("knot csv round trip") {
    auto k = torus_knot(TorusKind::Standard, 2, 3, 64);
    write_knot_csv("knot_test.csv", k);
    auto r = read_knot_csv("knot_test.csv");
    std::remove("knot_test.csv");
    REQUIRE(r.size() == k.size());
    CHECK(std::abs(r.period - k.period) < 1e-12);
    CHECK((r.x[5] - k.x[5]).norm() < 1e-14);
  }

  TEST_CASE("directrix invariants, b = 2/5") {
    auto r = directrix_invariants(0.5, 2, 5);
    CHECK(r.maslov == 5);
    CHECK(r.spin == 0.5);
    CHECK(r.simple);
    CHECK(r.p == 3);
    CHECK(r.q == 7);
    CHECK(r.lk == 21);
    CHECK(r.b_gamma == 11);
    CHECK(r.b_star == 11);
    CHECK(r.agrees());
  }

  TEST_CASE("directrix invariants, b = 1/3") {
    auto r = directrix_invariants(0.7, 1, 3);
    CHECK(r.lk == 2);
    CHECK(r.b_gamma == -1);
    CHECK(r.b_star == -1);
    CHECK(r.p == 1);
    CHECK(r.q == 2);
    CHECK(r.maslov == 3);
    CHECK_THROWS_AS(directrix_invariants(1.2, 1, 3), DomainError);
    CHECK_THROWS_AS(directrix_invariants(0.5, 2, 4), DomainError);
  }

  TEST_CASE("directrix invariants do not depend on a") {
    for (double a : {0.3, 0.8}) {
      auto r = directrix_invariants(a, 2, 5, 6000);
      CHECK(r.lk == 21);
      CHECK(r.b_gamma == 11);
      CHECK(r.b_star == 11);
      CHECK(r.spin == 0.5);
    }
  }
}
