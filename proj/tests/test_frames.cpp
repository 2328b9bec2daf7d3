#include <algorithm>
#include <cstdio>
#include <fstream>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ein/frames.hpp"
#include "ein/homogeneous.hpp"

using namespace ein;

namespace {

const Mat5& Tpm() {
  static const Mat5 T = basis_transition(BasisKind::Poincare, BasisKind::Mobius);
  return T;
}
const Mat5& Tmp() {
  static const Mat5 T = basis_transition(BasisKind::Mobius, BasisKind::Poincare);
  return T;
}

double max_abs(const Mat5& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_SUITE("frames") {
  TEST_CASE("frenet matrix lies in m(2,3)") {
    for (double k : {0.0, 0.4, 2.0})
      for (double h : {-1.0, 0.3}) CHECK(m23_defect(frenet_matrix(k, h)) < 1e-15);
  }

  TEST_CASE("constant curvature integration matches the exponential") {
    double k = 0.8, h = -0.3;
    Mat5 K = frenet_matrix(k, h);
    std::mt19937_64 rng(21);
    Mat5 M0 = random_conformal(rng, 0.3);
    auto p = integrate_frenet([&](double) { return k; }, [&](double) { return h; }, M0, 0, 4, 1e-12, 41);
    REQUIRE(p.u.size() == 41);
    for (size_t i = 0; i < p.u.size(); ++i) {
      Mat5 want = M0 * expm(Mat5(p.u[i] * K));
      CHECK(max_abs(p.M[i] - want) < 1e-9 * (1 + max_abs(want)));
    }
    CHECK(p.max_defect < 1e-12);
    // the curvature operator is constant along the orbit
    Mat5 Q0 = curvature_operator(p.M.front(), k, h);
    for (const Mat5& M : p.M) CHECK(max_abs(curvature_operator(M, k, h) - Q0) < 1e-8 * (1 + max_abs(Q0)));
  }

  TEST_CASE("zero curvature frame") {
    auto p = integrate_frenet([](double) { return 0.0; }, [](double) { return 0.0; }, Mat5::Identity(), 0, 2, 1e-12,
                              3);
    Mat5 want = expm(Mat5(2.0 * frenet_matrix(0, 0)));
    CHECK(max_abs(p.M.back() - want) < 1e-10);
  }

  TEST_CASE("curvature profile round trip") {
    auto kf = [](double u) { return 0.7 + 0.2 * std::sin(u); };
    auto hf = [](double u) { return -0.4 + 0.3 * std::cos(0.5 * u); };
    const int n = 1601;
    auto p = integrate_frenet(kf, hf, Mat5::Identity(), 0, 8, 1e-13, n);
    std::vector<double> t;
    std::vector<Vec5> x;
    for (int i = 0; i < n; ++i) {
      t.push_back(p.u[i]);
      x.push_back(frame_point(p.M[i]).x);
    }
    auto g = sampled_curve(t, x, false);
    for (double u : {1.0, 3.3, 6.1}) {
      CHECK(strain_density(g, u) == doctest::Approx(1).epsilon(1e-6));
      CanonicalFrame f = canonical_frame(g, u);
      // sampled mode: h needs fifth derivatives of the samples
      CHECK(std::abs(f.k - kf(u)) < 1e-5);
      CHECK(std::abs(f.h - hf(u)) < 5e-4);
      // the recovered frame is the integrated one
      size_t i = size_t(std::lround(u / 8 * (n - 1)));
      CHECK(max_abs(f.M - p.M[i]) < 1e-4 * (1 + max_abs(p.M[i])));
    }
  }

  TEST_CASE("C9 profile is constant") {
    auto g = parametrize(HClass::C9, 0, 0);
    auto pr = curvature_profile(g, -1, 1, 9);
    for (size_t i = 0; i < pr.k.size(); ++i) {
      CHECK(std::abs(pr.k[i] - 1) < 1e-9);
      CHECK(std::abs(pr.h[i] + 0.5) < 1e-9);
    }
  }

  TEST_CASE("conformal invariance and equivariance") {
    std::mt19937_64 rng(22);
    auto g = parametrize(HClass::C2ii, 0.8, 1.2);
    for (int i = 0; i < 5; ++i) {
      Mat5 F = random_conformal(rng, 0.5);
      Mat5 Fp = Tpm() * F * Tmp();
      auto g2 = transform_curve(g, Fp, [](const Jet& s) { return 0.5 * s + 0.1 * sin(s); }, -3, 3);
      for (double s : {0.2, 1.4}) {
        double t = 0.5 * s + 0.1 * std::sin(s);
        CanonicalFrame f1 = canonical_frame(g, t), f2 = canonical_frame(g2, s);
        CHECK(std::abs(f1.k - f2.k) < 1e-8);
        CHECK(std::abs(f1.h - f2.h) < 1e-8);
        CHECK(max_abs(f2.M - F * f1.M) < 1e-7 * (1 + max_abs(F * f1.M)));
        Mat5 Q1 = curvature_operator(f1.M, f1.k, f1.h), Q2 = curvature_operator(f2.M, f2.k, f2.h);
        CHECK(max_abs(Q2 - F * Q1 * mobius_dual(F)) < 1e-7 * (1 + max_abs(Q2)));
      }
    }
  }

  TEST_CASE("curves on the adS wall have k = 0") {
    double b = 0.6;
    auto g = make_curve([b](const Jet& t) { return Jet5{cos(t), sin(t), Jet(0.0), cos(b * t), sin(b * t)}; }, -5, 5);
    for (double t : {0.0, 1.3}) {
      CanonicalFrame f = canonical_frame(g, t);
      CHECK(std::abs(f.k) < 1e-9);
      CHECK(classify(std::abs(f.k), f.h).ads_wall);
    }
  }

  TEST_CASE("frame point and csv") {
    auto g = parametrize(HClass::C4, 0.9, 1.0);
    CanonicalFrame f = canonical_frame(g, 0.5);
    CHECK((frame_point(f.M).x - g.point(0.5).x).norm() < 1e-10);
    FramePath p = integrate_frenet([](double) { return 1.0; }, [](double) { return 0.0; }, f.M, 0, 1, 1e-10, 5);
    std::string path = "frames_test.csv";
    write_frame_csv(path, p);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(std::count(header.begin(), header.end(), ',') == 27);
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 5);
    std::remove(path.c_str());
  }
}
