#include "ein/symplectic.hpp"

#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <fstream>

#include "ode.hpp"

namespace ein {

namespace {

const double kR2 = std::sqrt(2.0);

Mat4 e(int i, int j) {
  Mat4 A = Mat4::Zero();
  A(i - 1, j - 1) = 1;
  A(j - 1, i - 1) = -1;
  return A;
}

// 2-forms spanning the complement of w, Gram m under the e1234 pairing
const std::array<Mat4, 5>& two_forms() {
  static const std::array<Mat4, 5> E = {e(1, 2), (e(1, 4) - e(2, 3)) / kR2, -(e(1, 4) + e(2, 3)) / kR2,
                                        (e(1, 3) - e(2, 4)) / kR2, -e(3, 4)};
  return E;
}

// coefficient of e1234 in a ^ b
double pair(const Mat4& A, const Mat4& B) {
  return A(0, 1) * B(2, 3) - A(0, 2) * B(1, 3) + A(0, 3) * B(1, 2) + A(1, 2) * B(0, 3) - A(1, 3) * B(0, 2) +
         A(2, 3) * B(0, 1);
}

std::array<Mat4, 10> sp4_basis() {
  std::array<Mat4, 10> B;
  int n = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat4 A = Mat4::Zero();
      A(i, j) = 1;
      A(2 + j, 2 + i) = -1;
      B[n++] = A;
    }
  for (int blk = 0; blk < 2; ++blk)
    for (int i = 0; i < 2; ++i)
      for (int j = i; j < 2; ++j) {
        Mat4 A = Mat4::Zero();
        int r = blk == 0 ? 0 : 2, c = blk == 0 ? 2 : 0;
        A(r + i, c + j) = 1;
        A(r + j, c + i) = 1;
        B[n++] = A;
      }
  return B;
}

double max_abs(const Mat4& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace

const Mat4& symplectic_J() {
  static const Mat4 J = [] {
    Mat4 J = Mat4::Zero();
    J(0, 2) = J(1, 3) = 1;
    J(2, 0) = J(3, 1) = -1;
    return J;
  }();
  return J;
}

double sp4_defect(const Mat4& X) {
  const Mat4& J = symplectic_J();
  return max_abs(X.transpose() * J * X - J);
}

double sp4_alg_defect(const Mat4& A) {
  const Mat4& J = symplectic_J();
  return max_abs(A.transpose() * J + J * A);
}

Mat4 random_sp4_alg(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> N(0, scale);
  Mat4 A = Mat4::Zero();
  for (const Mat4& B : sp4_basis()) A += N(rng) * B;
  return A;
}

Mat5 rho(const Mat4& X, double tol) {
  if (sp4_defect(X) > tol * (1 + X.squaredNorm())) throw DomainError("rho: matrix is not symplectic");
  const auto& E = two_forms();
  Mat4 Xi = X.inverse();
  Mat5 P;
  for (int j = 0; j < 5; ++j) {
    Mat4 Y = Xi.transpose() * E[j] * Xi;
    for (int k = 0; k < 5; ++k) P(k, j) = pair(E[k], Y);
  }
  return mgram() * P;
}

Mat5 rho_star(const Mat4& A) {
  double a11 = A(0, 0), a12 = A(0, 1), a21 = A(1, 0), a22 = A(1, 1);
  double b11 = A(0, 2), b12 = A(0, 3), b22 = A(1, 3);
  double c11 = A(2, 0), c12 = A(2, 1), c22 = A(3, 1);
  return -(a11 + a22) * mgen(0, 0) + (a11 - a22) * mgen(1, 2) + (a12 + a21) * mgen(1, 3) +
         (a12 - a21) * mgen(2, 3) - (c11 + c22) / kR2 * mgen(0, 1) + (c22 - c11) / kR2 * mgen(0, 2) -
         kR2 * c12 * mgen(0, 3) + (b11 + b22) / kR2 * mgen(4, 1) - (b11 - b22) / kR2 * mgen(4, 2) -
         kR2 * b12 * mgen(4, 3);
}

Mat4 rho_star_inv(const Mat5& A) {
  static const auto basis = sp4_basis();
  static const Eigen::PartialPivLU<Eigen::Matrix<double, 10, 10>> lu = [] {
    Eigen::Matrix<double, 10, 10> L;
    for (int i = 0; i < 10; ++i) L.col(i) = mgen_coords(rho_star(basis[i]));
    return L.partialPivLu();
  }();
  Eigen::Matrix<double, 10, 1> c = lu.solve(mgen_coords(A));
  Mat4 X = Mat4::Zero();
  for (int i = 0; i < 10; ++i) X += c(i) * basis[i];
  return X;
}

Mat4 lifted_frenet(double k, double h) {
  Mat4 A;
  A << 0, -k / 2, -1 / kR2, 0,
       k / 2, 0, 0, -1 / kR2,
       (h - 1) / kR2, 0, 0, -k / 2,
       0, (h + 1) / kR2, k / 2, 0;
  return A;
}

void reorthonormalize_sp4(Mat4& X) {
  if (sp4_defect(X) <= 1e-12) return;
  const Mat4& J = symplectic_J();
  for (int it = 0; it < 30; ++it) {
    Mat4 S = -J * X.transpose() * J * X;
    if (max_abs(S - Mat4::Identity()) < 1e-15) return;
    X = X * (3 * Mat4::Identity() - S) / 2;
  }
}

Mat4 lift_frame(const Mat5& M) {
  // orthonormal change of basis taking m to diag(-1, -1, 1, 1, 1)
  static const Mat5 T = [] {
    Mat5 T = Mat5::Zero();
    T(0, 0) = T(4, 0) = T(0, 2) = 1 / kR2;
    T(4, 2) = -1 / kR2;
    T(1, 1) = T(2, 3) = T(3, 4) = 1;
    return T;
  }();
  Mat5 N = T.transpose() * M * T;
  Eigen::SelfAdjointEigenSolver<Mat5> es(N.transpose() * N);
  Vec5 lam = es.eigenvalues();
  Mat5 V = es.eigenvectors();
  Mat5 Pinv = V * lam.cwiseSqrt().cwiseInverse().asDiagonal() * V.transpose();
  Mat5 logP = V * (0.5 * lam.array().log()).matrix().asDiagonal() * V.transpose();
  Mat5 U = N * Pinv;
  if (U.block<2, 2>(0, 0).determinant() < 0 || U.block<3, 3>(2, 2).determinant() < 0)
    throw DomainError("lift: frame is not in the identity component");
  Mat5 logU = Mat5::Zero();
  double th = std::atan2(U(1, 0), U(0, 0));
  logU(1, 0) = th;
  logU(0, 1) = -th;
  Eigen::Matrix3d R = U.block<3, 3>(2, 2);
  Eigen::AngleAxisd aa(R);
  Vec3 w = aa.angle() * aa.axis();
  logU.block<3, 3>(2, 2) << 0, -w(2), w(1), w(2), 0, -w(0), -w(1), w(0), 0;
  Mat4 X = expm(rho_star_inv(T * logU * T.transpose())) * expm(rho_star_inv(T * logP * T.transpose()));
  reorthonormalize_sp4(X);
  double err = (rho(X) - M).cwiseAbs().maxCoeff();
  if (err > 1e-8 * (1 + M.cwiseAbs().maxCoeff())) throw NumericError("lift: preimage residual too large");
  return X;
}

double contact_eval(const Vec4& p, const Vec4& v, double tol) {
  if (std::abs(p.dot(v)) > tol * (1 + v.norm())) throw DomainError("contact form: vector not tangent to S3");
  return p(0) * v(2) + p(1) * v(3) - p(2) * v(0) - p(3) * v(1);
}

Vec4 contact_E1(const Vec4& p) { return {-p(3), p(2), -p(1), p(0)}; }
Vec4 contact_E2(const Vec4& p) { return {-p(1), p(0), p(3), -p(2)}; }
Vec4 reeb_field(const Vec4& p) { return {-p(2), -p(3), p(0), p(1)}; }

DirectrixPath directrices(const ScalarFn& k, const ScalarFn& h, const Mat4& X0, double span, int samples,
                          double tol, double zeta_tol) {
  if (sp4_defect(X0) > 1e-8) throw DomainError("directrices: initial matrix is not symplectic");
  using detail::State;
  State x(16);
  Eigen::Map<Mat4>(x.data()) = X0;
  auto sys = [&](const State& s, State& ds, double u) {
    Eigen::Map<const Mat4> X(s.data());
    Eigen::Map<Mat4>(ds.data()) = X * lifted_frenet(k(u), h(u));
  };
  DirectrixPath p;
  auto fix = [&](State& s) {
    Mat4 X = Eigen::Map<Mat4>(s.data());
    reorthonormalize_sp4(X);
    p.max_defect = std::max(p.max_defect, sp4_defect(X));
    Eigen::Map<Mat4>(s.data()) = X;
  };
  auto push = [](S3Path& g, double u, const Vec4& c, const Vec4& dc) {
    double n = c.norm();
    Vec4 y = c / n;
    Vec4 v = dc / n - y * (y.dot(dc) / n);
    g.u.push_back(u);
    g.x.push_back(y);
    g.v.push_back(v);
    g.zeta.push_back(contact_eval(y, v));
  };
  auto out = [&](double u, const State& s) {
    Mat4 X = Eigen::Map<const Mat4>(s.data());
    Mat4 dX = X * lifted_frenet(k(u), h(u));
    p.u.push_back(u);
    p.X.push_back(X);
    push(p.gamma, u, X.col(2), dX.col(2));
    push(p.gamma_star, u, X.col(3), dX.col(3));
  };
  detail::integrate_grid(sys, x, 0, span, samples, tol, fix, out);
  for (const S3Path* g : {&p.gamma, &p.gamma_star}) {
    double s0 = g->zeta.front();
    for (double z : g->zeta)
      if (std::abs(z) < zeta_tol || z * s0 < 0)
        throw ConsistencyError("directrix is not transverse to the contact distribution");
  }
  return p;
}

double symplectic_spin(const ScalarFn& k, const ScalarFn& h, const Mat4& X0, double ell, double tol) {
  DirectrixPath p = directrices(k, h, X0, ell, 2, tol, 0);
  const Mat4& X1 = p.X.back();
  double scale = max_abs(X0);
  if (max_abs(X1 - X0) < 1e-6 * scale) return 1;
  if (max_abs(X1 + X0) < 1e-6 * scale) return 0.5;
  throw ConsistencyError("spin: lift returns to neither +X0 nor -X0");
}

double symplectic_spin(const TimelikeCurve& g, double t0, double period, int samples) {
  Mat4 first = lift_frame(canonical_frame(g, t0).M), prev = first;
  for (int i = 1; i <= samples; ++i) {
    Mat4 X = lift_frame(canonical_frame(g, t0 + period * i / samples).M);
    double plus = max_abs(X - prev), minus = max_abs(X + prev);
    if (minus < plus) X = -X;
    if (std::min(plus, minus) > 0.5 * max_abs(prev)) throw NumericError("spin: samples too sparse to follow the lift");
    prev = X;
  }
  double scale = max_abs(first);
  if (max_abs(prev - first) < 1e-6 * scale) return 1;
  if (max_abs(prev + first) < 1e-6 * scale) return 0.5;
  throw ConsistencyError("spin: lift returns to neither +X0 nor -X0");
}

void write_s3_csv(const std::string& path, const S3Path& p) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out.precision(17);
  out << "u,y1,y2,y3,y4\n";
  for (size_t i = 0; i < p.u.size(); ++i)
    out << p.u[i] << ',' << p.x[i](0) << ',' << p.x[i](1) << ',' << p.x[i](2) << ',' << p.x[i](3) << '\n';
}

}  // namespace ein
