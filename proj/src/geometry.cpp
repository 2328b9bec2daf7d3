#include "ein/geometry.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace ein {

namespace {

Mat5 make_gram(BasisKind k) {
  Mat5 g = Mat5::Zero();
  switch (k) {
    case BasisKind::Mobius:
      g(0, 4) = g(4, 0) = -1;
      g(1, 1) = -1;
      g(2, 2) = g(3, 3) = 1;
      break;
    case BasisKind::Poincare:
      g.diagonal() << -1, -1, 1, 1, 1;
      break;
    case BasisKind::Lie:
      g(0, 4) = g(4, 0) = -1;
      g(1, 3) = g(3, 1) = -1;
      g(2, 2) = 1;
      break;
  }
  return g;
}

// x_M = T x_kind
Mat5 to_mobius(BasisKind k) {
  const double r = 1.0 / std::sqrt(2.0);
  Mat5 t = Mat5::Zero();
  switch (k) {
    case BasisKind::Mobius:
      t.setIdentity();
      break;
    case BasisKind::Poincare:
      t(0, 0) = t(4, 0) = t(4, 4) = r;
      t(0, 4) = -r;
      t(1, 1) = t(2, 2) = t(3, 3) = 1;
      break;
    case BasisKind::Lie:
      t(0, 0) = t(2, 2) = t(4, 4) = 1;
      t(1, 1) = t(1, 3) = -r;
      t(3, 1) = r;
      t(3, 3) = -r;
      break;
  }
  return t;
}

}  // namespace

const char* basis_name(BasisKind k) {
  switch (k) {
    case BasisKind::Mobius: return "mobius";
    case BasisKind::Poincare: return "poincare";
    case BasisKind::Lie: return "lie";
  }
  return "?";
}

const Mat5& gram(BasisKind k) {
  static const Mat5 g[3] = {make_gram(BasisKind::Mobius), make_gram(BasisKind::Poincare),
                            make_gram(BasisKind::Lie)};
  return g[static_cast<int>(k)];
}

double product(const Vec5& u, const Vec5& v, BasisKind k) { return u.dot(gram(k) * v); }

double product(const BasisVec& u, const BasisVec& v) {
  if (u.kind != v.kind) throw UsageError("product: vectors expressed in different bases");
  return product(u.x, v.x, u.kind);
}

Mat5 basis_transition(BasisKind from, BasisKind to) {
  if (from == to) return Mat5::Identity();
  // orthonormal-ish transitions: invert exactly via the Gram relation
  Mat5 a = to_mobius(from);
  Mat5 ainv = gram(from).inverse() * a.transpose() * gram(BasisKind::Mobius);
  return ainv * to_mobius(to);
}

EinsteinPoint ray_normalize(const Vec5& x, double tol) {
  double e = x.squaredNorm();
  if (!(e > 0) || !x.allFinite()) throw DegenerateError("ray_normalize: zero or non-finite vector");
  double q = product(x, x, BasisKind::Poincare);
  if (std::abs(q) / e > tol) throw DomainError("ray_normalize: vector is not null");
  double s = x.head<2>().norm();
  if (s < 1e-300) throw DegenerateError("ray_normalize: zero time part");
  return {x / s};
}

const char* side_name(Side s) {
  switch (s) {
    case Side::Positive: return "positive";
    case Side::Wall: return "wall";
    case Side::Negative: return "negative";
  }
  return "?";
}
const char* side_name(DsSide s) {
  switch (s) {
    case DsSide::Positive: return "positive";
    case DsSide::WallPlus: return "wall+";
    case DsSide::WallMinus: return "wall-";
    case DsSide::Negative: return "negative";
  }
  return "?";
}

static Side sign3(double v, double tol) {
  if (v > tol) return Side::Positive;
  if (v < -tol) return Side::Negative;
  return Side::Wall;
}

ChamberReport chamber(const EinsteinPoint& p, double tol) {
  const Vec5& x = p.x;
  ChamberReport r;
  r.ads = sign3(x[2], tol);
  r.minkowski = sign3(x[0] - x[4], tol);
  if (x[0] > tol)
    r.desitter = DsSide::Positive;
  else if (x[0] < -tol)
    r.desitter = DsSide::Negative;
  else
    r.desitter = x[1] > 0 ? DsSide::WallPlus : DsSide::WallMinus;
  return r;
}

Vec3 toroidal_projection(const EinsteinPoint& p) {
  const Vec5& x = p.x;
  return {x[0] * x[2] - x[1] * (x[3] + 2), x[1] * x[2] + x[0] * (x[3] + 2), x[4]};
}

double toroid_radius(const Vec3& t) { return std::hypot(std::hypot(t[0], t[1]) - 2, t[2]); }

EinsteinPoint embed_ads(double x1, double x2, double y1, double y2, double tol) {
  double q = -x1 * x1 - x2 * x2 + y1 * y1 + y2 * y2;
  if (std::abs(q + 1) > tol) throw DomainError("embed_ads: point is off the quadric");
  Vec5 v;
  v << x1, x2, 1, y1, y2;
  return {v / std::hypot(x1, x2)};
}

EinsteinPoint embed_minkowski(double x1, double x2, double x3) {
  Vec5 m;
  m << 1, x1, x2, x3, 0.5 * (-x1 * x1 + x2 * x2 + x3 * x3);
  Vec5 p = basis_transition(BasisKind::Poincare, BasisKind::Mobius) * m;
  return ray_normalize(p);
}

EinsteinPoint embed_desitter(double w1, double w2, double w3, double w4, double tol) {
  double q = -w1 * w1 + w2 * w2 + w3 * w3 + w4 * w4;
  if (std::abs(q - 1) > tol) throw DomainError("embed_desitter: point is off the quadric");
  Vec5 v;
  v << 1, w1, w2, w3, w4;
  return {v / std::hypot(1.0, w1)};
}

Mat5 mgen(int i, int j) {
  auto E = [](int a, int b) {
    Mat5 z = Mat5::Zero();
    z(a, b) = 1;
    return z;
  };
  int key = 10 * i + j;
  switch (key) {
    case 0: return E(0, 0) - E(4, 4);
    case 1: return E(0, 1) - E(1, 4);
    case 2: return E(0, 2) + E(2, 4);
    case 3: return E(0, 3) + E(3, 4);
    case 12: return E(1, 2) + E(2, 1);
    case 13: return E(1, 3) + E(3, 1);
    case 23: return E(2, 3) - E(3, 2);
    case 41: return E(4, 1) - E(1, 0);
    case 42: return E(4, 2) + E(2, 0);
    case 43: return E(4, 3) + E(3, 0);
  }
  throw UsageError("mgen: unknown index pair");
}

const std::array<std::pair<int, int>, 10>& mgen_pairs() {
  static const std::array<std::pair<int, int>, 10> p = {
      {{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {4, 1}, {4, 2}, {4, 3}}};
  return p;
}

Eigen::Matrix<double, 10, 1> mgen_coords(const Mat5& A) {
  Eigen::Matrix<double, 10, 1> c;
  c << A(0, 0), A(0, 1), A(0, 2), A(0, 3), A(1, 2), A(1, 3), A(2, 3), A(4, 1), A(4, 2), A(4, 3);
  return c;
}

double m23_defect(const Mat5& A) {
  const Mat5& m = mgram();
  return (A.transpose() * m + m * A).cwiseAbs().maxCoeff();
}

Mat5 random_m23(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g(0.0, scale);
  Mat5 a = Mat5::Zero();
  for (auto [i, j] : mgen_pairs()) a += g(rng) * mgen(i, j);
  return a;
}

Mat5 random_conformal(std::mt19937_64& rng, double scale) { return expm(random_m23(rng, scale)); }

Mat5 mobius_dual(const Mat5& M) {
  const Mat5& m = mgram();
  return m * M.transpose() * m;  // m is its own inverse
}

double frame_defect(const Mat5& M) {
  const Mat5& m = mgram();
  return (M.transpose() * m * M - m).cwiseAbs().maxCoeff();
}

void reorthonormalize_mobius(Mat5& M) {
  const Mat5& m = mgram();
  auto ip = [&](const Vec5& a, const Vec5& b) { return a.dot(m * b); };
  Vec5 c1 = M.col(1), c2 = M.col(2), c3 = M.col(3), c0 = M.col(0), c4 = M.col(4);
  c1 /= std::sqrt(-ip(c1, c1));
  c2 += ip(c2, c1) * c1;
  c2 /= std::sqrt(ip(c2, c2));
  c3 += ip(c3, c1) * c1 - ip(c3, c2) * c2;
  c3 /= std::sqrt(ip(c3, c3));
  auto strip = [&](Vec5& v) { v += ip(v, c1) * c1 - ip(v, c2) * c2 - ip(v, c3) * c3; };
  strip(c0);
  strip(c4);
  // null pair: c0 + alpha c4 null, alpha the root nearest zero
  double A = ip(c4, c4), B = ip(c0, c4), C = ip(c0, c0);
  double disc = std::sqrt(std::max(B * B - A * C, 0.0));
  double alpha = -C / (B + std::copysign(disc, B));
  c0 += alpha * c4;
  double beta = -ip(c4, c4) / (2 * ip(c4, c0));
  c4 += beta * c0;
  double s = 1.0 / std::sqrt(-ip(c0, c4));
  M.col(0) = s * c0;
  M.col(1) = c1;
  M.col(2) = c2;
  M.col(3) = c3;
  M.col(4) = s * c4;
}

Mat5 expm(const Mat5& A) { return A.exp(); }
Mat4 expm(const Mat4& A) { return A.exp(); }

}  // namespace ein
