#pragma once

#include <array>
#include <random>
#include <utility>

#include "ein/types.hpp"

namespace ein {

enum class BasisKind { Mobius, Poincare, Lie };

const char* basis_name(BasisKind k);

// Gram matrix of the (2,3) scalar product in the given basis.
const Mat5& gram(BasisKind k);
inline const Mat5& mgram() { return gram(BasisKind::Mobius); }

double product(const Vec5& u, const Vec5& v, BasisKind k);

struct BasisVec {
  Vec5 x;
  BasisKind kind;
};
// throws UsageError when the kinds differ
double product(const BasisVec& u, const BasisVec& v);

// T with B_to = B_from * T, so coordinates convert as x_from = T x_to.
Mat5 basis_transition(BasisKind from, BasisKind to);

// Point of S^1 x S^2 in Poincare coordinates.
struct EinsteinPoint {
  Vec5 x;
  Eigen::Vector2d time() const { return x.head<2>(); }
  Vec3 space() const { return x.tail<3>(); }
};

constexpr double kNullTol = 1e-9;
constexpr double kWallTol = 1e-9;

// Positive multiple of a null vector (Poincare coordinates) on the section.
EinsteinPoint ray_normalize(const Vec5& x, double tol = kNullTol);

enum class Side { Positive, Wall, Negative };
enum class DsSide { Positive, WallPlus, WallMinus, Negative };
const char* side_name(Side s);
const char* side_name(DsSide s);

struct ChamberReport {
  Side ads;
  Side minkowski;
  DsSide desitter;
};

ChamberReport chamber(const EinsteinPoint& p, double tol = kWallTol);

// 2:1 branched covering onto the solid toroid of radii (2,1).
Vec3 toroidal_projection(const EinsteinPoint& p);
// distance of (sqrt(X^2+Y^2)-2, Z) from the origin
double toroid_radius(const Vec3& t);

EinsteinPoint embed_ads(double x1, double x2, double y1, double y2, double tol = kNullTol);
EinsteinPoint embed_minkowski(double x1, double x2, double x3);
EinsteinPoint embed_desitter(double w1, double w2, double w3, double w4, double tol = kNullTol);

// Generators M^i_j of the Lie algebra m(2,3) in Moebius coordinates.
// Index pairs: 00 01 02 03 12 13 23 41 42 43.
Mat5 mgen(int i, int j);
const std::array<std::pair<int, int>, 10>& mgen_pairs();
// coefficients of A in the mgen basis (A assumed in m(2,3))
Eigen::Matrix<double, 10, 1> mgen_coords(const Mat5& A);

// ᵗA m + m A, zero for elements of m(2,3)
double m23_defect(const Mat5& A);

Mat5 random_m23(std::mt19937_64& rng, double scale);
// exp of a random m(2,3) element: a random element of the identity component
Mat5 random_conformal(std::mt19937_64& rng, double scale);

// Frame helpers (Moebius coordinates)
Mat5 mobius_dual(const Mat5& M);  // m^-1 ᵗM m, the inverse of a Moebius frame
double frame_defect(const Mat5& M);  // max |ᵗM m M - m|
// Signature-aware Gram-Schmidt in the order M1, M2, M3, M0, M4.
void reorthonormalize_mobius(Mat5& M);

Mat5 expm(const Mat5& A);
Mat4 expm(const Mat4& A);

}  // namespace ein
