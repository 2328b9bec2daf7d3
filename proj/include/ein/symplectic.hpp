#pragma once

#include <random>
#include <vector>

#include "ein/frames.hpp"

namespace ein {

// Matrix of w(x,y) = x1 y3 + x2 y4 - x3 y1 - x4 y2.
const Mat4& symplectic_J();

double sp4_defect(const Mat4& X);       // max |ᵗX J X - J|
double sp4_alg_defect(const Mat4& A);   // max |ᵗA J + J A|
Mat4 random_sp4_alg(std::mt19937_64& rng, double scale);

// Double cover Sp(4,R) -> identity component of O(2,3), Moebius coordinates.
Mat5 rho(const Mat4& X, double tol = 1e-8);
// Its differential, in closed form.
Mat5 rho_star(const Mat4& A);
// Inverse of rho_star on m(2,3).
Mat4 rho_star_inv(const Mat5& A);

// Lift of K(h,k): rows (0,-k/2,-1/r2,0), (k/2,0,0,-1/r2), ((h-1)/r2,0,0,-k/2), (0,(h+1)/r2,k/2,0)
Mat4 lifted_frenet(double k, double h);

// Newton iteration X <- X (3 - S)/2 with S = -J ᵗX J X, until the defect is below 1e-15.
void reorthonormalize_sp4(Mat4& X);

// A preimage of M under rho (Cartan decomposition, one log per factor). Sign is arbitrary.
Mat4 lift_frame(const Mat5& M);

// Contact form z = x1 dx3 + x2 dx4 - x3 dx1 - x4 dx2 on S3.
double contact_eval(const Vec4& p, const Vec4& v, double tol = 1e-8);
Vec4 contact_E1(const Vec4& p);  // (-x4, x3, -x2, x1)
Vec4 contact_E2(const Vec4& p);  // (-x2, x1, x4, -x3)
Vec4 reeb_field(const Vec4& p);  // (-x3, -x4, x1, x2)

struct S3Path {
  std::vector<double> u;
  std::vector<Vec4> x, v;   // unit points and velocities
  std::vector<double> zeta;  // contact form on the velocity
};

struct DirectrixPath {
  std::vector<double> u;
  std::vector<Mat4> X;
  S3Path gamma, gamma_star;  // normalized third and fourth columns
  double max_defect = 0;
};

// X' = X Kt(h(u), k(u)) on [0, span]. Throws ConsistencyError when a directrix fails to be
// transverse (z changes sign or drops below zeta_tol).
DirectrixPath directrices(const ScalarFn& k, const ScalarFn& h, const Mat4& X0, double span, int samples,
                          double tol = 1e-12, double zeta_tol = 1e-9);

// 1 if the lift is periodic, 0.5 if anti-periodic after one period ell of the curvature.
double symplectic_spin(const ScalarFn& k, const ScalarFn& h, const Mat4& X0, double ell, double tol = 1e-12);
// From a closed curve: lifts of canonical frames at samples over one period, followed by continuity.
double symplectic_spin(const TimelikeCurve& g, double t0, double period, int samples = 400);

void write_s3_csv(const std::string& path, const S3Path& p);

}  // namespace ein
