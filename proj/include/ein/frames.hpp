#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ein/curves.hpp"

namespace ein {

// K(h,k) = M02 - M41 - k M23 - h M01
Mat5 frenet_matrix(double k, double h);

struct CanonicalFrame {
  Mat5 M;
  double k, h;
};

// Frame from section jets in a conformal parameter (Poincare coordinates).
CanonicalFrame canonical_frame_from_jets(const Jet5& gamma_u);
// gamma already in conformal parameter
CanonicalFrame canonical_frame_at(const TimelikeCurve& gamma_u, double u);
// any parametrization: re-expands in the conformal parameter locally
CanonicalFrame canonical_frame(const TimelikeCurve& g, double t);

struct CurvatureProfile {
  std::vector<double> t, u, k, h;
};
CurvatureProfile curvature_profile(const TimelikeCurve& g, double t0, double t1, int n);

struct FramePath {
  std::vector<double> u;
  std::vector<Mat5> M;
  std::vector<double> k, h;
  double max_defect = 0;  // Gram drift after correction
};

using ScalarFn = std::function<double(double)>;

// M' = M K(h(u), k(u)), adaptive RKF78 with per-step re-orthonormalization.
FramePath integrate_frenet(const ScalarFn& k, const ScalarFn& h, const Mat5& M0, double u0, double u1,
                           double tol, int samples);

Mat5 curvature_operator(const Mat5& M, double k, double h);

// Curve point (Poincare section) carried by the first frame column.
EinsteinPoint frame_point(const Mat5& M);

void write_frame_csv(const std::string& path, const FramePath& p);

}  // namespace ein
