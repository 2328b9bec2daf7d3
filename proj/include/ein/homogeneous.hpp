#pragma once

#include <optional>
#include <string>
#include <utility>

#include "ein/curves.hpp"
#include "ein/rational.hpp"

namespace ein {

enum class HClass { C1, C2i, C2ii, C3, C4, C5, C6, C7i, C7ii, C8, C9 };

const char* class_name(HClass c);
HClass parse_class(const std::string& s);
bool is_regular(HClass c);

struct Classification {
  std::optional<HClass> cls;
  bool ads_wall = false;  // k = 0
  bool flipped = false;   // k < 0 was normalized to -k
};

constexpr double kStratumTol = 1e-9;

// Requires k >= 0.
Classification classify(double k, double h, double tol = kStratumTol);
// Applies the orientation flip k -> -k first and reports it.
Classification classify_signed(double k, double h, double tol = kStratumTol);

bool in_domain(HClass c, double a, double b);

std::pair<double, double> curvatures_from_params(HClass c, double a, double b);
// Exceptional classes return (0, b). Ill-conditioned close to the boundary strata.
std::pair<double, double> params_from_curvatures(HClass c, double k, double h);

// Curve in Poincare coordinates; exact jets. Exceptional classes ignore a.
TimelikeCurve parametrize(HClass c, double a, double b);
// C2i with rational b = m/n: closed, period 2 pi n.
TimelikeCurve parametrize_closed_c2i(double a, Rational b);

// Curvatures from the scalar products of an orbit curve (raw representative, any parameter).
struct OrbitCurvatures {
  double k, h, upsilon;
  Mat5 frame;  // Moebius coordinates
};
OrbitCurvatures orbit_curvatures(const TimelikeCurve& g, double t);

struct TrapReport {
  bool ads = false, minkowski = false, desitter = false;
  double ads_margin = 0, ds_margin = 0;  // > 0 when feasible
  Vec5 ads_normal, ds_normal;            // witnesses (Poincare coordinates)
};
// Whether sampled points fit in one open chamber of each family.
TrapReport trapped_report(const TimelikeCurve& g, double t0, double t1, int samples, unsigned seed = 1);

}  // namespace ein
