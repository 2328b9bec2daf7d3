#pragma once

#include <functional>
#include <vector>

#include "ein/frames.hpp"
#include "ein/rational.hpp"

namespace ein {

// Parameters (e1, e2) of a critical curve of the strain functional: e1 < e2, e2 > 0.
struct CriticalParams {
  double e1 = 0, e2 = 0;
  int type = 0;  // 1: 0 < e1, 2: e1 < 0, 3: e1 = 0
  double m = 0, p = 0;
};

constexpr double kPhaseTol = 1e-12;

CriticalParams phase_type(double e1, double e2, double tol = kPhaseTol);

struct ElResidual {
  double r1, r2;
};
// r1 = k'' - k^3 + 2 k h, r2 = h' - 3 k k', from jets at one point
ElResidual el_residual(const Jet& k, const Jet& h);
// central differences
ElResidual el_residual(const ScalarFn& k, const ScalarFn& h, double u, double step = 1e-3);

// Closed-form curvature of the critical curve with phase shift 0; h from the first integral.
class CurvatureSolution {
 public:
  explicit CurvatureSolution(const CriticalParams& cp);
  const CriticalParams& params() const { return cp_; }
  Jet k(const Jet& u) const;
  Jet h(const Jet& u) const;
  double k(double u) const { return k(Jet::var(u)).value(); }
  double kdot(double u) const { return k(Jet::var(u)).c[1]; }
  double h(double u) const;
  // period of k; infinite for type 3
  double period() const;
  // y^2 + (x^2 - e1)(x^2 - e2) at (k, k')
  double portrait_residual(double u) const;

 private:
  CriticalParams cp_;
  double amp_ = 0, rate_ = 0, mell_ = 0;
};

// H = -M01 - M42 - k M13 + k' M03 + (h - k^2) M02
Mat5 momentum_generator(double k, double kdot, double h);
// M H M^-1 for a Moebius frame M
Mat5 momentum(const Mat5& M, double k, double kdot, double h);

// 1/2 (mu10 + mu24 + (k^2 - h) mu20 - k' mu30 + k mu31) on a Maurer-Cartan value mu
double critical_contact_form(const Mat5& mu, double k, double kdot, double h);

struct CriticalPath {
  std::vector<double> u;
  std::vector<Mat5> M;
  std::vector<double> k, kdot, h;
  double max_defect = 0;
  // deviation of (k, h) from the closed form and of the first integrals
  double max_curvature_error = 0, max_first_integral = 0;
  std::vector<EinsteinPoint> points() const;
};

// Integral curve of the characteristic field: M' = M K(h,k), k' = kd, kd' = k^3 - 2kh, h' = 3 k kd,
// started from the closed-form curvatures at u = 0.
CriticalPath integrate_critical(double e1, double e2, const Mat5& M0, double span, int samples,
                                double tol = 1e-12);

// Curve sampled from a path (Poincare coordinates); periodic if closed.
TimelikeCurve critical_curve(const CriticalPath& path, bool periodic);

// e2 - e1 > 2 and e1 + e2 < -sqrt((e2 - e1)^2 - 4)
bool in_dstar(double e1, double e2);
// image of the period map: 0 < y < x < 1, x^2 + y^2 > 1 (edges e2 -> 0, s -> 0, e1 + e2 -> -s)
bool in_period_domain(double x, double y);

struct PeriodMap {
  double psi1 = 0, psi2 = 0;  // monodromy rotation numbers
  double closed1 = 0, closed2 = 0;  // elliptic-integral closed form
  double omega = 0, xi1 = 0, xi2 = 0;
};

double period_omega(double e1, double e2);
std::pair<double, double> period_map_closed_form(double e1, double e2);
PeriodMap period_map(double e1, double e2, double tol = 1e-12);

struct Inversion {
  double e1, e2;
  double residual;  // max |Psi - q| by monodromy
  int iterations;
};
Inversion invert_period_map(const Rational& q1, const Rational& q2);
Inversion invert_period_map(double x, double y);

struct ClosedCritical {
  double e1, e2, omega;
  long periods;  // lcm of the denominators
  double length;
  double frame_gap, curve_gap;
  int ads_arcs;  // maximal arcs in one adS chamber
  CriticalPath path;
  TimelikeCurve curve;
};
ClosedCritical closed_critical_curve(const Rational& q1, const Rational& q2, int samples_per_period = 400);

// Frame and curve-point gaps after each of n curvature periods, frame started at the identity.
struct Recurrence {
  std::vector<double> frame_gap, curve_gap;
};
Recurrence recurrence_gaps(double e1, double e2, int n, double tol = 1e-12);

}  // namespace ein
