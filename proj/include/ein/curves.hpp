#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ein/geometry.hpp"
#include "ein/jet.hpp"

namespace ein {

// Null-cone representative in Poincare coordinates, evaluated on a jet.
using CurveEval = std::function<Jet5(const Jet&)>;

enum class DerivMode { Exact, Sampled };

struct TimelikeCurve {
  CurveEval eval;
  double t0 = 0.0, t1 = 1.0;
  bool periodic = false;
  double period = 0.0;
  DerivMode mode = DerivMode::Exact;

  // S^1 x S^2 section, normalization differentiated through the jet
  Jet5 section(const Jet& t) const;
  Jet5 section(double t) const { return section(Jet::var(t)); }
  EinsteinPoint point(double t) const;
};

TimelikeCurve make_curve(CurveEval f, double t0, double t1);
TimelikeCurve make_periodic_curve(CurveEval f, double period);
// Local degree-8 Lagrange interpolation through the nearest 9 samples.
TimelikeCurve sampled_curve(std::vector<double> t, std::vector<Vec5> x, bool periodic);
TimelikeCurve read_curve_csv(const std::string& path, bool periodic);
void write_curve_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<Vec5>& x);

// Image under a conformal map F (Poincare coordinates) and a parameter change f.
TimelikeCurve transform_curve(const TimelikeCurve& g, const Mat5& F,
                              std::function<Jet(const Jet&)> f, double s0, double s1);

Vec5 jet_value(const Jet5& v);
Vec5 jet_deriv(const Jet5& v, int k);
Jet jet_product(const Jet5& a, const Jet5& b, BasisKind k);
Jet5 jet_derivative(const Jet5& v);
Jet5 jet_apply(const Mat5& A, const Jet5& v);

std::pair<Eigen::Vector2d, Vec3> split_components(const TimelikeCurve& g, double t);

// Strain density as a jet in the curve parameter (requires a non-vertex point).
Jet strain_jet(const Jet5& section);
// fourth power of the strain density, smooth through vertices
Jet strain4_jet(const Jet5& section);
double strain_density(const TimelikeCurve& g, double t);

struct StrainProfile {
  std::vector<double> t, upsilon, u;
};
StrainProfile strain_profile(const TimelikeCurve& g, double t0, double t1, int n);
double total_strain(const TimelikeCurve& g, double t0, double t1);

struct OsculatingSpace {
  Eigen::Matrix<double, 5, 3> basis;  // Gram diag(-1,-1,+1)
  Mat5 normal_projector;
};
OsculatingSpace osculating_space(const TimelikeCurve& g, double t);

struct VertexReport {
  std::vector<double> vertices;
  bool cycle = false;
};
VertexReport find_vertices(const TimelikeCurve& g, double t0, double t1, int n);

int maslov_index(const TimelikeCurve& g, double t0, double span, int samples = 4096);

// Section jets of g re-expanded in the conformal parameter at t (u(t) = 0).
Jet5 conformal_jet(const TimelikeCurve& g, double t);

struct StrainReparam {
  TimelikeCurve curve;  // parametrized by strain
  double t_ref;
  double total;  // strain over the source domain (or period)
  std::function<double(double)> t_of_u;
  std::function<double(double)> u_of_t;
};
StrainReparam reparametrize_by_strain(const TimelikeCurve& g, double t_ref);

}  // namespace ein
