#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ein/kernels.hpp"
#include "ein/types.hpp"

namespace ein {

// Closed curve sampled at t_i = i period / n, i < n. Derivatives are with respect to t.
struct SpatialKnot {
  std::vector<Vec3> x, d1, d2;
  double period = 0;
  std::size_t size() const { return x.size(); }
  double param(std::size_t i) const { return period * static_cast<double>(i) / static_cast<double>(x.size()); }
};

// Derivatives by central differences of f.
SpatialKnot sample_knot(const std::function<Vec3(double)>& f, double period, int n);
// Derivatives by periodic sixth-order differences of the samples.
SpatialKnot knot_from_samples(std::vector<Vec3> x, double period);

struct LinkOptions {
  double min_distance = 1e-4;  // closer strands count as intersecting
  double min_angle = 1e-3;     // crossing angle (rad) in the projection
  unsigned seed = 1;
  int retries = 12;
  double gauss_guard = 0.1;  // allowed |Gauss integral - Lk|; negative disables the quadrature check
  KernelMode kernel = KernelMode::Auto;
};

struct Crossing {
  double t, t2;  // parameters on the two strands
  int sign;
};
struct CrossingDiagram {
  Vec3 direction;
  std::vector<Crossing> crossings;
};

// Crossings of a over or under b seen along dir; sign = sgn((a - b) . (a' x b')).
// Throws NotGenericError on a flat crossing, DomainError if the strands meet.
CrossingDiagram crossing_diagram(const SpatialKnot& a, const SpatialKnot& b, const Vec3& dir,
                                 const LinkOptions& opt = {});
CrossingDiagram self_crossings(const SpatialKnot& k, const Vec3& dir, const LinkOptions& opt = {});

// Gauss double integral, chord midpoint rule with one Richardson step.
double gauss_linking(const SpatialKnot& a, const SpatialKnot& b, KernelMode m = KernelMode::Auto);

double min_distance(const SpatialKnot& a, const SpatialKnot& b, KernelMode m = KernelMode::Auto);
// Excludes pairs closer than window samples along the knot.
double min_self_distance(const SpatialKnot& k, std::size_t window, KernelMode m = KernelMode::Auto);

struct LinkResult {
  int lk;
  double gauss;  // NaN when the check is disabled
  CrossingDiagram diagram;
};
LinkResult link(const SpatialKnot& a, const SpatialKnot& b, const LinkOptions& opt = {});
inline int linking_number(const SpatialKnot& a, const SpatialKnot& b, const LinkOptions& opt = {}) {
  return link(a, b, opt).lk;
}

// Sum of self-crossing signs seen along v (perturbed within 1e-3 on non-generic input).
int writhe(const SpatialKnot& k, const Vec3& v, const LinkOptions& opt = {});

// Frenet normal and binormal; DomainError at an inflection.
std::vector<Vec3> frenet_normal(const SpatialKnot& k);
std::vector<Vec3> frenet_binormal(const SpatialKnot& k);

// Normal part of X scaled by eta, added to the knot.
SpatialKnot push_off(const SpatialKnot& k, const std::vector<Vec3>& X, double eta);
// Largest eta for which the push-off stays in a tube of the knot, with sampling margin.
double push_off_scale(const SpatialKnot& k, const std::vector<Vec3>& X);
int linking_of_field(const SpatialKnot& k, const std::vector<Vec3>& X, double eta = 0, const LinkOptions& opt = {});
int self_linking(const SpatialKnot& k, const LinkOptions& opt = {});
// Degree of t -> (X.N, X.B).
int rotation_number(const SpatialKnot& k, const std::vector<Vec3>& X);

enum class TorusKind { Standard, Starred, Check };
const char* torus_kind_name(TorusKind k);
TorusKind parse_torus_kind(const std::string& s);
// standard ((1+cos(pu)/2) cos qu, (1+cos(pu)/2) sin qu, -sin(pu)/2); starred uses /4;
// check (3 sin qt, 4 sin pt, 3 cos qt)/(4 cos pt - 5)
SpatialKnot torus_knot(TorusKind kind, int p, int q, int n = 4000);
// (-2A sin qu, (1-A^2) sin pu, 2A cos qu, (A^2-1) cos pu)/(1+A^2) on S3
std::vector<Vec4> contact_torus_knot(double A, int p, int q, int n);

// (y1, y2, -y3)/(1 - y4); DomainError within tol of (0,0,0,1).
Vec3 stereographic(const Vec4& y, double tol = 1e-6);
Vec3 stereographic_push(const Vec4& y, const Vec4& v);
SpatialKnot stereographic(const std::vector<Vec4>& y, double period);

// Unitary map of C2 = (x1 + i x3, x2 + i x4); preserves the contact form.
Mat4 u2_rotation(double theta, double phi, double psi);
// Seeded search for a unitary map keeping all curves away from the pole; returns it and the margin min(1 - y4).
std::pair<Mat4, double> pole_avoiding_rotation(const std::vector<const std::vector<Vec4>*>& curves, unsigned seed,
                                               int tries = 200);

struct Bennequin {
  int e1, e2;  // push-offs along the two contact fields
  double margin;
};
// Transverse knot in S3; throws ConsistencyError if the two push-offs disagree.
// eta <= 0 picks the push-off distance from the sampling and the distance between strands.
Bennequin bennequin(const std::vector<Vec4>& y, double eta = 0, const LinkOptions& opt = {});

struct DirectrixReport {
  double a = 0;
  int m = 0, n = 0;
  double k = 0, h = 0, ell = 0, directrix_period = 0;
  int maslov = 0;
  double spin = 0;
  int p = 0, q = 0, lk = 0, b_gamma = 0, b_star = 0;
  double lk_gauss = 0, closure_gap = 0, min_gap = 0, pole_margin = 0;
  bool simple = false;
  struct {
    int p, q, lk, b, maslov;
    double spin;
  } predicted{};
  bool agrees() const;
  std::vector<Vec4> gamma, gamma_star;
};
DirectrixReport directrix_invariants(double a, int m, int n, int samples = 8000, const LinkOptions& opt = {});

void write_knot_csv(const std::string& path, const SpatialKnot& k);
SpatialKnot read_knot_csv(const std::string& path);

}  // namespace ein
