#include "ein/knots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "ein/homogeneous.hpp"
#include "ein/symplectic.hpp"

namespace ein {

namespace {

constexpr double kPi = std::numbers::pi;

Soa3 to_soa(const std::vector<Vec3>& v) {
  Soa3 s;
  s.x.reserve(v.size());
  s.y.reserve(v.size());
  s.z.reserve(v.size());
  for (const Vec3& p : v) {
    s.x.push_back(p(0));
    s.y.push_back(p(1));
    s.z.push_back(p(2));
  }
  return s;
}

// chord midpoints and chord vectors, every stride-th sample
void chords(const SpatialKnot& k, std::size_t stride, Soa3& mid, Soa3& seg) {
  std::vector<Vec3> m, d;
  const std::size_t n = k.size();
  for (std::size_t i = 0; i < n; i += stride) {
    const Vec3& a = k.x[i];
    const Vec3& b = k.x[(i + stride) % n];
    m.push_back(0.5 * (a + b));
    d.push_back(b - a);
  }
  mid = to_soa(m);
  seg = to_soa(d);
}

std::pair<Vec3, Vec3> plane_basis(const Vec3& v) {
  Vec3 a = std::abs(v(0)) < 0.9 ? Vec3(1, 0, 0) : Vec3(0, 1, 0);
  Vec3 e1 = v.cross(a).normalized();
  return {e1, v.cross(e1)};
}

Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0, 1);
  Vec3 v(N(rng), N(rng), N(rng));
  return v.normalized();
}

CrossingDiagram crossings_impl(const SpatialKnot& a, const SpatialKnot& b, const Vec3& dir, const LinkOptions& opt,
                               bool self) {
  Vec3 v = dir.normalized();
  auto [e1, e2] = plane_basis(v);
  auto project = [&](const SpatialKnot& k, std::vector<double>& u, std::vector<double>& w) {
    for (const Vec3& p : k.x) {
      u.push_back(p.dot(e1));
      w.push_back(p.dot(e2));
    }
  };
  std::vector<double> au, aw, bu, bw;
  project(a, au, aw);
  project(b, bu, bw);
  const std::size_t na = a.size(), nb = b.size();
  // segment bounding boxes of b
  std::vector<double> lo_u(nb), hi_u(nb), lo_w(nb), hi_w(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    std::size_t j1 = (j + 1) % nb;
    lo_u[j] = std::min(bu[j], bu[j1]);
    hi_u[j] = std::max(bu[j], bu[j1]);
    lo_w[j] = std::min(bw[j], bw[j1]);
    hi_w[j] = std::max(bw[j], bw[j1]);
  }
  CrossingDiagram out;
  out.direction = v;
  for (std::size_t i = 0; i < na; ++i) {
    std::size_t i1 = (i + 1) % na;
    double alu = std::min(au[i], au[i1]), ahu = std::max(au[i], au[i1]);
    double alw = std::min(aw[i], aw[i1]), ahw = std::max(aw[i], aw[i1]);
    std::size_t j0 = self ? i + 2 : 0;
    for (std::size_t j = j0; j < nb; ++j) {
      if (self && i == 0 && j == nb - 1) continue;
      if (hi_u[j] < alu || lo_u[j] > ahu || hi_w[j] < alw || lo_w[j] > ahw) continue;
      std::size_t j1 = (j + 1) % nb;
      double d1u = au[i1] - au[i], d1w = aw[i1] - aw[i];
      double d2u = bu[j1] - bu[j], d2w = bw[j1] - bw[j];
      double den = d1u * d2w - d1w * d2u;
      double wu = bu[j] - au[i], ww = bw[j] - aw[i];
      if (den == 0) continue;
      double s = (wu * d2w - ww * d2u) / den;
      double r = (wu * d1w - ww * d1u) / den;
      if (s < 0 || s >= 1 || r < 0 || r >= 1) continue;
      double sine = std::abs(den) / (std::hypot(d1u, d1w) * std::hypot(d2u, d2w));
      if (sine < opt.min_angle) throw NotGenericError("flat crossing in projection");
      Vec3 Da = a.x[i1] - a.x[i], Db = b.x[j1] - b.x[j];
      Vec3 Pa = a.x[i] + s * Da, Pb = b.x[j] + r * Db;
      double hd = (Pa - Pb).dot(v);
      if (std::abs(hd) < opt.min_distance) throw DomainError("strands meet");
      double trip = v.dot(Da.cross(Db));
      int sign = (hd * trip > 0) ? 1 : -1;
      double ta = a.param(i) + s * a.period / static_cast<double>(na);
      double tb = b.param(j) + r * b.period / static_cast<double>(nb);
      out.crossings.push_back({ta, tb, sign});
    }
  }
  return out;
}

double min_curvature_scale(const SpatialKnot& k, double& kmax) {
  double kmin = std::numeric_limits<double>::infinity();
  kmax = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double s = k.d1[i].norm();
    double kap = k.d1[i].cross(k.d2[i]).norm() / (s * s * s);
    kmin = std::min(kmin, kap);
    kmax = std::max(kmax, kap);
  }
  return kmin;
}

double diameter(const SpatialKnot& k) {
  Vec3 lo = k.x[0], hi = k.x[0];
  for (const Vec3& p : k.x) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

}  // namespace

SpatialKnot sample_knot(const std::function<Vec3(double)>& f, double period, int n) {
  if (n < 8) throw UsageError("sample_knot: need at least 8 samples");
  SpatialKnot k;
  k.period = period;
  double h = 1e-3 * period / (2 * kPi);
  for (int i = 0; i < n; ++i) {
    double t = period * i / n;
    Vec3 f0 = f(t), p1 = f(t + h), m1 = f(t - h), p2 = f(t + 2 * h), m2 = f(t - 2 * h);
    k.x.push_back(f0);
    k.d1.push_back((-p2 + 8 * p1 - 8 * m1 + m2) / (12 * h));
    k.d2.push_back((-p2 + 16 * p1 - 30 * f0 + 16 * m1 - m2) / (12 * h * h));
  }
  return k;
}

SpatialKnot knot_from_samples(std::vector<Vec3> x, double period) {
  const std::size_t n = x.size();
  if (n < 8) throw UsageError("knot_from_samples: need at least 8 samples");
  static const double c1[] = {0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
  static const double c2[] = {-49.0 / 18, 3.0 / 2, -3.0 / 20, 1.0 / 90};
  double h = period / static_cast<double>(n);
  SpatialKnot k;
  k.period = period;
  for (std::size_t i = 0; i < n; ++i) {
    Vec3 a = Vec3::Zero(), b = c2[0] * x[i];
    for (std::size_t r = 1; r <= 3; ++r) {
      const Vec3& p = x[(i + r) % n];
      const Vec3& m = x[(i + n - r) % n];
      a += c1[r] * (p - m);
      b += c2[r] * (p + m);
    }
    k.d1.push_back(a / h);
    k.d2.push_back(b / (h * h));
  }
  k.x = std::move(x);
  return k;
}

CrossingDiagram crossing_diagram(const SpatialKnot& a, const SpatialKnot& b, const Vec3& dir, const LinkOptions& opt) {
  return crossings_impl(a, b, dir, opt, false);
}

CrossingDiagram self_crossings(const SpatialKnot& k, const Vec3& dir, const LinkOptions& opt) {
  return crossings_impl(k, k, dir, opt, true);
}

double gauss_linking(const SpatialKnot& a, const SpatialKnot& b, KernelMode m) {
  auto sum = [&](std::size_t stride) {
    Soa3 am, ad, bm, bd;
    chords(a, stride, am, ad);
    chords(b, stride, bm, bd);
    return gauss_sum(am, ad, bm, bd, m) / (4 * kPi);
  };
  double full = sum(1);
  if (a.size() % 2 || b.size() % 2) return full;
  return (4 * full - sum(2)) / 3;
}

double min_distance(const SpatialKnot& a, const SpatialKnot& b, KernelMode m) {
  Soa3 bs = to_soa(b.x);
  double best = std::numeric_limits<double>::infinity();
  for (const Vec3& p : a.x) {
    double q[3] = {p(0), p(1), p(2)};
    best = std::min(best, min_dist2(q, bs, 0, bs.size(), m));
  }
  return std::sqrt(best);
}

double min_self_distance(const SpatialKnot& k, std::size_t window, KernelMode m) {
  const std::size_t n = k.size();
  Soa3 s = to_soa(k.x);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j0 = i + window + 1, j1 = std::min(n, i + n - window);
    if (j0 >= j1) continue;
    double q[3] = {k.x[i](0), k.x[i](1), k.x[i](2)};
    best = std::min(best, min_dist2(q, s, j0, j1, m));
  }
  return std::sqrt(best);
}

LinkResult link(const SpatialKnot& a, const SpatialKnot& b, const LinkOptions& opt) {
  if (min_distance(a, b, opt.kernel) < opt.min_distance) throw DomainError("link: the knots intersect");
  std::mt19937_64 rng(opt.seed);
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    Vec3 dir = random_direction(rng);
    CrossingDiagram d;
    try {
      d = crossing_diagram(a, b, dir, opt);
    } catch (const NotGenericError&) {
      continue;
    }
    int sum = 0;
    for (const Crossing& c : d.crossings) sum += c.sign;
    if (sum % 2) continue;
    LinkResult r{sum / 2, std::numeric_limits<double>::quiet_NaN(), std::move(d)};
    if (opt.gauss_guard >= 0) {
      r.gauss = gauss_linking(a, b, opt.kernel);
      if (std::abs(r.gauss - r.lk) > opt.gauss_guard)
        throw NumericError("link: crossing count " + std::to_string(r.lk) + " disagrees with Gauss integral " +
                           std::to_string(r.gauss));
    }
    return r;
  }
  throw NumericError("link: no generic projection found");
}

int writhe(const SpatialKnot& k, const Vec3& v, const LinkOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  Vec3 dir = v.normalized();
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    try {
      int sum = 0;
      for (const Crossing& c : self_crossings(k, dir, opt).crossings) sum += c.sign;
      return sum;
    } catch (const NotGenericError&) {
      dir = (v.normalized() + 1e-3 * random_direction(rng)).normalized();
    }
  }
  throw NumericError("writhe: projection stays non-generic");
}

std::vector<Vec3> frenet_normal(const SpatialKnot& k) {
  double kmax;
  if (min_curvature_scale(k, kmax) * diameter(k) < 1e-6) throw DomainError("knot has an inflection point");
  std::vector<Vec3> N;
  for (std::size_t i = 0; i < k.size(); ++i) {
    Vec3 T = k.d1[i].normalized();
    N.push_back((k.d2[i] - k.d2[i].dot(T) * T).normalized());
  }
  return N;
}

std::vector<Vec3> frenet_binormal(const SpatialKnot& k) {
  std::vector<Vec3> N = frenet_normal(k), B;
  for (std::size_t i = 0; i < k.size(); ++i) B.push_back(k.d1[i].normalized().cross(N[i]));
  return B;
}

SpatialKnot push_off(const SpatialKnot& k, const std::vector<Vec3>& X, double eta) {
  if (X.size() != k.size()) throw UsageError("push_off: field and knot sizes differ");
  std::vector<Vec3> y;
  for (std::size_t i = 0; i < k.size(); ++i) {
    Vec3 T = k.d1[i].normalized();
    Vec3 n = X[i] - X[i].dot(T) * T;
    if (n.norm() < 1e-9 * (1 + X[i].norm())) throw DomainError("push_off: field is tangent to the knot");
    y.push_back(k.x[i] + eta * n.normalized());
  }
  return knot_from_samples(std::move(y), k.period);
}

double push_off_scale(const SpatialKnot& k, const std::vector<Vec3>&) {
  const std::size_t n = k.size();
  double kmax = 0;
  min_curvature_scale(k, kmax);
  double hmax = 0, len = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double h = (k.x[(i + 1) % n] - k.x[i]).norm();
    hmax = std::max(hmax, h);
    len += h;
  }
  double bend = kmax > 0 ? 1 / kmax : len;
  std::size_t window = static_cast<std::size_t>(std::ceil(1.6 * bend / (len / static_cast<double>(n))));
  window = std::min(window, n / 4);
  double reach = std::min(bend, 0.5 * min_self_distance(k, window));
  double eta = 0.25 * reach;
  if (hmax * hmax * kmax / 8 > eta / 10) throw NumericError("push-off: knot is undersampled for its reach");
  return eta;
}

int linking_of_field(const SpatialKnot& k, const std::vector<Vec3>& X, double eta, const LinkOptions& opt) {
  if (eta <= 0) eta = push_off_scale(k, X);
  LinkOptions o = opt;
  o.min_angle = std::min(opt.min_angle, 1e-7);
  o.min_distance = std::min(opt.min_distance, 0.1 * eta);
  return link(k, push_off(k, X, eta), o).lk;
}

int self_linking(const SpatialKnot& k, const LinkOptions& opt) { return linking_of_field(k, frenet_normal(k), 0, opt); }

int rotation_number(const SpatialKnot& k, const std::vector<Vec3>& X) {
  const std::size_t n = k.size();
  if (X.size() != n) throw UsageError("rotation_number: field and knot sizes differ");
  auto angle = [&](std::size_t i) {
    Vec3 sb = k.d1[i].cross(k.d2[i]);
    Vec3 sn = -k.d1[i].cross(sb);
    if (sb.norm() < 1e-12 * std::pow(k.d1[i].norm(), 3)) throw DomainError("rotation_number: inflection point");
    double x = X[i].dot(sn.normalized()), y = X[i].dot(sb.normalized());
    if (std::hypot(x, y) < 1e-9 * (1 + X[i].norm())) throw DomainError("rotation_number: field is tangent");
    return std::atan2(y, x);
  };
  double total = 0, first = angle(0), prev = first;
  for (std::size_t i = 1; i <= n; ++i) {
    double cur = i < n ? angle(i) : first;
    double d = cur - prev;
    d -= 2 * kPi * std::round(d / (2 * kPi));
    total += d;
    prev = cur;
  }
  double w = total / (2 * kPi);
  long r = std::lround(w);
  if (std::abs(w - r) > 0.1) throw NumericError("rotation_number: degree not close to an integer");
  return static_cast<int>(r);
}

const char* torus_kind_name(TorusKind k) {
  switch (k) {
    case TorusKind::Standard: return "standard";
    case TorusKind::Starred: return "starred";
    case TorusKind::Check: return "check";
  }
  return "?";
}

TorusKind parse_torus_kind(const std::string& s) {
  for (TorusKind k : {TorusKind::Standard, TorusKind::Starred, TorusKind::Check})
    if (s == torus_kind_name(k)) return k;
  throw UsageError("unknown torus knot kind: " + s);
}

SpatialKnot torus_knot(TorusKind kind, int p, int q, int n) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1) throw DomainError("torus knot needs coprime positive p, q");
  if (kind != TorusKind::Check && q <= p) throw DomainError("torus knot needs q > p");
  double P = p, Q = q;
  std::function<Vec3(double)> f;
  if (kind == TorusKind::Check) {
    f = [=](double t) -> Vec3 {
      return Vec3(3 * std::sin(Q * t), 4 * std::sin(P * t), 3 * std::cos(Q * t)) / (4 * std::cos(P * t) - 5);
    };
  } else {
    double s = kind == TorusKind::Standard ? 2 : 4;
    f = [=](double u) {
      double r = 1 + std::cos(P * u) / s;
      return Vec3(r * std::cos(Q * u), r * std::sin(Q * u), -std::sin(P * u) / s);
    };
  }
  return sample_knot(f, 2 * kPi, n);
}

std::vector<Vec4> contact_torus_knot(double A, int p, int q, int n) {
  std::vector<Vec4> y;
  double s = 1 + A * A;
  for (int i = 0; i < n; ++i) {
    double u = 2 * kPi * i / n;
    y.emplace_back(-2 * A * std::sin(q * u) / s, (1 - A * A) * std::sin(p * u) / s, 2 * A * std::cos(q * u) / s,
                   (A * A - 1) * std::cos(p * u) / s);
  }
  return y;
}

Vec3 stereographic(const Vec4& y, double tol) {
  if ((y - Vec4(0, 0, 0, 1)).norm() < tol) throw DomainError("stereographic: point at the pole");
  return Vec3(y(0), y(1), -y(2)) / (1 - y(3));
}

Vec3 stereographic_push(const Vec4& y, const Vec4& v) {
  double d = 1 - y(3);
  return Vec3(v(0), v(1), -v(2)) / d + Vec3(y(0), y(1), -y(2)) * (v(3) / (d * d));
}

SpatialKnot stereographic(const std::vector<Vec4>& y, double period) {
  std::vector<Vec3> x;
  x.reserve(y.size());
  for (const Vec4& p : y) x.push_back(stereographic(p));
  return knot_from_samples(std::move(x), period);
}

Mat4 u2_rotation(double theta, double phi, double psi) {
  using C = std::complex<double>;
  const C i(0, 1);
  Eigen::Matrix2cd U;
  U << std::cos(theta) * std::exp(i * phi), -std::sin(theta), std::sin(theta), std::cos(theta) * std::exp(-i * phi);
  U *= std::exp(i * psi);
  Mat4 R;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      double re = U(r, c).real(), im = U(r, c).imag();
      R(r, c) = re;
      R(r, c + 2) = -im;
      R(r + 2, c) = im;
      R(r + 2, c + 2) = re;
    }
  return R;
}

std::pair<Mat4, double> pole_avoiding_rotation(const std::vector<const std::vector<Vec4>*>& curves, unsigned seed,
                                               int tries) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0, 2 * kPi);
  Mat4 best = Mat4::Identity();
  double best_margin = -1;
  for (int t = 0; t < tries; ++t) {
    Mat4 R = t == 0 ? Mat4::Identity() : u2_rotation(U(rng), U(rng), U(rng));
    double margin = 2;
    for (const auto* c : curves)
      for (const Vec4& y : *c) margin = std::min(margin, 1 - R.row(3).dot(y));
    if (margin > best_margin) {
      best_margin = margin;
      best = R;
    }
  }
  return {best, best_margin};
}

Bennequin bennequin(const std::vector<Vec4>& y, double eta, const LinkOptions& opt) {
  const double period = 2 * kPi;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Vec4 v = y[(i + 1) % y.size()] - y[(i + y.size() - 1) % y.size()];
    v -= v.dot(y[i]) * y[i];
    if (contact_eval(y[i], v, 1e-6) == 0) throw DomainError("bennequin: knot is not transverse");
  }
  if (eta <= 0) {
    // ten chords, capped by a quarter of the distance between strands
    const std::size_t n = y.size(), window = std::max<std::size_t>(n / 100, 2);
    double hmax = 0, dmin = 2;
    for (std::size_t i = 0; i < n; ++i) hmax = std::max(hmax, (y[(i + 1) % n] - y[i]).norm());
    for (std::size_t i = 0; i < n; i += 3)
      for (std::size_t j = i + window + 1; j + window < i + n && j < n; ++j) dmin = std::min(dmin, (y[i] - y[j]).norm());
    eta = std::min(std::max(0.01, 10 * hmax), 0.25 * dmin);
  }
  std::vector<Vec4> p1, p2;
  for (const Vec4& p : y) {
    p1.push_back((p + eta * contact_E1(p)).normalized());
    p2.push_back((p + eta * contact_E2(p)).normalized());
  }
  auto [R, margin] = pole_avoiding_rotation({&y, &p1, &p2}, opt.seed);
  if (margin < 1e-3) throw NumericError("bennequin: cannot keep the knot away from the pole");
  auto rotate = [&R](const std::vector<Vec4>& c) {
    std::vector<Vec4> out;
    for (const Vec4& p : c) out.push_back(R * p);
    return out;
  };
  SpatialKnot k = stereographic(rotate(y), period);
  LinkOptions o = opt;
  o.min_angle = std::min(opt.min_angle, 1e-7);
  o.min_distance = std::min(opt.min_distance, 1e-2 * eta);
  Bennequin b{link(k, stereographic(rotate(p1), period), o).lk, link(k, stereographic(rotate(p2), period), o).lk,
              margin};
  if (b.e1 != b.e2) throw ConsistencyError("bennequin: the two contact push-offs disagree");
  return b;
}

bool DirectrixReport::agrees() const {
  return maslov == predicted.maslov && spin == predicted.spin && p == predicted.p && q == predicted.q &&
         lk == predicted.lk && b_gamma == predicted.b && b_star == predicted.b && simple;
}

DirectrixReport directrix_invariants(double a, int m, int n, int samples, const LinkOptions& opt) {
  if (!(a > 0 && a < 1) || m <= 0 || n <= m || std::gcd(m, n) != 1)
    throw DomainError("directrix_invariants: need 0 < a < 1 and coprime 0 < m < n");
  DirectrixReport r;
  r.a = a;
  r.m = m;
  r.n = n;
  Rational pq(n - m, n + m);
  r.predicted = {static_cast<int>(pq.num), static_cast<int>(pq.den), static_cast<int>(pq.num * pq.den),
                 static_cast<int>(pq.num * pq.den - pq.num - pq.den), n, 0.5};

  std::tie(r.k, r.h) = curvatures_from_params(HClass::C2i, a, double(m) / n);
  TimelikeCurve g = parametrize_closed_c2i(a, Rational(m, n));
  double T = 2 * kPi * n;
  r.maslov = maslov_index(g, 0, T);
  r.spin = symplectic_spin(g, 0, T);
  r.ell = curvature_profile(g, 0, T, 3).u.back();
  r.directrix_period = r.ell / r.spin;

  Mat4 X0 = lift_frame(canonical_frame(g, 0).M);
  double k = r.k, h = r.h;
  DirectrixPath dp = directrices([k](double) { return k; }, [h](double) { return h; }, X0, r.directrix_period,
                                 samples + 1);
  r.closure_gap = std::max((dp.gamma.x.back() - dp.gamma.x.front()).norm(),
                           (dp.gamma_star.x.back() - dp.gamma_star.x.front()).norm());
  if (r.closure_gap > 1e-6) throw ConsistencyError("directrices do not close after the expected period");
  r.gamma.assign(dp.gamma.x.begin(), dp.gamma.x.end() - 1);
  r.gamma_star.assign(dp.gamma_star.x.begin(), dp.gamma_star.x.end() - 1);

  // core circles of the two invariant planes of the lifted Frenet matrix
  Eigen::EigenSolver<Mat4> es(lifted_frenet(k, h));
  std::vector<std::vector<Vec4>> cores;
  for (int i = 0; i < 4; ++i) {
    if (es.eigenvalues()(i).imag() <= 0) continue;
    Eigen::Vector4cd v = es.eigenvectors().col(i);
    std::vector<Vec4> c;
    for (int s = 0; s < 2000; ++s) {
      double th = 2 * kPi * s / 2000;
      Vec4 w = X0 * (std::cos(th) * v.real() + std::sin(th) * v.imag());
      c.push_back(w.normalized());
    }
    cores.push_back(std::move(c));
  }
  if (cores.size() != 2) throw NumericError("lifted Frenet matrix is not elliptic");

  auto [R, margin] = pole_avoiding_rotation({&r.gamma, &r.gamma_star, &cores[0], &cores[1]}, opt.seed);
  r.pole_margin = margin;
  auto image = [&R](const std::vector<Vec4>& c) {
    std::vector<Vec4> out;
    for (const Vec4& p : c) out.push_back(R * p);
    return stereographic(out, 2 * kPi);
  };
  SpatialKnot G = image(r.gamma), Gs = image(r.gamma_star);
  std::size_t window = static_cast<std::size_t>(samples / 100);
  r.min_gap = std::min(min_self_distance(G, window, opt.kernel), min_self_distance(Gs, window, opt.kernel));
  r.simple = r.min_gap > opt.min_distance;
  LinkResult lk = link(G, Gs, opt);
  r.lk = lk.lk;
  r.lk_gauss = lk.gauss;
  int w1 = std::abs(linking_number(G, image(cores[0]), opt));
  int w2 = std::abs(linking_number(G, image(cores[1]), opt));
  r.p = std::min(w1, w2);
  r.q = std::max(w1, w2);
  r.b_gamma = bennequin(r.gamma, 0, opt).e1;
  r.b_star = bennequin(r.gamma_star, 0, opt).e1;
  return r;
}

void write_knot_csv(const std::string& path, const SpatialKnot& k) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out.precision(17);
  out << "t,x,y,z\n";
  for (std::size_t i = 0; i < k.size(); ++i)
    out << k.param(i) << ',' << k.x[i](0) << ',' << k.x[i](1) << ',' << k.x[i](2) << '\n';
}

SpatialKnot read_knot_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::string line;
  std::getline(in, line);
  std::vector<double> t;
  std::vector<Vec3> x;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    double v[4];
    char comma;
    if (!(ss >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3])) throw UsageError("bad knot row: " + line);
    t.push_back(v[0]);
    x.emplace_back(v[1], v[2], v[3]);
  }
  if (x.size() < 8) throw UsageError("knot file has fewer than 8 samples");
  // uniform samples assumed; the period extends the last step
  double step = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  return knot_from_samples(std::move(x), step * static_cast<double>(t.size()));
}

}  // namespace ein
