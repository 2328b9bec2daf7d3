#include "ein/curves.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace ein {

Vec5 jet_value(const Jet5& v) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = v[i].c[0];
  return r;
}

Vec5 jet_deriv(const Jet5& v, int k) {
  Vec5 r;
  for (int i = 0; i < 5; ++i) r[i] = v[i].deriv(k);
  return r;
}

Jet jet_product(const Jet5& a, const Jet5& b, BasisKind k) {
  const Mat5& g = gram(k);
  Jet r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (g(i, j) != 0) r += g(i, j) * (a[i] * b[j]);
  return r;
}

Jet5 jet_derivative(const Jet5& v) {
  Jet5 r;
  for (int i = 0; i < 5; ++i) r[i] = derivative(v[i]);
  return r;
}

Jet5 jet_apply(const Mat5& A, const Jet5& v) {
  Jet5 r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      if (A(i, j) != 0) r[i] += A(i, j) * v[j];
  return r;
}

Jet5 TimelikeCurve::section(const Jet& t) const {
  Jet5 g = eval(t);
  Jet s = sqrt(g[0] * g[0] + g[1] * g[1]);
  Jet is = inv(s);
  for (auto& x : g) x = x * is;
  return g;
}

EinsteinPoint TimelikeCurve::point(double t) const {
  return ray_normalize(jet_value(eval(Jet(t))), 1e-6);
}

TimelikeCurve make_curve(CurveEval f, double t0, double t1) {
  TimelikeCurve c;
  c.eval = std::move(f);
  c.t0 = t0;
  c.t1 = t1;
  return c;
}

TimelikeCurve make_periodic_curve(CurveEval f, double period) {
  TimelikeCurve c = make_curve(std::move(f), 0.0, period);
  c.periodic = true;
  c.period = period;
  return c;
}

namespace {
constexpr double kSampledChord = 0.02;

struct Samples {
  std::vector<double> t;
  std::vector<Vec5> x;
  bool periodic;
  double period;
  double chord_target;
};

Jet5 lagrange_eval(const Samples& s, const Jet& T) {
  constexpr int W = 9;
  const int n = static_cast<int>(s.t.size());
  double tv = T.value();
  double shift = 0;
  if (s.periodic) {
    double k = std::floor((tv - s.t.front()) / s.period);
    shift = k * s.period;
    tv -= shift;
  }
  int i = static_cast<int>(std::lower_bound(s.t.begin(), s.t.end(), tv) - s.t.begin());
  if (i > 0 && (i == n || tv - s.t[i - 1] < s.t[i] - tv)) --i;
  // Stride through dense data: the fifth derivatives amplify roundoff like
  // eps / step^5, so keep the stencil chord near its optimum.
  int i1 = std::min(i + 1, n - 1), i0 = i1 - 1;
  double chord = (s.x[i1].normalized() - s.x[i0].normalized()).norm();
  int stride = chord > 0 ? static_cast<int>(std::lround(s.chord_target / chord)) : 1;
  stride = std::clamp(stride, 1, std::max(1, (n - 1) / (W - 1)));
  int lo = i - (W / 2) * stride;
  if (!s.periodic) lo = std::clamp(lo, 0, n - 1 - (W - 1) * stride);
  std::array<double, W> tn;
  std::array<Vec5, W> xn;
  for (int j = 0; j < W; ++j) {
    int idx = lo + j * stride;
    double off = 0;
    if (s.periodic) {
      while (idx < 0) { idx += n; off -= s.period; }
      while (idx >= n) { idx -= n; off += s.period; }
    }
    tn[j] = s.t[idx] + off + shift;
    xn[j] = s.x[idx];
  }
  Jet5 r;
  for (int j = 0; j < W; ++j) {
    Jet l(1.0);
    for (int m = 0; m < W; ++m)
      if (m != j) l = l * ((T - tn[m]) / (tn[j] - tn[m]));
    for (int c = 0; c < 5; ++c) r[c] += xn[j][c] * l;
  }
  return r;
}

}  // namespace

TimelikeCurve sampled_curve(std::vector<double> t, std::vector<Vec5> x, bool periodic) {
  if (t.size() != x.size() || t.size() < 9) throw UsageError("sampled curve needs at least 9 samples");
  for (size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw UsageError("sampled curve: parameter must be increasing");
  auto s = std::make_shared<Samples>();
  s->periodic = periodic;
  s->chord_target = kSampledChord;
  s->period = periodic ? t.back() - t.front() + (t[1] - t[0]) : 0.0;
  s->t = std::move(t);
  s->x = std::move(x);
  TimelikeCurve c;
  c.eval = [s](const Jet& T) { return lagrange_eval(*s, T); };
  c.t0 = s->t.front();
  c.t1 = periodic ? s->t.front() + s->period : s->t.back();
  c.periodic = periodic;
  c.period = s->period;
  c.mode = DerivMode::Sampled;
  return c;
}

TimelikeCurve read_curve_csv(const std::string& path, bool periodic) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  std::vector<double> t;
  std::vector<Vec5> x;
  while (std::getline(in, line)) {
    if (line.empty() || !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' ||
                          line[0] == '.' || line[0] == '+'))
      continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double tv;
    Vec5 v;
    if (!(ss >> tv >> v[0] >> v[1] >> v[2] >> v[3] >> v[4])) throw UsageError("bad CSV row: " + line);
    t.push_back(tv);
    x.push_back(v);
  }
  // a closing row repeating the first point
  if (periodic && x.size() > 2 && (x.back() - x.front()).cwiseAbs().maxCoeff() < 1e-10) {
    t.pop_back();
    x.pop_back();
  }
  return sampled_curve(std::move(t), std::move(x), periodic);
}

void write_curve_csv(const std::string& path, const std::vector<double>& t,
                     const std::vector<Vec5>& x) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out.precision(17);
  out << "t,x0,x1,x2,x3,x4\n";
  for (size_t i = 0; i < t.size(); ++i) {
    out << t[i];
    for (int c = 0; c < 5; ++c) out << ',' << x[i][c];
    out << '\n';
  }
}

TimelikeCurve transform_curve(const TimelikeCurve& g, const Mat5& F,
                              std::function<Jet(const Jet&)> f, double s0, double s1) {
  auto ev = g.eval;
  return make_curve([ev, F, f](const Jet& s) { return jet_apply(F, ev(f(s))); }, s0, s1);
}

std::pair<Eigen::Vector2d, Vec3> split_components(const TimelikeCurve& g, double t) {
  Vec5 x = g.point(t).x;
  return {x.head<2>(), x.tail<3>()};
}

namespace {

Jet det3(const Jet a[3][3]) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

}  // namespace

Jet strain4_jet(const Jet5& g0) {
  const auto P = BasisKind::Poincare;
  Jet5 g1 = jet_derivative(g0), g2 = jet_derivative(g1), g3 = jet_derivative(g2);
  const Jet5* B[3] = {&g0, &g1, &g2};
  Jet G[3][3], rhs[3];
  double scale = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      G[i][j] = jet_product(*B[i], *B[j], P);
      scale = std::max(scale, std::abs(G[i][j].value()));
    }
    rhs[i] = jet_product(*B[i], g3, P);
  }
  Jet D = det3(G);
  if (std::abs(D.value()) < 1e-13 * scale * scale * scale)
    throw DegenerateError("osculating span is rank deficient");
  Jet iD = inv(D);
  Jet5 n = g3;
  for (int k = 0; k < 3; ++k) {
    Jet A[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) A[i][j] = (j == k) ? rhs[i] : G[i][j];
    Jet xk = det3(A) * iD;
    for (int c = 0; c < 5; ++c) n[c] -= xk * (*B[k])[c];
  }
  return jet_product(n, n, P) / (-G[1][1]);
}

Jet strain_jet(const Jet5& section) {
  Jet q = strain4_jet(section);
  if (!(q.value() > 1e-24)) throw NotGenericError("conformal vertex: strain density vanishes");
  return pow(q, 0.25);
}

double strain_density(const TimelikeCurve& g, double t) {
  double q = strain4_jet(g.section(t)).value();
  return std::pow(std::max(q, 0.0), 0.25);
}

double total_strain(const TimelikeCurve& g, double t0, double t1) {
  using boost::math::quadrature::gauss_kronrod;
  auto f = [&](double t) { return strain_density(g, t); };
  return gauss_kronrod<double, 31>::integrate(f, t0, t1, 12, 1e-13);
}

StrainProfile strain_profile(const TimelikeCurve& g, double t0, double t1, int n) {
  using boost::math::quadrature::gauss;
  StrainProfile p;
  auto f = [&](double t) { return strain_density(g, t); };
  double acc = 0;
  for (int i = 0; i < n; ++i) {
    double t = t0 + (t1 - t0) * i / (n - 1);
    if (i > 0) acc += gauss<double, 20>::integrate(f, p.t.back(), t);
    p.t.push_back(t);
    p.upsilon.push_back(f(t));
    p.u.push_back(acc);
  }
  return p;
}

OsculatingSpace osculating_space(const TimelikeCurve& g, double t) {
  Jet5 s = g.section(t);
  Eigen::Matrix<double, 5, 3> B;
  B.col(0) = jet_deriv(s, 0);
  B.col(1) = jet_deriv(s, 1);
  B.col(2) = jet_deriv(s, 2);
  const Mat5& Gp = gram(BasisKind::Poincare);
  Eigen::Matrix3d G = B.transpose() * Gp * B;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(G);
  Eigen::Vector3d ev = es.eigenvalues();  // ascending
  double sc = ev.cwiseAbs().maxCoeff();
  if (ev.cwiseAbs().minCoeff() < 1e-12 * sc || !(ev[1] < 0 && ev[2] > 0))
    throw DegenerateError("osculating space: span is degenerate or has the wrong signature");
  OsculatingSpace o;
  for (int k = 0; k < 3; ++k) o.basis.col(k) = B * es.eigenvectors().col(k) / std::sqrt(std::abs(ev[k]));
  o.normal_projector = Mat5::Identity() - B * G.inverse() * B.transpose() * Gp;
  return o;
}

VertexReport find_vertices(const TimelikeCurve& g, double t0, double t1, int n) {
  VertexReport rep;
  std::vector<double> ts(n), q(n), dq(n);
  double qmax = 0;
  for (int i = 0; i < n; ++i) {
    ts[i] = t0 + (t1 - t0) * i / (n - 1);
    Jet j = strain4_jet(g.section(ts[i]));
    q[i] = j.value();
    dq[i] = j.c[1];
    qmax = std::max(qmax, q[i]);
  }
  if (std::pow(std::max(qmax, 0.0), 0.25) < 1e-10) {
    rep.cycle = true;
    return rep;
  }
  auto dQ = [&](double t) { return strain4_jet(g.section(t)).c[1]; };
  for (int i = 0; i + 1 < n; ++i) {
    double a = ts[i], b = ts[i + 1];
    double fa = dq[i], fb = dq[i + 1];
    double root;
    if (fa == 0) {
      root = a;
    } else if (fa < 0 && fb > 0) {
      std::uintmax_t it = 200;
      auto r = boost::math::tools::toms748_solve(dQ, a, b, fa, fb,
                                                 boost::math::tools::eps_tolerance<double>(52), it);
      root = 0.5 * (r.first + r.second);
    } else {
      continue;
    }
    double qr = strain4_jet(g.section(root)).value();
    if (qr < 1e-10 * qmax) {
      if (rep.vertices.empty() || std::abs(rep.vertices.back() - root) > 1e-9) rep.vertices.push_back(root);
    }
  }
  return rep;
}

int maslov_index(const TimelikeCurve& g, double t0, double span, int samples) {
  Vec5 a = g.point(t0).x, b = g.point(t0 + span).x;
  if ((a - b).norm() > 1e-6) throw UsageError("maslov_index: curve does not close over the given span");
  double acc = 0, prev = std::atan2(a[1], a[0]);
  for (int i = 1; i <= samples; ++i) {
    Vec5 x = g.point(t0 + span * i / samples).x;
    double ang = std::atan2(x[1], x[0]);
    double d = ang - prev;
    d -= 2 * std::numbers::pi * std::round(d / (2 * std::numbers::pi));
    acc += d;
    prev = ang;
  }
  double w = acc / (2 * std::numbers::pi);
  long r = std::lround(w);
  if (std::abs(w - r) > 0.1) throw NumericError("maslov_index: winding not close to an integer");
  return static_cast<int>(r);
}

namespace {

// series reversion of s = U(delta) with U(0) = 0
Jet revert(const Jet& U) {
  Jet S = Jet::var(0.0);
  Jet d = S / U.c[1];
  for (int it = 0; it < Jet::N + 2; ++it) d += (S - compose(U, d)) / U.c[1];
  return d;
}

}  // namespace

Jet5 conformal_jet(const TimelikeCurve& g, double t) {
  Jet ups = strain_jet(g.section(Jet::var(t)));
  Jet d = revert(integral(ups));
  return g.section(t + d);
}

StrainReparam reparametrize_by_strain(const TimelikeCurve& g, double t_ref) {
  using boost::math::quadrature::gauss;
  struct Table {
    TimelikeCurve g;
    std::vector<double> t, u;
    double total, t_ref, u_ref;
    bool periodic;
    double span;
  };
  auto tb = std::make_shared<Table>();
  tb->g = g;
  tb->periodic = g.periodic;
  const double a = g.t0;
  const double b = g.periodic ? g.t0 + g.period : g.t1;
  tb->span = b - a;
  const int n = 512;
  auto f = [gg = g](double t) { return strain_density(gg, t); };
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    double t = a + (b - a) * i / n;
    if (i > 0) {
      double seg = gauss<double, 20>::integrate(f, tb->t.back(), t);
      if (!(seg > 0)) throw NotGenericError("reparametrize_by_strain: vanishing strain on the domain");
      acc += seg;
    }
    tb->t.push_back(t);
    tb->u.push_back(acc);
  }
  tb->total = acc;
  tb->t_ref = t_ref;
  auto u_raw = [tb, f](double t) {
    double k = 0;
    if (tb->periodic) {
      k = std::floor((t - tb->t.front()) / tb->span);
      t -= k * tb->span;
    }
    size_t i = std::min<size_t>(std::upper_bound(tb->t.begin(), tb->t.end(), t) - tb->t.begin(),
                                tb->t.size() - 1);
    if (i > 0) --i;
    return k * tb->total + tb->u[i] + gauss<double, 20>::integrate(f, tb->t[i], t);
  };
  tb->u_ref = u_raw(t_ref);
  auto u_of_t = [tb, u_raw](double t) { return u_raw(t) - tb->u_ref; };
  auto t_of_u = [tb, u_raw, f](double u) {
    double uu = u + tb->u_ref;
    double k = 0;
    if (tb->periodic) {
      k = std::floor(uu / tb->total);
      uu -= k * tb->total;
    }
    size_t i = std::upper_bound(tb->u.begin(), tb->u.end(), uu) - tb->u.begin();
    i = std::clamp<size_t>(i, 1, tb->u.size() - 1);
    double lo = tb->t[i - 1], hi = tb->t[i];
    double t = lo + (hi - lo) * (uu - tb->u[i - 1]) / (tb->u[i] - tb->u[i - 1]);
    double target = uu + k * tb->total;
    t += k * tb->span;
    for (int it = 0; it < 30; ++it) {
      double r = u_raw(t) - target;
      double dt = r / f(t);
      t -= dt;
      if (std::abs(dt) < 1e-15 * (1 + std::abs(t))) break;
    }
    return t;
  };
  StrainReparam R;
  R.t_ref = t_ref;
  R.total = tb->total;
  R.u_of_t = u_of_t;
  R.t_of_u = t_of_u;
  TimelikeCurve c;
  c.eval = [tb, t_of_u](const Jet& U) {
    double ts = t_of_u(U.value());
    Jet ups = strain_jet(tb->g.section(Jet::var(ts)));
    Jet d = revert(integral(ups));
    return tb->g.section(ts + compose(d, U));
  };
  c.t0 = u_of_t(a);
  c.t1 = u_of_t(b);
  c.periodic = g.periodic;
  c.period = g.periodic ? tb->total : 0.0;
  c.mode = g.mode;
  R.curve = c;
  return R;
}

}  // namespace ein
