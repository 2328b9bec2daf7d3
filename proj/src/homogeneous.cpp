#include "ein/homogeneous.hpp"

#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <tuple>
#include <algorithm>
#include <vector>

namespace ein {

namespace {

constexpr double kPi = std::numbers::pi;

const char* kNames[] = {"C1", "C2i", "C2ii", "C3", "C4", "C5", "C6", "C7i", "C7ii", "C8", "C9"};

double sq(double x) { return x * x; }

}  // namespace

const char* class_name(HClass c) { return kNames[static_cast<int>(c)]; }

HClass parse_class(const std::string& s) {
  for (int i = 0; i < 11; ++i)
    if (s == kNames[i]) return static_cast<HClass>(i);
  throw UsageError("unknown class " + s);
}

bool is_regular(HClass c) { return static_cast<int>(c) <= static_cast<int>(HClass::C4); }

Classification classify(double k, double h, double tol) {
  if (k < 0) throw UsageError("classify: k must be non-negative");
  Classification r;
  if (k <= tol) {
    r.ads_wall = true;
    return r;
  }
  const double s = k * k - 2 * h;
  const double w = -1 / (2 * k * k);
  if (std::abs(k - 1) < tol && std::abs(h + 0.5) < tol) {
    r.cls = HClass::C9;
  } else if (std::abs(s + 2) < tol) {
    r.cls = HClass::C7i;
  } else if (std::abs(s - 2) < tol) {
    r.cls = k > 1 ? HClass::C7ii : HClass::C8;
  } else if (std::abs(h - w) < tol) {
    r.cls = k > 1 ? HClass::C5 : HClass::C6;
  } else if (s > -2 && s < 2) {
    r.cls = HClass::C1;
  } else if (s < -2) {
    r.cls = HClass::C2i;
  } else if (h < w) {
    r.cls = HClass::C4;
  } else {
    r.cls = k > 1 ? HClass::C2ii : HClass::C3;
  }
  return r;
}

Classification classify_signed(double k, double h, double tol) {
  Classification r = classify(std::abs(k), h, tol);
  r.flipped = k < 0;
  return r;
}

bool in_domain(HClass c, double a, double b) {
  switch (c) {
    case HClass::C1:
      return a > -1 && a < 1 && b > 0 && (1 + b + a * (b - 1)) * (b - 1 + a * (1 + b)) < 0;
    case HClass::C2i:
      return a > 0 && a < 1 && b > 0 && b < 1;
    case HClass::C2ii:
      return a > 0 && a < 1 && b > 1 && (1 - a * a) * b * b < 1;
    case HClass::C3:
      return a > 0.25 && b > 1 && 4 * a * (b * b - 1) - (b * b + 1) > 0;
    case HClass::C4:
      return a > 0 && a < 1 && b > 0 && a * a + (a * a - 1) * b * b > 0;
    case HClass::C5:
    case HClass::C7i:
      return b > 1;
    case HClass::C6:
    case HClass::C8:
      return b > 0 && b < 1;
    case HClass::C7ii:
      return b > 0;
    case HClass::C9:
      return true;
  }
  return false;
}

std::pair<double, double> curvatures_from_params(HClass c, double a, double b) {
  if (!in_domain(c, a, b)) throw DomainError(std::string("parameters outside the domain of ") + class_name(c));
  switch (c) {
    case HClass::C1: {
      double k = std::sqrt((1 + b * b) * (1 - a * a) / (2 * b * (1 + a * a)));
      double h = (1 - 6 * b * b + std::pow(b, 4) + 8 * a * b * (b * b - 1) -
                  a * a * (std::pow(b, 4) - 6 * b * b + 1)) /
                 (4 * b * (1 + a * a) * (1 + b * b));
      return {k, h};
    }
    case HClass::C2i: {
      double k = a * std::sqrt(b) / std::pow(sq(1 - b * b) * (1 - a * a), 0.25);
      double h = (1 - std::pow(b, 4) * (1 - a * a)) / (2 * b * (1 - b * b) * std::sqrt(1 - a * a));
      return {k, h};
    }
    case HClass::C2ii: {
      double k = a * std::sqrt(b) / std::pow(sq(b * b - 1) * (1 - a * a), 0.25);
      double h = (1 - std::pow(b, 4) * (1 - a * a)) / (2 * b * (b * b - 1) * std::sqrt(1 - a * a));
      return {k, h};
    }
    case HClass::C3: {
      double k = std::sqrt(2 * b) / std::pow(sq(b * b - 1) * (16 * a * a - 1), 0.25);
      double h = (4 * a + 1 - (4 * a - 1) * std::pow(b, 4)) / (2 * b * (b * b - 1) * std::sqrt(16 * a * a - 1));
      return {k, h};
    }
    case HClass::C4: {
      double k = std::sqrt(b) / std::pow(a * a * (1 - a * a) * sq(1 + b * b), 0.25);
      double h = (a * a * (std::pow(b, 4) - 1) - std::pow(b, 4)) / (2 * a * b * std::sqrt(1 - a * a) * (1 + b * b));
      return {k, h};
    }
    case HClass::C5:
    case HClass::C6:
      return {std::sqrt(b), -1 / (2 * b)};
    case HClass::C7i: {
      double k = std::sqrt(b * b - 1);
      return {k, (k * k + 2) / 2};
    }
    case HClass::C7ii: {
      double k = std::sqrt(1 + b * b);
      return {k, (k * k - 2) / 2};
    }
    case HClass::C8:
      return {std::sqrt(b), (b - 2) / 2};
    case HClass::C9:
      return {1.0, -0.5};
  }
  return {0, 0};
}

namespace {

// Grid coordinate on (0,1) -> parameter, dense near finite edges.
double edge_map(double lo, double hi, double s) {
  if (std::isinf(hi)) return lo + std::pow(10.0, -4 + 8 * s);
  if (lo == 0 && hi > 1) return std::pow(10.0, -4 + 8 * s);
  double w = 0.5 - 0.5 * std::cos(kPi * s);
  w = w * w * (3 - 2 * w);
  return lo + (hi - lo) * w;
}

struct Box {
  double a0, a1, b0, b1;
};

Box param_box(HClass c) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (c) {
    case HClass::C1: return {-1, 1, 0, inf};
    case HClass::C2i: return {0, 1, 0, 1};
    case HClass::C2ii: return {0, 1, 1, inf};
    case HClass::C3: return {0.25, inf, 1, inf};
    default: return {0, 1, 0, inf};
  }
}

double resid(HClass c, double a, double b, double k, double h) {
  auto [kk, hh] = curvatures_from_params(c, a, b);
  return std::hypot((kk - k) / (1 + std::abs(k)), (hh - h) / (1 + std::abs(h)));
}

}  // namespace

std::pair<double, double> params_from_curvatures(HClass c, double k, double h) {
  auto check = [&](double b) {
    if (!in_domain(c, 0, b)) throw DomainError("curvatures outside the class stratum");
    auto [kk, hh] = curvatures_from_params(c, 0, b);
    if (std::abs(kk - k) > 1e-8 * (1 + k) || std::abs(hh - h) > 1e-8 * (1 + std::abs(h)))
      throw DomainError("curvatures outside the class stratum");
    return std::pair<double, double>{0.0, b};
  };
  switch (c) {
    case HClass::C5:
    case HClass::C6:
    case HClass::C8:
      return check(k * k);
    case HClass::C7i:
      return check(std::sqrt(k * k + 1));
    case HClass::C7ii:
      return check(std::sqrt(std::max(k * k - 1, 0.0)));
    case HClass::C9:
      if (std::abs(k - 1) > 1e-8 || std::abs(h + 0.5) > 1e-8) throw DomainError("C9 is the single point (1,-1/2)");
      return {0.0, 0.0};
    default:
      break;
  }
  auto cl = classify(k, h);
  if (!cl.cls || *cl.cls != c) throw DomainError(std::string("curvatures are not in stratum ") + class_name(c));

  // coarse grid, then Newton from the best few cells
  Box bx = param_box(c);
  const int na = 200, nb = 200;
  std::vector<std::tuple<double, double, double>> cand;
  for (int i = 1; i < na; ++i) {
    double av = edge_map(bx.a0, bx.a1, double(i) / na);
    for (int j = 1; j < nb; ++j) {
      double bv = edge_map(bx.b0, bx.b1, double(j) / nb);
      if (!in_domain(c, av, bv)) continue;
      cand.emplace_back(resid(c, av, bv, k, h), av, bv);
    }
  }
  if (cand.empty()) throw NumericError("params_from_curvatures: no starting point");
  const std::size_t keep = std::min<std::size_t>(12, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + keep, cand.end());

  auto F = [&](double x, double y) {
    auto [kk, hh] = curvatures_from_params(c, x, y);
    return Eigen::Vector2d((kk - k) / (1 + std::abs(k)), (hh - h) / (1 + std::abs(h)));
  };
  double best = std::numeric_limits<double>::infinity(), a = 0, b = 0;
  for (std::size_t s = 0; s < keep && best > 1e-14; ++s) {
    auto [r0, x, y] = cand[s];
    Eigen::Vector2d f = F(x, y);
    for (int it = 0; it < 200 && f.norm() > 1e-15; ++it) {
      Eigen::Matrix2d Jm;
      double ha = 1e-7 * std::max(1e-3, std::abs(x)), hb = 1e-7 * std::max(1e-3, std::abs(y));
      auto diff = [&](double dx, double dy) {
        // one-sided differences when the centered stencil leaves the domain
        bool p = in_domain(c, x + dx, y + dy), m = in_domain(c, x - dx, y - dy);
        if (p && m) return Eigen::Vector2d((F(x + dx, y + dy) - F(x - dx, y - dy)) / 2);
        if (p) return Eigen::Vector2d(F(x + dx, y + dy) - F(x, y));
        return Eigen::Vector2d(F(x, y) - F(x - dx, y - dy));
      };
      Jm.col(0) = diff(ha, 0) / ha;
      Jm.col(1) = diff(0, hb) / hb;
      Eigen::Vector2d step = Jm.fullPivLu().solve(-f);
      if (!step.allFinite()) break;
      double lam = 1;
      bool moved = false;
      for (int ls = 0; ls < 50; ++ls, lam *= 0.5) {
        double x2 = x + lam * step[0], y2 = y + lam * step[1];
        if (!in_domain(c, x2, y2)) continue;
        Eigen::Vector2d fn = F(x2, y2);
        if (fn.norm() < f.norm()) {
          x = x2, y = y2, f = fn;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (f.norm() < best) best = f.norm(), a = x, b = y;
  }
  if (best > 1e-10)
    throw NumericError("params_from_curvatures: Newton did not converge, residual " + std::to_string(best) +
                       " at (a,b) = (" + std::to_string(a) + ", " + std::to_string(b) + ")");
  return {a, b};
}

namespace {

TimelikeCurve from_basis(BasisKind kind, std::function<Jet5(const Jet&)> f, double t0, double t1) {
  Mat5 T = basis_transition(BasisKind::Poincare, kind);
  return make_curve([T, f](const Jet& t) { return jet_apply(T, f(t)); }, t0, t1);
}

}  // namespace

TimelikeCurve parametrize(HClass c, double a, double b) {
  if (!in_domain(c, a, b)) throw DomainError(std::string("parameters outside the domain of ") + class_name(c));
  const auto L = BasisKind::Lie, M = BasisKind::Mobius, P = BasisKind::Poincare;
  switch (c) {
    case HClass::C1:
      return from_basis(L, [a, b](const Jet& t) {
        Jet ep = exp(b * (t - kPi / 4)), em = exp(-b * (t - kPi / 4));
        Jet s = sin(t), co = cos(t);
        return Jet5{ep * (co + a * s), -(em * (s + a * co)), Jet(-std::sqrt(2 * (1 - a * a))),
                    ep * (a * co - s), em * (co - a * s)};
      }, -6, 6);
    case HClass::C2i: {
      double r = std::sqrt(1 - a * a);
      return from_basis(P, [a, b, r](const Jet& t) {
        return Jet5{cos(t), sin(t), Jet(a), r * cos(b * t), -r * sin(b * t)};
      }, 0, 20 * kPi);
    }
    case HClass::C2ii: {
      double r = std::sqrt(1 - a * a);
      return from_basis(P, [a, b, r](const Jet& t) {
        return Jet5{cos(t), sin(t), Jet(-a), r * cos(b * t), r * sin(b * t)};
      }, 0, 20 * kPi);
    }
    case HClass::C3:
      // positively oriented variant: -1 on the L2 coefficient
      return from_basis(L, [a, b](const Jet& t) {
        return Jet5{(1 + 4 * a) / 4 * exp(t), exp(-b * t), Jet(-1.0), (1 - 4 * a) / 4 * exp(b * t), exp(-t)};
      }, -6, 6);
    case HClass::C4: {
      double r = std::sqrt(1 - a * a);
      return from_basis(P, [a, b, r](const Jet& t) {
        return Jet5{Jet(1.0), a * sinh(t), -a * cosh(t), r * cos(b * t), r * sin(b * t)};
      }, -6, 6);
    }
    case HClass::C5:
      return from_basis(M, [b](const Jet& t) {
        return Jet5{0.5 * (1 - b * b * t * t), b * t, cos(t), -sin(t), Jet(1.0)};
      }, -10, 10);
    case HClass::C6:
      // last coefficient forced to M4 by the null condition
      return from_basis(M, [b](const Jet& t) {
        return Jet5{0.5 * (1 + b * b * t * t), sinh(t), cosh(t), b * t, Jet(1.0)};
      }, -6, 6);
    case HClass::C7i:
      return from_basis(L, [b](const Jet& t) {
        Jet s = sin(t), co = cos(t);
        Jet x0 = ((b * b - 1) * co - t * s) / b, x1 = (t * co + (b * b - 1) * s) / b;
        return Jet5{x0, -x1, Jet(std::sqrt(2 * (b * b - 1) / b)), -s, co};
      }, -10, 10);
    case HClass::C7ii:
      return from_basis(L, [b](const Jet& t) {
        Jet s = sin(t), co = cos(t);
        return Jet5{(1 + b * b) * co + t * s, -b * s, Jet(-std::sqrt(2 * b * (1 + b * b))),
                    t * co - (1 + b * b) * s, b * co};
      }, -10, 10);
    case HClass::C8:
      return from_basis(L, [b](const Jet& t) {
        Jet e = exp(t), ei = exp(-t);
        double r = std::sqrt(1 - b);
        return Jet5{(b - t) * e, -r * e, Jet(2 * std::pow(b * b * (1 - b), 0.25)), -((b + t) * ei), r * ei};
      }, -6, 6);
    case HClass::C9:
      return from_basis(L, [](const Jet& t) {
        Jet t2 = t * t;
        return Jet5{(t2 * t2 + 6 * t2 - 3) / 24, t * (t2 + 3) / 6, (1 + t2) / 2, t, Jet(-1.0)};
      }, -10, 10);
  }
  throw UsageError("unknown class");
}

TimelikeCurve parametrize_closed_c2i(double a, Rational b) {
  TimelikeCurve g = parametrize(HClass::C2i, a, b.value());
  g.periodic = true;
  g.period = 2 * kPi * b.den;
  g.t0 = 0;
  g.t1 = g.period;
  return g;
}

OrbitCurvatures orbit_curvatures(const TimelikeCurve& g, double t) {
  const auto Mb = BasisKind::Mobius;
  static const Mat5 Tmp = basis_transition(BasisKind::Mobius, BasisKind::Poincare);
  Jet5 G = jet_apply(Tmp, g.eval(Jet::var(t)));
  Jet5 g1 = jet_derivative(G), g2 = jet_derivative(g1);
  Jet c = sqrt(-jet_product(g1, g1, Mb));
  Jet g22 = jet_product(g2, g2, Mb);
  Jet c2 = c * c, c4 = c2 * c2;
  Jet5 G4;
  for (int i = 0; i < 5; ++i) G4[i] = -g2[i] / c2 + g22 * G[i] / (2.0 * c4);
  Jet5 G4p = jet_derivative(G4);
  Jet R = pow(jet_product(G4p, G4p, Mb) / c2 + jet_product(G4p, g1, Mb) * g22 / (c4 * c2) +
                  g22 * g22 * jet_product(g1, g1, Mb) / (4.0 * c4 * c4 * c2),
              0.25);
  Jet R2 = R * R;
  Jet5 M2;
  for (int i = 0; i < 5; ++i) M2[i] = G4p[i] / (R2 * c) + g22 * g1[i] / (2.0 * c4 * c * R2);
  Jet5 M2p = jet_derivative(M2);
  OrbitCurvatures o;
  o.upsilon = (R * c).value();
  o.h = (-g22 / (2.0 * c4 * R2)).value();
  Jet5 d;
  for (int i = 0; i < 5; ++i) d[i] = M2p[i] - R2 * c * G[i];
  o.k = std::sqrt(std::max(jet_product(d, d, Mb).value(), 0.0)) / (R * c).value();
  Mat5 F = Mat5::Zero();
  F.col(0) = R.value() * jet_value(G);
  F.col(1) = jet_value(g1) / c.value();
  F.col(2) = jet_value(M2);
  F.col(4) = jet_value(G4) / R.value();
  const Mat5& m = mgram();
  auto ip = [&](const Vec5& x, const Vec5& y) { return x.dot(m * y); };
  Vec5 best = Vec5::Zero();
  double bn = -1;
  for (int e = 0; e < 5; ++e) {
    Vec5 w = Vec5::Unit(e);
    Vec5 x = w + ip(w, F.col(4)) * F.col(0) + ip(w, F.col(0)) * F.col(4) + ip(w, F.col(1)) * F.col(1) -
             ip(w, F.col(2)) * F.col(2);
    if (ip(x, x) > bn) bn = ip(x, x), best = x;
  }
  F.col(3) = best / std::sqrt(bn);
  if (F.determinant() < 0) F.col(3) = -F.col(3);
  o.frame = F;
  return o;
}

namespace {

struct TrapData {
  const std::vector<Vec5>* pts;
  double sign;  // +1 spacelike normal, -1 timelike normal
};

double trap_objective(const gsl_vector* v, void* params) {
  auto* d = static_cast<TrapData*>(params);
  Vec5 V;
  for (int i = 0; i < 5; ++i) V[i] = gsl_vector_get(v, i);
  double n = V.norm();
  if (n == 0) return 1e3;
  V /= n;
  double m = d->sign * product(V, V, BasisKind::Poincare);
  const Mat5& G = gram(BasisKind::Poincare);
  Vec5 GV = G * V;
  for (const Vec5& x : *d->pts) m = std::min(m, x.dot(GV));
  return -m;
}

std::pair<double, Vec5> trap_search(const std::vector<Vec5>& pts, double sign, unsigned seed) {
  TrapData data{&pts, sign};
  gsl_multimin_function fn{&trap_objective, 5, &data};
  const gsl_multimin_fminimizer_type* T = gsl_multimin_fminimizer_nmsimplex2;
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(T, 5);
  gsl_vector* x = gsl_vector_alloc(5);
  gsl_vector* step = gsl_vector_alloc(5);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Vec5> starts;
  for (int i = 0; i < 5; ++i) {
    starts.push_back(Vec5::Unit(i));
    starts.push_back(-Vec5::Unit(i));
  }
  Vec5 mean = Vec5::Zero();
  for (const Vec5& p : pts) mean += p;
  starts.push_back(gram(BasisKind::Poincare) * mean);
  for (int i = 0; i < 24; ++i) {
    Vec5 r;
    for (int j = 0; j < 5; ++j) r[j] = nd(rng);
    starts.push_back(r);
  }
  double best = -std::numeric_limits<double>::infinity();
  Vec5 bestV = Vec5::Zero();
  for (const Vec5& st : starts) {
    if (st.norm() == 0) continue;
    Vec5 s0 = st.normalized();
    for (int i = 0; i < 5; ++i) gsl_vector_set(x, i, s0[i]);
    gsl_vector_set_all(step, 0.3);
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    for (int it = 0; it < 3000; ++it) {
      if (gsl_multimin_fminimizer_iterate(s)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-12) == GSL_SUCCESS) break;
    }
    double val = -s->fval;
    if (val > best) {
      best = val;
      for (int i = 0; i < 5; ++i) bestV[i] = gsl_vector_get(s->x, i);
    }
    if (best > 1e-3) break;
  }
  gsl_vector_free(x);
  gsl_vector_free(step);
  gsl_multimin_fminimizer_free(s);
  return {best, bestV.normalized()};
}

}  // namespace

TrapReport trapped_report(const TimelikeCurve& g, double t0, double t1, int samples, unsigned seed) {
  std::vector<Vec5> pts;
  for (int i = 0; i < samples; ++i) {
    double t = t0 + (t1 - t0) * i / (samples - 1);
    pts.push_back(g.point(t).x / std::sqrt(2.0));
  }
  TrapReport r;
  auto [ma, va] = trap_search(pts, +1, seed);
  auto [md, vd] = trap_search(pts, -1, seed + 1);
  r.ads_margin = ma;
  r.ds_margin = md;
  r.ads_normal = va;
  r.ds_normal = vd;
  r.ads = ma > 1e-10;
  r.desitter = md > 1e-10;
  // an open convex cone meeting both causal types contains null directions
  r.minkowski = r.ads && r.desitter;
  return r;
}

}  // namespace ein
