#include "ein/acceptance.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "ein/elliptic.hpp"
#include "ein/homogeneous.hpp"
#include "ein/knots.hpp"
#include "ein/symplectic.hpp"
#include "ein/variational.hpp"

namespace ein {

namespace {

constexpr double kPi = std::numbers::pi;

template <class D>
double max_abs(const Eigen::MatrixBase<D>& A) {
  return A.cwiseAbs().maxCoeff();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// Interior point of a regular class, away from the strata where the parameters degenerate.
std::pair<double, double> random_params(HClass c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  for (;;) {
    double a = 0, b = 0;
    switch (c) {
      case HClass::C1: a = -1 + 2 * U(rng), b = std::exp(4 * U(rng) - 2); break;
      case HClass::C2i: a = U(rng), b = U(rng); break;
      case HClass::C2ii: a = U(rng), b = 1 + 3 * U(rng); break;
      case HClass::C3: a = 0.25 + 3 * U(rng), b = 1 + 4 * U(rng); break;
      default: a = U(rng), b = 3 * U(rng); break;
    }
    if (!in_domain(c, a, b)) continue;
    bool inner = true;
    for (double da : {-0.02, 0.02})
      for (double db : {-0.02, 0.02}) inner = inner && in_domain(c, a + da, b * (1 + db));
    if (inner) return {a, b};
  }
}

CriterionResult c1_canonical_frame() {
  const HClass classes[] = {HClass::C1, HClass::C2i, HClass::C2ii, HClass::C3, HClass::C4};
  std::mt19937_64 rng(101);
  double sd_max = 0, err_max = 0;
  for (int i = 0; i < 50; ++i) {
    HClass c = classes[i % 5];
    auto [a, b] = random_params(c, rng);
    auto pr = curvature_profile(parametrize(c, a, b), 0.1, 1.3, 7);
    auto [k, h] = curvatures_from_params(c, a, b);
    for (const auto* v : {&pr.k, &pr.h}) {
      double mean = std::accumulate(v->begin(), v->end(), 0.0) / double(v->size()), ss = 0;
      for (double x : *v) ss += (x - mean) * (x - mean);
      sd_max = std::max(sd_max, std::sqrt(ss / double(v->size())));
      err_max = std::max(err_max, std::abs(mean - (v == &pr.k ? k : h)));
    }
  }
  return {1, "canonical frame of homogeneous curves", sd_max < 1e-8 && err_max < 1e-7,
          fmt("50 points C1-C4: max std %.2e (< 1e-8), max |k,h - formula| %.2e (< 1e-7)", sd_max, err_max), 0,
          30};
}

// Nonhomogeneous closed timelike curve: the S^2 part moves with speed below 1.
TimelikeCurve wobble_curve() {
  return make_periodic_curve(
      [](const Jet& t) {
        Jet al = 1.0 + 0.3 * sin(t), be = 0.5 * t + 0.2 * cos(2.0 * t);
        return Jet5{cos(t), sin(t), cos(al), sin(al) * cos(be), sin(al) * sin(be)};
      },
      4 * kPi);
}

CriterionResult c2_conformal_invariance() {
  const Mat5 Tpm = basis_transition(BasisKind::Poincare, BasisKind::Mobius);
  const Mat5 Tmp = basis_transition(BasisKind::Mobius, BasisKind::Poincare);
  const TimelikeCurve fixtures[] = {parametrize(HClass::C2ii, 0.8, 1.2),
                                    parametrize_closed_c2i(0.5, Rational(2, 5)), wobble_curve()};
  std::mt19937_64 rng(102);
  std::uniform_real_distribution<double> U(0, 1);
  double worst = 0;
  int checked = 0;
  for (int i = 0; i < 100; ++i) {
    const TimelikeCurve& g = fixtures[i % 3];
    Mat5 Fp = Tpm * random_conformal(rng, 0.5) * Tmp;
    // f(s) = c s + d sin s + e, increasing
    double c = 0.3 + U(rng), d = 0.45 * c * (2 * U(rng) - 1), e = U(rng);
    auto g2 = transform_curve(g, Fp, [=](const Jet& s) { return c * s + d * sin(s) + e; }, -3, 3);
    for (int j = 0; j < 2; ++j) {
      double s = 5 * U(rng) - 2.5, t = c * s + d * std::sin(s) + e, fp = c + d * std::cos(s);
      double u1 = strain_density(g, t) * fp, u2 = strain_density(g2, s);
      if (u1 < 1e-3) continue;  // near a vertex
      worst = std::max(worst, std::abs(u2 - u1) / u1);
      ++checked;
    }
  }
  return {2, "conformal invariance of the strain density", worst < 1e-6 && checked >= 150,
          fmt("100 (F,f) on 3 curves, %g points: max relative deviation %.2e (< 1e-6)", checked, worst), 0, 20};
}

std::pair<double, double> random_e(int type, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0, 1);
  double e2 = 0.2 + 2.5 * U(rng);
  switch (type) {
    case 1: return {e2 * (0.05 + 0.9 * U(rng)), e2};
    case 2: return {-(0.1 + 3 * U(rng)), e2};
    default: return {0.0, e2};
  }
}

CriterionResult c3_euler_lagrange() {
  std::mt19937_64 rng(103);
  double el = 0, pr = 0;
  for (int type : {1, 2, 3})
    for (int i = 0; i < 10; ++i) {
      auto [e1, e2] = random_e(type, rng);
      CurvatureSolution s(phase_type(e1, e2));
      // type 3 is a soliton: take a window around the peak
      double T = type == 3 ? 20 : s.period(), u0 = type == 3 ? -10 : 0;
      for (int j = 0; j <= 400; ++j) {
        double u = u0 + T * j / 400;
        ElResidual r = el_residual(s.k(Jet::var(u)), s.h(Jet::var(u)));
        el = std::max({el, std::abs(r.r1), std::abs(r.r2)});
        pr = std::max(pr, std::abs(s.portrait_residual(u)));
      }
    }
  return {3, "Euler-Lagrange equations and phase portrait", el < 1e-8 && pr < 1e-8,
          fmt("30 extremals: max EL residual %.2e, portrait residual %.2e (< 1e-8)", el, pr), 0, 10};
}

CriterionResult c4_momentum() {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> U(0, 1);
  double drift = 0;
  for (int n = 0; n < 10;) {
    double e2 = 1.5 * U(rng), e1 = -6 * U(rng);
    if (!in_dstar(e1, e2)) continue;
    ++n;
    auto p = integrate_critical(e1, e2, Mat5::Identity(), period_omega(e1, e2), 401);
    Mat5 m0 = momentum(p.M[0], p.k[0], p.kdot[0], p.h[0]);
    for (std::size_t j = 0; j < p.M.size(); ++j)
      drift = std::max(drift, max_abs(momentum(p.M[j], p.k[j], p.kdot[j], p.h[j]) - m0));
  }
  return {4, "momentum conservation", drift < 1e-8,
          fmt("10 closed-family extremals over one period: max drift %.2e (< 1e-8)", drift), 0, 20};
}

CriterionResult c5_period_map() {
  struct Ref {
    double e1, e2;
    Rational x, y;
  };
  const Ref refs[] = {{-1.98638, 0.0275109, Rational(3, 4), Rational(2, 3)},
                      {-1.74929, 0.283545, Rational(4, 5), Rational(3, 4)}};
  bool pass = true;
  std::ostringstream d;
  for (const Ref& r : refs) {
    PeriodMap pm = period_map(r.e1, r.e2);
    bool ok = std::abs(pm.psi1 - r.x.value()) < 1e-3 && std::abs(pm.psi2 - r.y.value()) < 1e-3;
    d << fmt("Psi(%.5f,%.6g) = (%.6f,%.6f)", r.e1, r.e2, pm.psi1, pm.psi2) << " vs " << r.x.str() << ","
      << r.y.str() << (ok ? " ok" : " MISMATCH") << "; ";
    pass = pass && ok;
    try {
      Inversion inv = invert_period_map(r.x, r.y);
      PeriodMap back = period_map(inv.e1, inv.e2);
      bool rec = std::abs(inv.e1 - r.e1) < 1e-3 && std::abs(inv.e2 - r.e2) < 1e-3;
      double rt = std::max(std::abs(back.psi1 - r.x.value()), std::abs(back.psi2 - r.y.value()));
      d << "inverse " << fmt("(%.5f,%.6g)", inv.e1, inv.e2) << (rec ? " ok" : " MISMATCH")
        << fmt(", round trip %.1e; ", rt);
      pass = pass && rec && rt < 1e-8;
    } catch (const std::exception& e) {
      d << "inverse failed: " << e.what() << "; ";
      pass = false;
    }
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {5, "period map reference values", pass, s, 0, 60};
}

CriterionResult c6_closure() {
  auto c = closed_critical_curve(Rational(3, 4), Rational(2, 3));
  auto r = recurrence_gaps(c.e1 + 1e-2, c.e2, static_cast<int>(c.periods));
  double control = *std::min_element(r.curve_gap.begin(), r.curve_gap.end());
  bool pass = c.periods == 12 && c.frame_gap < 1e-5 && c.curve_gap < 1e-5 && control > 1e-3;
  return {6, "closure of the (3/4,2/3) extremal", pass,
          fmt("%g periods: frame gap %.2e, curve gap %.2e (< 1e-5); off-rational control min gap %.2e (> 1e-3)",
              double(c.periods), c.frame_gap, c.curve_gap, control),
          0, 60};
}

CriterionResult c7_covering() {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> U(0, 1);
  double hom = 0, br = 0, fr = 0;
  for (int i = 0; i < 100; ++i) {
    Mat4 A = expm(random_sp4_alg(rng, 0.5)), B = expm(random_sp4_alg(rng, 0.5));
    hom = std::max(hom, max_abs(rho(A * B) - rho(A) * rho(B)));
    Mat4 X = random_sp4_alg(rng, 1), Y = random_sp4_alg(rng, 1);
    br = std::max(br, max_abs(rho_star(Mat4(X * Y - Y * X)) - (rho_star(X) * rho_star(Y) - rho_star(Y) * rho_star(X))));
  }
  for (int i = 0; i < 20; ++i) {
    double k = 4 * U(rng) - 2, h = 4 * U(rng) - 2;
    fr = std::max(fr, max_abs(rho_star(lifted_frenet(k, h)) - frenet_matrix(k, h)));
  }
  return {7, "covering homomorphism", hom < 1e-9 && br < 1e-10 && fr < 1e-10,
          fmt("homomorphism %.2e (< 1e-9), brackets %.2e (< 1e-10), Frenet lift %.2e (< 1e-10)", hom, br, fr), 0,
          10};
}

CriterionResult c8_directrices() {
  std::ostringstream d;
  bool pass = true;
  struct Case {
    double a;
    int m, n, lk, b;
  };
  for (Case cs : {Case{0.5, 2, 5, 21, 11}, Case{0.7, 1, 3, 2, -1}}) {
    DirectrixReport r = directrix_invariants(cs.a, cs.m, cs.n);
    bool ok = r.simple && r.lk == cs.lk && r.b_gamma == cs.b && r.b_star == cs.b;
    if (cs.n == 5) ok = ok && r.maslov == 5 && r.spin == 0.5;
    d << fmt("(a,b)=(%g,%g/%g): ", cs.a, cs.m, cs.n) << "maslov " << r.maslov << ", spin " << r.spin << ", Lk "
      << r.lk << ", Bennequin " << r.b_gamma << "/" << r.b_star << (r.simple ? ", simple" : ", NOT simple")
      << fmt(", gap %.1e; ", r.closure_gap);
    pass = pass && ok;
  }
  std::string s = d.str();
  s.resize(s.size() - 2);
  return {8, "directrix invariants", pass, s, 0, 120};
}

// N rotated by w turns plus a wobble, with a tangential part
std::vector<Vec3> twisted_framing(const SpatialKnot& k, int w, double phase) {
  auto N = frenet_normal(k), B = frenet_binormal(k);
  std::vector<Vec3> X;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double t = k.param(i), a = w * t + 0.5 * std::sin(2 * t + phase);
    X.push_back(std::cos(a) * N[i] + std::sin(a) * B[i] + 0.3 * k.d1[i].normalized());
  }
  return X;
}

LinkResult link_field(const SpatialKnot& k, const std::vector<Vec3>& X) {
  double eta = push_off_scale(k, X);
  LinkOptions o;
  o.min_angle = 1e-7;
  o.min_distance = 0.1 * eta;
  o.gauss_guard = -1;
  LinkResult r = link(k, push_off(k, X, eta), o);
  r.gauss = gauss_linking(k, push_off(k, X, eta));
  return r;
}

CriterionResult c9_knots() {
  LinkOptions o;
  o.gauss_guard = -1;
  LinkResult l37 = link(torus_knot(TorusKind::Standard, 3, 7), torus_knot(TorusKind::Starred, 3, 7), o);
  l37.gauss = gauss_linking(torus_knot(TorusKind::Standard, 3, 7), torus_knot(TorusKind::Starred, 3, 7));
  auto c35 = torus_knot(TorusKind::Check, 3, 5, 6000);
  LinkResult sl = link_field(c35, frenet_normal(c35));
  double gauss_dev = std::max(std::abs(l37.gauss - l37.lk), std::abs(sl.gauss - sl.lk));
  int cfp_ok = 0, pairs = 0;
  struct Item {
    TorusKind kind;
    int p, q, n;
  };
  for (Item it : {Item{TorusKind::Check, 3, 5, 6000}, Item{TorusKind::Check, 2, 3, 4000},
                  Item{TorusKind::Standard, 2, 3, 3000}, Item{TorusKind::Standard, 2, 5, 4000}}) {
    auto k = torus_knot(it.kind, it.p, it.q, it.n);
    LinkResult s = link_field(k, frenet_normal(k));
    gauss_dev = std::max(gauss_dev, std::abs(s.gauss - s.lk));
    for (int w : {-2, -1, 0, 1, 3}) {
      auto X = twisted_framing(k, w, pairs);
      LinkResult lf = link_field(k, X);
      gauss_dev = std::max(gauss_dev, std::abs(lf.gauss - lf.lk));
      cfp_ok += lf.lk == s.lk + rotation_number(k, X);
      ++pairs;
    }
  }
  bool pass = l37.lk == 21 && sl.lk == 12 && cfp_ok == pairs && gauss_dev < 0.1;
  std::ostringstream d;
  d << "Lk(K37,K*37) = " << l37.lk << ", SL(check 3,5) = " << sl.lk << ", CFP " << cfp_ok << "/" << pairs
    << fmt(", max |Gauss - crossings| %.3f (< 0.1)", gauss_dev);
  return {9, "knot invariants", pass, d.str(), 0, 60};
}

template <class F>
double quad(F f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-14);
}

double F_quad(double phi, double m) {
  return quad([m](double t) { return 1 / std::sqrt(1 - m * std::sin(t) * std::sin(t)); }, 0, phi);
}

// amplitude by Newton on the quadrature
double am_quad(double u, double m, double K) {
  double phi = kPi / 2 * u / K;
  for (int i = 0; i < 60; ++i) {
    double s = std::sin(phi), step = (F_quad(phi, m) - u) * std::sqrt(1 - m * s * s);
    phi -= step;
    if (std::abs(step) < 1e-15 * (1 + std::abs(phi))) break;
  }
  return phi;
}

CriterionResult c10_special_functions() {
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> U(0, 1);
  double eK = 0, eam = 0, ej = 0, ePi = 0;
  for (int i = 0; i < 40; ++i) {
    double m = 0.99 * U(rng), K = F_quad(kPi / 2, m);
    eK = std::max(eK, std::abs(ellip_K(m) - K) / K);
    double u = 8 * K * (U(rng) - 0.5), phi = am_quad(u, m, K);
    eam = std::max(eam, std::abs(jacobi_am(u, m) - phi) / (1 + std::abs(phi)));
    double sn = std::sin(phi), cn = std::cos(phi), dn = std::sqrt(1 - m * sn * sn);
    Jacobi j = jacobi(u, m);
    for (auto [a, b] : {std::pair{j.sn, sn}, {j.cn, cn}, {j.dn, dn}, {jacobi_sn(u, m), sn}, {jacobi_cn(u, m), cn},
                        {jacobi_dn(u, m), dn}, {jacobi_sd(u, m), sn / dn}, {jacobi_nd(u, m), 1 / dn}})
      ej = std::max(ej, std::abs(a - b) / (1 + std::abs(b)));
    double x = 4 * U(rng) - 3.01, ph = 14 * (U(rng) - 0.5);
    double q = quad(
        [&](double t) {
          double s2 = std::sin(t) * std::sin(t);
          return 1 / (std::sqrt(1 - m * s2) * (1 - x * s2));
        },
        0, ph);
    ePi = std::max(ePi, std::abs(ellip_Pi(x, ph, m) - q) / (1 + std::abs(q)));
  }
  bool pass = std::max({eK, eam, ej, ePi}) < 1e-10;
  return {10, "elliptic functions against quadrature", pass,
          fmt("40 random points: K %.1e, am %.1e, sn/cn/dn/sd/nd %.1e, Pi %.1e (< 1e-10)", eK, eam, ej, ePi), 0, 10};
}

}  // namespace

const std::vector<int>& expected_red() {
  // the second reference pair maps to (4/5, 2/3), not (4/5, 3/4)
  static const std::vector<int> red{5};
  return red;
}

CriterionResult run_criterion(int id) {
  static const std::function<CriterionResult()> table[] = {
      c1_canonical_frame, c2_conformal_invariance, c3_euler_lagrange, c4_momentum,  c5_period_map,
      c6_closure,         c7_covering,             c8_directrices,    c9_knots,     c10_special_functions};
  static const char* titles[] = {"canonical frame of homogeneous curves", "conformal invariance of the strain density",
                                 "Euler-Lagrange equations and phase portrait", "momentum conservation",
                                 "period map reference values", "closure of the (3/4,2/3) extremal",
                                 "covering homomorphism", "directrix invariants", "knot invariants",
                                 "elliptic functions against quadrature"};
  static const double budgets[] = {30, 20, 10, 20, 60, 60, 10, 120, 60, 10};
  if (id < 1 || id > kCriteria) throw UsageError("no acceptance criterion " + std::to_string(id));
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = table[id - 1]();
  } catch (const std::exception& e) {
    r = {id, titles[id - 1], false, std::string("error: ") + e.what(), 0, budgets[id - 1]};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string format_line(const CriterionResult& r) {
  bool known = std::count(expected_red().begin(), expected_red().end(), r.id) > 0;
  std::ostringstream s;
  s << (r.pass ? "PASS" : (known ? "FAIL (known)" : "FAIL")) << "  " << r.id << ". " << r.title << ": " << r.detail
    << fmt(" [%.1f s of %g s]", r.seconds, r.budget);
  return s.str();
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::ostream* out) {
  std::vector<int> run = ids;
  if (run.empty())
    for (int i = 1; i <= kCriteria; ++i) run.push_back(i);
  std::vector<CriterionResult> rs;
  for (int id : run) {
    rs.push_back(run_criterion(id));
    if (out) *out << format_line(rs.back()) << std::endl;
  }
  return rs;
}

bool matches_expected(const std::vector<CriterionResult>& rs) {
  for (const CriterionResult& r : rs) {
    bool known = std::count(expected_red().begin(), expected_red().end(), r.id) > 0;
    if (r.pass == known) return false;
  }
  return true;
}

}  // namespace ein
