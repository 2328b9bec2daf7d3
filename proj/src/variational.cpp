#include "ein/variational.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <mutex>
#include <numbers>
#include <numeric>

#include "ein/elliptic.hpp"
#include "ode.hpp"

namespace ein {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double x) { return x * x; }

}  // namespace

CriticalParams phase_type(double e1, double e2, double tol) {
  if (!(e2 > 0) || !(e1 < e2)) throw DomainError("critical parameters need e1 < e2 and e2 > 0");
  CriticalParams cp{e1, e2, 0, 0, 0};
  if (std::abs(e1) <= tol * (1 + e2)) {
    cp.e1 = 0;
    cp.type = 3;
    cp.p = e2;
  } else if (e1 > 0) {
    cp.type = 1;
    cp.m = (e2 - e1) / e2;
    cp.p = e2;
  } else {
    cp.type = 2;
    cp.m = e2 / (e2 - e1);
    cp.p = e2 - e1;
  }
  return cp;
}

ElResidual el_residual(const Jet& k, const Jet& h) {
  double k0 = k.value();
  return {k.deriv(2) - k0 * k0 * k0 + 2 * k0 * h.value(), h.deriv(1) - 3 * k0 * k.deriv(1)};
}

ElResidual el_residual(const ScalarFn& k, const ScalarFn& h, double u, double e) {
  double km = k(u - e), k0 = k(u), kp = k(u + e);
  double kdd = (kp - 2 * k0 + km) / (e * e), kd = (kp - km) / (2 * e);
  double hd = (h(u + e) - h(u - e)) / (2 * e);
  return {kdd - k0 * k0 * k0 + 2 * k0 * h(u), hd - 3 * k0 * kd};
}

CurvatureSolution::CurvatureSolution(const CriticalParams& cp) : cp_(cp) {
  switch (cp.type) {
    case 1:
      amp_ = std::sqrt(cp.e1);
      rate_ = std::sqrt(cp.p);
      mell_ = cp.m;
      break;
    case 2:
      amp_ = std::sqrt(-cp.e1 * cp.e2 / (cp.e2 - cp.e1));
      rate_ = std::sqrt(cp.p);
      mell_ = cp.m;
      break;
    case 3:
      amp_ = rate_ = std::sqrt(cp.e2);
      break;
    default:
      throw UsageError("CurvatureSolution: phase type not set");
  }
}

Jet CurvatureSolution::k(const Jet& u) const {
  switch (cp_.type) {
    case 1: return amp_ * jacobi_nd(rate_ * u, mell_);
    case 2: return amp_ * jacobi_sd(rate_ * u, mell_);
    default: return amp_ * inv(cosh(rate_ * u));
  }
}

Jet CurvatureSolution::h(const Jet& u) const {
  Jet kk = k(u);
  return 1.5 * kk * kk - 0.5 * (cp_.e1 + cp_.e2);
}

double CurvatureSolution::h(double u) const {
  double kk = k(u);
  return 1.5 * kk * kk - 0.5 * (cp_.e1 + cp_.e2);
}

double CurvatureSolution::period() const {
  switch (cp_.type) {
    case 1: return 2 * ellip_K(mell_) / rate_;
    case 2: return 4 * ellip_K(mell_) / rate_;
    default: return std::numeric_limits<double>::infinity();
  }
}

double CurvatureSolution::portrait_residual(double u) const {
  Jet kk = k(Jet::var(u));
  double x = kk.value(), y = kk.c[1];
  return y * y + (x * x - cp_.e1) * (x * x - cp_.e2);
}

Mat5 momentum_generator(double k, double kdot, double h) {
  return -mgen(0, 1) - mgen(4, 2) - k * mgen(1, 3) + kdot * mgen(0, 3) + (h - k * k) * mgen(0, 2);
}

Mat5 momentum(const Mat5& M, double k, double kdot, double h) {
  return M * momentum_generator(k, kdot, h) * mobius_dual(M);
}

double critical_contact_form(const Mat5& mu, double k, double kdot, double h) {
  return 0.5 * (mu(1, 0) + mu(2, 4) + (k * k - h) * mu(2, 0) - kdot * mu(3, 0) + k * mu(3, 1));
}

std::vector<EinsteinPoint> CriticalPath::points() const {
  std::vector<EinsteinPoint> r;
  r.reserve(M.size());
  for (const Mat5& F : M) r.push_back(frame_point(F));
  return r;
}

CriticalPath integrate_critical(double e1, double e2, const Mat5& M0, double span, int samples, double tol) {
  CriticalParams cp = phase_type(e1, e2);
  CurvatureSolution sol(cp);
  using detail::State;
  State x(28);
  Eigen::Map<Mat5>(x.data()) = M0;
  x[25] = sol.k(0.0);
  x[26] = sol.kdot(0.0);
  x[27] = sol.h(0.0);
  auto sys = [](const State& s, State& ds, double) {
    Eigen::Map<const Mat5> M(s.data());
    double k = s[25], kd = s[26], h = s[27];
    Eigen::Map<Mat5>(ds.data()) = M * frenet_matrix(k, h);
    ds[25] = kd;
    ds[26] = k * k * k - 2 * k * h;
    ds[27] = 3 * k * kd;
  };
  CriticalPath p;
  auto fix = [&](State& s) {
    Mat5 M = Eigen::Map<Mat5>(s.data());
    reorthonormalize_mobius(M);
    p.max_defect = std::max(p.max_defect, frame_defect(M));
    Eigen::Map<Mat5>(s.data()) = M;
  };
  const double c = 0.5 * (cp.e1 + cp.e2);
  auto out = [&](double u, const State& s) {
    double k = s[25], kd = s[26], h = s[27];
    p.u.push_back(u);
    p.M.push_back(Eigen::Map<const Mat5>(s.data()));
    p.k.push_back(k);
    p.kdot.push_back(kd);
    p.h.push_back(h);
    p.max_curvature_error =
        std::max({p.max_curvature_error, std::abs(k - sol.k(u)), std::abs(h - sol.h(u))});
    p.max_first_integral = std::max({p.max_first_integral, std::abs(kd * kd + (k * k - cp.e1) * (k * k - cp.e2)),
                                     std::abs(h - 1.5 * k * k + c)});
  };
  detail::integrate_grid(sys, x, 0.0, span, samples, tol, fix, out);
  return p;
}

TimelikeCurve critical_curve(const CriticalPath& path, bool periodic) {
  std::vector<double> t = path.u;
  std::vector<Vec5> x;
  x.reserve(t.size());
  for (const Mat5& M : path.M) x.push_back(frame_point(M).x);
  if (periodic) {
    // the last sample repeats the first
    t.pop_back();
    x.pop_back();
  }
  return sampled_curve(std::move(t), std::move(x), periodic);
}

bool in_dstar(double e1, double e2) {
  double d = e2 - e1;
  return e2 > 0 && d > 2 && e1 + e2 < -std::sqrt(d * d - 4);
}

bool in_period_domain(double x, double y) { return y > 0 && y < x && x < 1 && x * x + y * y > 1; }

namespace {

struct Xi {
  double xi1, xi2;
};

Xi xis(double e1, double e2) {
  double s = std::sqrt(sq(e2 - e1) - 4);
  return {std::sqrt(0.5 * std::abs(e1 + e2 + s)), std::sqrt(0.5 * std::abs(e1 + e2 - s))};
}

void check_dstar(double e1, double e2) {
  if (!in_dstar(e1, e2)) throw DomainError("(e1, e2) is outside the domain of the period map");
}

}  // namespace

double period_omega(double e1, double e2) {
  CriticalParams cp = phase_type(e1, e2);
  if (cp.type != 2) throw DomainError("period map needs phase type 2");
  return 4 * ellip_K(cp.m) / std::sqrt(cp.p);
}

std::pair<double, double> period_map_closed_form(double e1, double e2) {
  check_dstar(e1, e2);
  CriticalParams cp = phase_type(e1, e2);
  double om = period_omega(e1, e2);
  Xi x = xis(e1, e2);
  auto psi = [&](double xi) {
    double n = cp.m * (xi * xi + e1) / (xi * xi);
    double Pi = ellip_Pi_complete(n, cp.m, true);
    return xi / (e1 + xi * xi) * (om + std::sqrt(cp.p) * (cp.m - 1) / (xi * xi) * 4 * Pi) / (2 * kPi);
  };
  return {psi(x.xi1), psi(x.xi2)};
}

PeriodMap period_map(double e1, double e2, double tol) {
  check_dstar(e1, e2);
  PeriodMap r;
  Xi x = xis(e1, e2);
  r.xi1 = x.xi1;
  r.xi2 = x.xi2;
  if (std::abs(x.xi1 - x.xi2) < 1e-9 || x.xi2 < 1e-9) throw DomainError("period map: degenerate invariant planes");
  r.omega = period_omega(e1, e2);
  CurvatureSolution sol(phase_type(e1, e2));

  // invariant planes of the momentum at u = 0 (frame = identity)
  Mat5 H = momentum_generator(sol.k(0.0), sol.kdot(0.0), sol.h(0.0));
  Eigen::EigenSolver<Mat5> es(H);
  Eigen::Matrix<std::complex<double>, 5, 5> Vinv = es.eigenvectors().inverse();
  int idx[2] = {-1, -1};
  for (int i = 0; i < 5; ++i) {
    std::complex<double> w = es.eigenvalues()[i];
    for (int j = 0; j < 2; ++j) {
      double xi = j == 0 ? x.xi1 : x.xi2;
      if (std::abs(w - std::complex<double>(0, xi)) < 1e-7 * (1 + xi)) idx[j] = i;
    }
  }
  if (idx[0] < 0 || idx[1] < 0) throw NumericError("period map: momentum eigenvalues do not match xi1, xi2");

  const int samples = 4001;
  double prev[2] = {0, 0}, acc[2] = {0, 0};
  bool first = true;
  auto out = [&](double, const Mat5& M) {
    Vec5 p = M.col(0);
    for (int j = 0; j < 2; ++j) {
      std::complex<double> c = (Vinv.row(idx[j]) * p.cast<std::complex<double>>())(0);
      if (std::abs(c) < 1e-12) throw NumericError("period map: curve meets an invariant axis");
      double a = std::arg(c);
      if (!first) {
        double d = a - prev[j];
        d -= 2 * kPi * std::round(d / (2 * kPi));
        acc[j] += d;
      }
      prev[j] = a;
    }
    first = false;
  };
  CriticalPath path = integrate_critical(e1, e2, Mat5::Identity(), r.omega, samples, tol);
  for (size_t i = 0; i < path.M.size(); ++i) out(path.u[i], path.M[i]);
  r.psi1 = acc[0] / (2 * kPi);
  r.psi2 = acc[1] / (2 * kPi);
  auto cf = period_map_closed_form(e1, e2);
  r.closed1 = cf.first;
  r.closed2 = cf.second;
  return r;
}

namespace {

struct GridPoint {
  double e1, e2, x, y;
};

const std::vector<GridPoint>& period_grid() {
  static std::vector<GridPoint> grid;
  static std::once_flag once;
  std::call_once(once, [] {
    const int n = 140;
    for (int i = 0; i < n; ++i) {
      double e2 = std::pow(10.0, -4 + 5.0 * i / (n - 1));
      for (int j = 0; j < n; ++j) {
        double e1 = e2 - 2 - std::pow(10.0, -4 + 6.0 * j / (n - 1));
        if (!in_dstar(e1, e2)) continue;
        auto [x, y] = period_map_closed_form(e1, e2);
        if (std::isfinite(x) && std::isfinite(y)) grid.push_back({e1, e2, x, y});
      }
    }
  });
  return grid;
}

template <class F>
int newton2(F&& f, double& e1, double& e2, double target_x, double target_y, double stop, int max_it) {
  auto resid = [&](double a, double b) {
    auto [x, y] = f(a, b);
    return Eigen::Vector2d(x - target_x, y - target_y);
  };
  Eigen::Vector2d r = resid(e1, e2);
  int it = 0;
  for (; it < max_it && r.cwiseAbs().maxCoeff() > stop; ++it) {
    Eigen::Matrix2d J;
    double h1 = 1e-6 * (1 + std::abs(e1)), h2 = 1e-6 * std::max(e2, 1e-3);
    auto col = [&](double d1, double d2) {
      if (in_dstar(e1 + d1, e2 + d2) && in_dstar(e1 - d1, e2 - d2))
        return Eigen::Vector2d((resid(e1 + d1, e2 + d2) - resid(e1 - d1, e2 - d2)) / 2);
      if (in_dstar(e1 + d1, e2 + d2)) return Eigen::Vector2d(resid(e1 + d1, e2 + d2) - r);
      return Eigen::Vector2d(r - resid(e1 - d1, e2 - d2));
    };
    J.col(0) = col(h1, 0) / h1;
    J.col(1) = col(0, h2) / h2;
    Eigen::Vector2d step = J.fullPivLu().solve(-r);
    if (!step.allFinite()) break;
    double lam = 1;
    bool moved = false;
    for (int ls = 0; ls < 40; ++ls, lam *= 0.5) {
      double a = e1 + lam * step[0], b = e2 + lam * step[1];
      if (!in_dstar(a, b)) continue;
      Eigen::Vector2d rn = resid(a, b);
      if (rn.cwiseAbs().maxCoeff() < r.cwiseAbs().maxCoeff()) {
        e1 = a, e2 = b, r = rn;
        moved = true;
        break;
      }
    }
    if (!moved) break;
  }
  return it;
}

}  // namespace

Inversion invert_period_map(double x, double y) {
  if (!in_period_domain(x, y)) throw DomainError("period target outside the image of the period map");
  const auto& grid = period_grid();
  std::vector<std::pair<double, const GridPoint*>> cand;
  for (const auto& g : grid) cand.emplace_back(std::max(std::abs(g.x - x), std::abs(g.y - y)), &g);
  const size_t keep = std::min<size_t>(6, cand.size());
  std::partial_sort(cand.begin(), cand.begin() + keep, cand.end());
  Inversion best{0, 0, std::numeric_limits<double>::infinity(), 0};
  for (size_t c = 0; c < keep; ++c) {
    double e1 = cand[c].second->e1, e2 = cand[c].second->e2;
    int it = newton2(period_map_closed_form, e1, e2, x, y, 1e-14, 60);
    // polish on the monodromy definition
    auto mono = [](double a, double b) {
      PeriodMap pm = period_map(a, b);
      return std::pair<double, double>{pm.psi1, pm.psi2};
    };
    it += newton2(mono, e1, e2, x, y, 1e-11, 8);
    PeriodMap pm = period_map(e1, e2);
    double res = std::max(std::abs(pm.psi1 - x), std::abs(pm.psi2 - y));
    if (res < best.residual) best = {e1, e2, res, it};
    if (best.residual < 1e-9) break;
  }
  if (!(best.residual < 1e-8))
    throw NumericError("invert_period_map: no convergence, residual " + std::to_string(best.residual));
  return best;
}

Inversion invert_period_map(const Rational& q1, const Rational& q2) {
  return invert_period_map(q1.value(), q2.value());
}

Recurrence recurrence_gaps(double e1, double e2, int n, double tol) {
  double om = period_omega(e1, e2);
  CriticalPath p = integrate_critical(e1, e2, Mat5::Identity(), n * om, n + 1, tol);
  Recurrence r;
  Vec5 x0 = frame_point(p.M[0]).x;
  for (int i = 1; i <= n; ++i) {
    r.frame_gap.push_back((p.M[i] - p.M[0]).cwiseAbs().maxCoeff());
    r.curve_gap.push_back((frame_point(p.M[i]).x - x0).norm());
  }
  return r;
}

ClosedCritical closed_critical_curve(const Rational& q1, const Rational& q2, int samples_per_period) {
  Inversion inv = invert_period_map(q1, q2);
  ClosedCritical c;
  c.e1 = inv.e1;
  c.e2 = inv.e2;
  c.omega = period_omega(c.e1, c.e2);
  c.periods = std::lcm(q1.den, q2.den);
  c.length = c.periods * c.omega;
  c.path = integrate_critical(c.e1, c.e2, Mat5::Identity(), c.length,
                              static_cast<int>(c.periods * samples_per_period + 1));
  const Mat5& A = c.path.M.front();
  const Mat5& B = c.path.M.back();
  c.frame_gap = (B - A).cwiseAbs().maxCoeff();
  c.curve_gap = (frame_point(B).x - frame_point(A).x).norm();
  if (c.curve_gap > 1e-5)
    throw ConsistencyError("closed critical curve does not close: gap " + std::to_string(c.curve_gap));
  int changes = 0;
  double prev = 0;
  for (const Mat5& M : c.path.M) {
    double s = frame_point(M).x[2];
    if (prev != 0 && s != 0 && (s > 0) != (prev > 0)) ++changes;
    if (s != 0) prev = s;
  }
  c.ads_arcs = std::max(changes, 1);
  c.curve = critical_curve(c.path, true);
  return c;
}

}  // namespace ein
