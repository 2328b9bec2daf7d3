#include "ein/frames.hpp"

#include <fstream>

#include "ode.hpp"

namespace ein {

Mat5 frenet_matrix(double k, double h) {
  return mgen(0, 2) - mgen(4, 1) - k * mgen(2, 3) - h * mgen(0, 1);
}

CanonicalFrame canonical_frame_from_jets(const Jet5& gamma_u) {
  const auto Mb = BasisKind::Mobius;
  static const Mat5 Tmp = basis_transition(BasisKind::Mobius, BasisKind::Poincare);
  Jet5 G = jet_apply(Tmp, gamma_u);
  Jet5 G1 = jet_derivative(G);
  Jet v = sqrt(-jet_product(G1, G1, Mb));
  Jet iv = inv(v);
  Jet5 M0;
  for (int i = 0; i < 5; ++i) M0[i] = G[i] * iv;
  Jet5 d1 = jet_derivative(M0), d2 = jet_derivative(d1), d3 = jet_derivative(d2);
  Jet h = -0.5 * jet_product(d2, d2, Mb);
  Jet hp = derivative(h);
  Jet5 M2, M4;
  for (int i = 0; i < 5; ++i) {
    M4[i] = -d2[i] - h * M0[i];
    M2[i] = -d3[i] - hp * M0[i] - 2.0 * (h * d1[i]);
  }
  Jet5 M2p = jet_derivative(M2);
  CanonicalFrame f;
  f.M.setZero();
  f.M.col(0) = jet_value(M0);
  f.M.col(1) = jet_value(d1);
  f.M.col(2) = jet_value(M2);
  f.M.col(4) = jet_value(M4);
  // M3: unit spacelike m-complement of the other four
  const Mat5& m = mgram();
  auto ip = [&](const Vec5& a, const Vec5& b) { return a.dot(m * b); };
  Vec5 best = Vec5::Zero();
  double bn = -1;
  for (int e = 0; e < 5; ++e) {
    Vec5 w = Vec5::Unit(e);
    Vec5 x = w + ip(w, f.M.col(4)) * f.M.col(0) + ip(w, f.M.col(0)) * f.M.col(4) +
             ip(w, f.M.col(1)) * f.M.col(1) - ip(w, f.M.col(2)) * f.M.col(2);
    double q = ip(x, x);
    if (q > bn) {
      bn = q;
      best = x;
    }
  }
  f.M.col(3) = best / std::sqrt(bn);
  if (f.M.determinant() < 0) f.M.col(3) = -f.M.col(3);
  f.k = ip(jet_value(M2p) - f.M.col(0), f.M.col(3));
  f.h = h.value();
  return f;
}

CanonicalFrame canonical_frame_at(const TimelikeCurve& gamma_u, double u) {
  return canonical_frame_from_jets(gamma_u.section(Jet::var(u)));
}

CanonicalFrame canonical_frame(const TimelikeCurve& g, double t) {
  return canonical_frame_from_jets(conformal_jet(g, t));
}

CurvatureProfile curvature_profile(const TimelikeCurve& g, double t0, double t1, int n) {
  StrainProfile sp = strain_profile(g, t0, t1, n);
  CurvatureProfile p;
  p.t = sp.t;
  p.u = sp.u;
  for (double t : sp.t) {
    CanonicalFrame f = canonical_frame(g, t);
    p.k.push_back(f.k);
    p.h.push_back(f.h);
  }
  return p;
}

FramePath integrate_frenet(const ScalarFn& k, const ScalarFn& h, const Mat5& M0, double u0, double u1,
                           double tol, int samples) {
  using detail::State;
  State x(25);
  Eigen::Map<Mat5>(x.data()) = M0;
  auto sys = [&](const State& s, State& ds, double u) {
    Eigen::Map<const Mat5> M(s.data());
    Eigen::Map<Mat5>(ds.data()) = M * frenet_matrix(k(u), h(u));
  };
  FramePath p;
  auto fix = [&](State& s) {
    Mat5 M = Eigen::Map<Mat5>(s.data());
    reorthonormalize_mobius(M);
    p.max_defect = std::max(p.max_defect, frame_defect(M));
    Eigen::Map<Mat5>(s.data()) = M;
  };
  auto out = [&](double u, const State& s) {
    p.u.push_back(u);
    p.M.push_back(Eigen::Map<const Mat5>(s.data()));
    p.k.push_back(k(u));
    p.h.push_back(h(u));
  };
  detail::integrate_grid(sys, x, u0, u1, samples, tol, fix, out);
  return p;
}

Mat5 curvature_operator(const Mat5& M, double k, double h) {
  return M * frenet_matrix(k, h) * mobius_dual(M);
}

EinsteinPoint frame_point(const Mat5& M) {
  static const Mat5 Tpm = basis_transition(BasisKind::Poincare, BasisKind::Mobius);
  return ray_normalize(Tpm * M.col(0), 1e-6);
}

void write_frame_csv(const std::string& path, const FramePath& p) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out.precision(17);
  out << "u";
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out << ",M" << i << j;
  out << ",k,h\n";
  for (size_t s = 0; s < p.u.size(); ++s) {
    out << p.u[s];
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) out << ',' << p.M[s](i, j);
    out << ',' << p.k[s] << ',' << p.h[s] << '\n';
  }
}

}  // namespace ein
