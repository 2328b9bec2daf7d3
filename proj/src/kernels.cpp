#include "ein/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ein {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

KernelMode resolve_mode(KernelMode m) {
  if (m == KernelMode::Scalar) return m;
  return avx2_available() ? KernelMode::Avx2 : KernelMode::Scalar;
}

namespace kernels {

double gauss_row_scalar(const double a[3], const double da[3], const Soa3& b, const Soa3& db) {
  double s = 0;
  for (std::size_t j = 0; j < b.size(); ++j) {
    double rx = a[0] - b.x[j], ry = a[1] - b.y[j], rz = a[2] - b.z[j];
    double cx = da[1] * db.z[j] - da[2] * db.y[j];
    double cy = da[2] * db.x[j] - da[0] * db.z[j];
    double cz = da[0] * db.y[j] - da[1] * db.x[j];
    double d2 = rx * rx + ry * ry + rz * rz;
    s += (rx * cx + ry * cy + rz * cz) / (d2 * std::sqrt(d2));
  }
  return s;
}

double min_dist2_scalar(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = j0; j < j1; ++j) {
    double rx = p[0] - b.x[j], ry = p[1] - b.y[j], rz = p[2] - b.z[j];
    best = std::min(best, rx * rx + ry * ry + rz * rz);
  }
  return best;
}

}  // namespace kernels

double gauss_sum(const Soa3& a, const Soa3& da, const Soa3& b, const Soa3& db, KernelMode m) {
  auto row = resolve_mode(m) == KernelMode::Avx2 ? kernels::gauss_row_avx2 : kernels::gauss_row_scalar;
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double p[3] = {a.x[i], a.y[i], a.z[i]}, d[3] = {da.x[i], da.y[i], da.z[i]};
    s += row(p, d, b, db);
  }
  return s;
}

double min_dist2(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1, KernelMode m) {
  if (resolve_mode(m) == KernelMode::Avx2) return kernels::min_dist2_avx2(p, b, j0, j1);
  return kernels::min_dist2_scalar(p, b, j0, j1);
}

}  // namespace ein
