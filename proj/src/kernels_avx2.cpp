// Compiled with -mavx2 -mfma; only reached after the runtime check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ein/kernels.hpp"

namespace ein::kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v), hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double gauss_row_avx2(const double a[3], const double da[3], const Soa3& b, const Soa3& db) {
  const std::size_t n = b.size();
  const __m256d ax = _mm256_set1_pd(a[0]), ay = _mm256_set1_pd(a[1]), az = _mm256_set1_pd(a[2]);
  const __m256d dx = _mm256_set1_pd(da[0]), dy = _mm256_set1_pd(da[1]), dz = _mm256_set1_pd(da[2]);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    __m256d rx = _mm256_sub_pd(ax, _mm256_loadu_pd(&b.x[j]));
    __m256d ry = _mm256_sub_pd(ay, _mm256_loadu_pd(&b.y[j]));
    __m256d rz = _mm256_sub_pd(az, _mm256_loadu_pd(&b.z[j]));
    __m256d ex = _mm256_loadu_pd(&db.x[j]), ey = _mm256_loadu_pd(&db.y[j]), ez = _mm256_loadu_pd(&db.z[j]);
    __m256d cx = _mm256_fmsub_pd(dy, ez, _mm256_mul_pd(dz, ey));
    __m256d cy = _mm256_fmsub_pd(dz, ex, _mm256_mul_pd(dx, ez));
    __m256d cz = _mm256_fmsub_pd(dx, ey, _mm256_mul_pd(dy, ex));
    __m256d num = _mm256_fmadd_pd(rz, cz, _mm256_fmadd_pd(ry, cy, _mm256_mul_pd(rx, cx)));
    __m256d d2 = _mm256_fmadd_pd(rz, rz, _mm256_fmadd_pd(ry, ry, _mm256_mul_pd(rx, rx)));
    __m256d den = _mm256_mul_pd(d2, _mm256_sqrt_pd(d2));
    acc = _mm256_add_pd(acc, _mm256_div_pd(num, den));
  }
  double s = hsum(acc);
  for (; j < n; ++j) {
    double rx = a[0] - b.x[j], ry = a[1] - b.y[j], rz = a[2] - b.z[j];
    double cx = da[1] * db.z[j] - da[2] * db.y[j];
    double cy = da[2] * db.x[j] - da[0] * db.z[j];
    double cz = da[0] * db.y[j] - da[1] * db.x[j];
    double d2 = rx * rx + ry * ry + rz * rz;
    s += (rx * cx + ry * cy + rz * cz) / (d2 * std::sqrt(d2));
  }
  return s;
}

double min_dist2_avx2(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1) {
  const __m256d px = _mm256_set1_pd(p[0]), py = _mm256_set1_pd(p[1]), pz = _mm256_set1_pd(p[2]);
  __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  std::size_t j = j0;
  for (; j + 4 <= j1; j += 4) {
    __m256d rx = _mm256_sub_pd(px, _mm256_loadu_pd(&b.x[j]));
    __m256d ry = _mm256_sub_pd(py, _mm256_loadu_pd(&b.y[j]));
    __m256d rz = _mm256_sub_pd(pz, _mm256_loadu_pd(&b.z[j]));
    __m256d d2 = _mm256_fmadd_pd(rz, rz, _mm256_fmadd_pd(ry, ry, _mm256_mul_pd(rx, rx)));
    best = _mm256_min_pd(best, d2);
  }
  return std::min(hmin(best), min_dist2_scalar(p, b, j, j1));
}

}  // namespace ein::kernels
