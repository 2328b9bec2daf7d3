#pragma once

// Pairwise loops over sampled curves. Scalar reference plus an AVX2/FMA variant picked at runtime.

#include <cstddef>
#include <vector>

namespace ein {

enum class KernelMode { Auto, Scalar, Avx2 };

bool avx2_available();
// Mode actually used for a request (Auto and unavailable Avx2 resolve to what the CPU supports).
KernelMode resolve_mode(KernelMode m);

// Structure-of-arrays copy of n points.
struct Soa3 {
  std::vector<double> x, y, z;
  std::size_t size() const { return x.size(); }
};

// Sum over i, j of (a_i - b_j) . (da_i x db_j) / |a_i - b_j|^3.
double gauss_sum(const Soa3& a, const Soa3& da, const Soa3& b, const Soa3& db, KernelMode m = KernelMode::Auto);

// min over j in [j0, j1) of |p - b_j|^2
double min_dist2(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1,
                 KernelMode m = KernelMode::Auto);

namespace kernels {
double gauss_row_scalar(const double a[3], const double da[3], const Soa3& b, const Soa3& db);
double gauss_row_avx2(const double a[3], const double da[3], const Soa3& b, const Soa3& db);
double min_dist2_scalar(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1);
double min_dist2_avx2(const double p[3], const Soa3& b, std::size_t j0, std::size_t j1);
}  // namespace kernels

}  // namespace ein
