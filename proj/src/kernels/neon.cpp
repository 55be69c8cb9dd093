// AArch64 variant. Two float64x2 registers stand in for the four scalar
// lanes: lo holds lanes {0,1}, hi holds lanes {2,3}.
#include <arm_neon.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace newssum::kernels::neon {
namespace {

inline double combine_lanes(float64x2_t lo, float64x2_t hi) noexcept {
  return (vgetq_lane_f64(lo, 0) + vgetq_lane_f64(lo, 1)) +
         (vgetq_lane_f64(hi, 0) + vgetq_lane_f64(hi, 1));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) noexcept {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    // vmulq + vaddq, not vfmaq: results must match the unfused scalar path.
    lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = combine_lanes(lo, hi);
  for (; i < n; ++i) total += a[i] * b[i];
  return total;
}

double sum(const double* a, std::size_t n) noexcept {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    lo = vaddq_f64(lo, vld1q_f64(a + i));
    hi = vaddq_f64(hi, vld1q_f64(a + i + 2));
  }
  double total = combine_lanes(lo, hi);
  for (; i < n; ++i) total += a[i];
  return total;
}

double l1_distance(const double* a, const double* b, std::size_t n) noexcept {
  float64x2_t lo = vdupq_n_f64(0.0);
  float64x2_t hi = vdupq_n_f64(0.0);
  const std::size_t blocked = n - n % 4;
  std::size_t i = 0;
  for (; i < blocked; i += 4) {
    lo = vaddq_f64(lo, vabdq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    hi = vaddq_f64(hi, vabdq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
  }
  double total = combine_lanes(lo, hi);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) noexcept {
  const float64x2_t va = vdupq_n_f64(alpha);
  const std::size_t blocked = n - n % 2;
  std::size_t i = 0;
  for (; i < blocked; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

}  // namespace newssum::kernels::neon
