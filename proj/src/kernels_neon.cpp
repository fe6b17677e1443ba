// NEON kernel variants for aarch64, where NEON is baseline.

#include <cstddef>

#include <arm_neon.h>

namespace lexred::kernels {

double l2sq_neon(const float* a, const float* b, size_t n) {
    float64x2_t acc_lo = vdupq_n_f64(0.0);
    float64x2_t acc_hi = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const float32x4_t d = vsubq_f32(vld1q_f32(a + i), vld1q_f32(b + i));
        const float64x2_t lo = vcvt_f64_f32(vget_low_f32(d));
        const float64x2_t hi = vcvt_f64_f32(vget_high_f32(d));
        acc_lo = vfmaq_f64(acc_lo, lo, lo);
        acc_hi = vfmaq_f64(acc_hi, hi, hi);
    }
    double sum = vaddvq_f64(vaddq_f64(acc_lo, acc_hi));
    for (; i < n; ++i) {
        const float d = a[i] - b[i];
        sum += static_cast<double>(d) * static_cast<double>(d);
    }
    return sum;
}

float dot_neon(const float* a, const float* b, size_t n) {
    float32x4_t acc = vdupq_n_f32(0.0f);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = vfmaq_f32(acc, vld1q_f32(a + i), vld1q_f32(b + i));
    float sum = vaddvq_f32(acc);
    for (; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

} // namespace lexred::kernels
