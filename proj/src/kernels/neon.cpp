#include "aifnav/kernels/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace aifnav::kernels {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 = vfmaq_f64(a0, vld1q_f64(x + i), vld1q_f64(y + i));
        a1 = vfmaq_f64(a1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(a0, a1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double sum_neon(const double* x, std::size_t n) {
    float64x2_t a0 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) a0 = vaddq_f64(a0, vld1q_f64(x + i));
    double acc = vaddvq_f64(a0);
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double max_neon(const double* x, std::size_t n) {
    if (n < 2) return scalar_table().max(x, n);
    float64x2_t m = vld1q_f64(x);
    std::size_t i = 2;
    for (; i + 2 <= n; i += 2) m = vmaxq_f64(m, vld1q_f64(x + i));
    double best = vmaxvq_f64(m);
    for (; i < n; ++i)
        if (x[i] > best) best = x[i];
    return best;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void hadamard_neon(const double* x, const double* y, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(out + i, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    for (; i < n; ++i) out[i] = x[i] * y[i];
}

void scale_neon(double a, double* x, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

const KernelTable kNeon{"neon", dot_neon, sum_neon, max_neon, axpy_neon, hadamard_neon, scale_neon};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace aifnav::kernels

#else

namespace aifnav::kernels {
const KernelTable* neon_table() { return nullptr; }
}  // namespace aifnav::kernels

#endif
