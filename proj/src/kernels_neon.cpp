#include "euclid/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace euclid::kernels::neon {

// two float64x2 registers hold lanes {0,1} and {2,3}
namespace {

inline double finish(float64x2_t lo, float64x2_t hi, const double* x, const double* y, std::size_t i, std::size_t n)
{
    double s[4] = {vgetq_lane_f64(lo, 0), vgetq_lane_f64(lo, 1), vgetq_lane_f64(hi, 0), vgetq_lane_f64(hi, 1)};
    for (std::size_t l = 0; i < n; ++i, ++l)
        s[l] += y ? x[i] * y[i] : x[i];
    return (s[0] + s[1]) + (s[2] + s[3]);
}

} // namespace

double dot(const double* x, const double* y, std::size_t n)
{
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
    }
    return finish(lo, hi, x, y, i, n);
}

double sum(const double* x, std::size_t n)
{
    float64x2_t lo = vdupq_n_f64(0.0), hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lo = vaddq_f64(lo, vld1q_f64(x + i));
        hi = vaddq_f64(hi, vld1q_f64(x + i + 2));
    }
    return finish(lo, hi, x, nullptr, i, n);
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n)
{
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    for (; i < n; ++i)
        y[i] += a * x[i];
}

double max_abs(const double* x, std::size_t n)
{
    float64x2_t m = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        m = vmaxq_f64(m, vabsq_f64(vld1q_f64(x + i)));
    double r = vmaxvq_f64(m);
    for (; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > r) r = v;
    }
    return r;
}

void running_max_abs(double* m, const double* s, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t v = vabsq_f64(vld1q_f64(s + i));
        float64x2_t c = vld1q_f64(m + i);
        vst1q_f64(m + i, vbslq_f64(vcgtq_f64(v, c), v, c));
    }
    for (; i < n; ++i) {
        double v = std::fabs(s[i]);
        if (v > m[i]) m[i] = v;
    }
}

} // namespace euclid::kernels::neon

#endif
