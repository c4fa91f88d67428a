#include "euclid/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cmath>

#define AVX2_FN __attribute__((target("avx2")))

namespace euclid::kernels::avx2 {

namespace {

AVX2_FN inline double finish(__m256d acc, const double* x, const double* y, std::size_t i, std::size_t n)
{
    alignas(32) double s[4];
    _mm256_store_pd(s, acc);
    for (std::size_t l = 0; i < n; ++i, ++l)
        s[l] += y ? x[i] * y[i] : x[i];
    return (s[0] + s[1]) + (s[2] + s[3]);
}

AVX2_FN inline __m256d abs_pd(__m256d v)
{
    const __m256d sign = _mm256_set1_pd(-0.0);
    return _mm256_andnot_pd(sign, v);
}

} // namespace

AVX2_FN double dot(const double* x, const double* y, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    return finish(acc, x, y, i, n);
}

AVX2_FN double sum(const double* x, std::size_t n)
{
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    return finish(acc, x, nullptr, i, n);
}

AVX2_FN double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

AVX2_FN void axpy(double a, const double* x, double* y, std::size_t n)
{
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
        _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), p));
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

AVX2_FN double max_abs(const double* x, std::size_t n)
{
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(x + i)));
    alignas(32) double s[4];
    _mm256_store_pd(s, m);
    double r = 0.0;
    for (double v : s)
        if (v > r) r = v;
    for (; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > r) r = v;
    }
    return r;
}

AVX2_FN void running_max_abs(double* m, const double* s, std::size_t n)
{
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = abs_pd(_mm256_loadu_pd(s + i));
        __m256d c = _mm256_loadu_pd(m + i);
        // keeps c where v > c is false, matching the scalar comparison
        _mm256_storeu_pd(m + i, _mm256_blendv_pd(c, v, _mm256_cmp_pd(v, c, _CMP_GT_OQ)));
    }
    for (; i < n; ++i) {
        double v = std::fabs(s[i]);
        if (v > m[i]) m[i] = v;
    }
}

} // namespace euclid::kernels::avx2

#endif
