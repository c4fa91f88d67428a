#include "euclid/kernels.hpp"

#include <cmath>

namespace euclid::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n)
{
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s[0] += x[i] * y[i];
        s[1] += x[i + 1] * y[i + 1];
        s[2] += x[i + 2] * y[i + 2];
        s[3] += x[i + 3] * y[i + 3];
    }
    for (std::size_t l = 0; i < n; ++i, ++l)
        s[l] += x[i] * y[i];
    return (s[0] + s[1]) + (s[2] + s[3]);
}

double sum(const double* x, std::size_t n)
{
    double s[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s[0] += x[i];
        s[1] += x[i + 1];
        s[2] += x[i + 2];
        s[3] += x[i + 3];
    }
    for (std::size_t l = 0; i < n; ++i, ++l)
        s[l] += x[i];
    return (s[0] + s[1]) + (s[2] + s[3]);
}

double sum_squares(const double* x, std::size_t n) { return dot(x, x, n); }

void axpy(double a, const double* x, double* y, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

double max_abs(const double* x, std::size_t n)
{
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(x[i]);
        if (v > m) m = v;
    }
    return m;
}

void running_max_abs(double* m, const double* s, std::size_t n)
{
    for (std::size_t i = 0; i < n; ++i) {
        double v = std::fabs(s[i]);
        if (v > m[i]) m[i] = v;
    }
}

} // namespace euclid::kernels::scalar
