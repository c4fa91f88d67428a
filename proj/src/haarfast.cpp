#include "euclid/haarfast.hpp"

#include "euclid/errors.hpp"

#include <cmath>

namespace euclid {

namespace {

bool pow2_size(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

} // namespace

std::vector<double> haar_forward(const std::vector<double>& values)
{
    const std::size_t n = values.size();
    if (!pow2_size(n)) throw LevelError("haar_forward: size must be a power of two");
    std::vector<double> avg(values), out(n, 0.0), tmp(n / 2 + 1);
    // pair means and half differences, coarsening one level at a time
    std::size_t len = n;
    int k = 0;
    while ((std::size_t(1) << k) < n) ++k;
    for (int lev = k - 1; lev >= 0; --lev) {
        std::size_t half = len / 2;
        double scale = std::ldexp(1.0, -(lev / 2)) * ((lev % 2) ? std::sqrt(0.5) : 1.0);
        for (std::size_t j = 0; j < half; ++j) {
            double a = avg[2 * j], b = avg[2 * j + 1];
            tmp[j] = (a + b) * 0.5;
            out[half + j] = (a - b) * 0.5 * scale;
        }
        for (std::size_t j = 0; j < half; ++j) avg[j] = tmp[j];
        len = half;
    }
    out[0] = avg[0];
    return out;
}

std::vector<double> haar_inverse(const std::vector<double>& coeffs)
{
    const std::size_t n = coeffs.size();
    if (!pow2_size(n)) throw LevelError("haar_inverse: size must be a power of two");
    std::vector<double> cur(n, 0.0), nxt(n, 0.0);
    cur[0] = coeffs[0];
    std::size_t len = 1;
    for (int lev = 0; len < n; ++lev) {
        double scale = std::ldexp(1.0, lev / 2) * ((lev % 2) ? std::sqrt(2.0) : 1.0);
        for (std::size_t j = 0; j < len; ++j) {
            double d = coeffs[len + j] * scale;
            nxt[2 * j] = cur[j] + d;
            nxt[2 * j + 1] = cur[j] - d;
        }
        len *= 2;
        std::swap(cur, nxt);
    }
    return cur;
}

} // namespace euclid
