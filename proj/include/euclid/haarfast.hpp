#pragma once

#include <cstddef>
#include <vector>

namespace euclid {

// Orthonormal Haar coordinates of a level-K step function on [0,1].
// out[0] = <f, h_1>, out[n-1] = <f, h_n> with h_n = h^{(k)}_j, n = 2^k + j.
std::vector<double> haar_forward(const std::vector<double>& values);
std::vector<double> haar_inverse(const std::vector<double>& coeffs);

// (k, j) of the Haar index n >= 2
inline int haar_index_level(long n)
{
    int k = 0;
    while ((long(1) << (k + 1)) < n) ++k;
    return k;
}

} // namespace euclid
