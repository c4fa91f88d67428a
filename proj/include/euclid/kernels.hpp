#pragma once

#include <cstddef>

// Float kernels with a fixed summation order.  Reductions use four
// interleaved partial sums (lane i % 4), combined as (s0 + s1) + (s2 + s3);
// the SIMD variants reproduce this order bit for bit.

namespace euclid::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);
Isa detected_isa();
Isa active_isa();
// pin the dispatch (tests); returns the previous choice
Isa force_isa(Isa isa);
bool isa_available(Isa isa);

double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
// m[i] = max(m[i], |s[i]|)
void running_max_abs(double* m, const double* s, std::size_t n);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void running_max_abs(double* m, const double* s, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void running_max_abs(double* m, const double* s, std::size_t n);
} // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
double sum(const double* x, std::size_t n);
double sum_squares(const double* x, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
double max_abs(const double* x, std::size_t n);
void running_max_abs(double* m, const double* s, std::size_t n);
} // namespace neon
#endif

} // namespace euclid::kernels
