#include "euclid/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace euclid::kernels {

namespace {

struct Table {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*sum_squares)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    void (*running_max_abs)(double*, const double*, std::size_t);
};

const Table scalar_table{scalar::dot, scalar::sum, scalar::sum_squares,
                         scalar::axpy, scalar::max_abs, scalar::running_max_abs};
#if defined(__x86_64__) || defined(__i386__)
const Table avx2_table{avx2::dot, avx2::sum, avx2::sum_squares, avx2::axpy, avx2::max_abs, avx2::running_max_abs};
#endif
#if defined(__aarch64__)
const Table neon_table{neon::dot, neon::sum, neon::sum_squares, neon::axpy, neon::max_abs, neon::running_max_abs};
#endif

const Table& table_for(Isa isa)
{
    switch (isa) {
#if defined(__x86_64__) || defined(__i386__)
    case Isa::avx2: return avx2_table;
#endif
#if defined(__aarch64__)
    case Isa::neon: return neon_table;
#endif
    default: return scalar_table;
    }
}

Isa initial_isa()
{
    // EUCLID_ISA=scalar forces the reference path
    const char* env = std::getenv("EUCLID_ISA");
    if (env && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return detected_isa();
}

std::atomic<Isa>& current()
{
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

const Table& active() { return table_for(current().load(std::memory_order_relaxed)); }

} // namespace

const char* isa_name(Isa isa)
{
    switch (isa) {
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
    default: return "scalar";
    }
}

Isa detected_isa()
{
#if defined(__x86_64__) || defined(__i386__)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) return Isa::avx2;
    return Isa::scalar;
#elif defined(__aarch64__)
    return Isa::neon;
#else
    return Isa::scalar;
#endif
}

bool isa_available(Isa isa)
{
    if (isa == Isa::scalar) return true;
    return detected_isa() == isa;
}

Isa active_isa() { return current().load(); }

Isa force_isa(Isa isa)
{
    if (!isa_available(isa)) isa = Isa::scalar;
    return current().exchange(isa);
}

double dot(const double* x, const double* y, std::size_t n) { return active().dot(x, y, n); }
double sum(const double* x, std::size_t n) { return active().sum(x, n); }
double sum_squares(const double* x, std::size_t n) { return active().sum_squares(x, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
double max_abs(const double* x, std::size_t n) { return active().max_abs(x, n); }
void running_max_abs(double* m, const double* s, std::size_t n) { active().running_max_abs(m, s, n); }

} // namespace euclid::kernels
