#pragma once

#include "euclid/scalar.hpp"
#include "euclid/stepfn.hpp"

#include <random>
#include <string>
#include <vector>

namespace th {

inline mpq_class Q(const char* s) { return euclid::parse_rational(s); }
inline euclid::Scalar S(const char* s) { return euclid::Scalar(euclid::parse_rational(s)); }

inline std::vector<mpq_class> qv(const euclid::StepFn& f) { return f.qvals(); }

// small-integer rational step function at the given level
inline euclid::StepFn random_exact(std::mt19937_64& rng, int level, const mpq_class& a = 0, const mpq_class& b = 1)
{
    std::vector<mpq_class> v;
    for (std::size_t i = 0; i < (std::size_t(1) << level); ++i) v.push_back(mpq_class(long(rng() % 17) - 8, 1 + long(rng() % 4)));
    return euclid::StepFn::exact(a, b, level, std::move(v));
}

inline euclid::StepFn random_real(std::mt19937_64& rng, int level)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v;
    for (std::size_t i = 0; i < (std::size_t(1) << level); ++i) v.push_back(u(rng));
    return euclid::StepFn::real(0, 1, level, std::move(v));
}

inline std::vector<double> dv(const euclid::StepFn& f) { return f.as_doubles(); }

} // namespace th
