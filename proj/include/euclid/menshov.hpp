#pragma once

#include "euclid/stepfn.hpp"

#include <vector>

namespace euclid {

// M_k on [-1,1], level k+1; value 2^{k/2}/(8i) on ((i-1)2^-k, i 2^-k)
StepFn menshov(int k);
// M_k(x - i 2^-k), cyclic on [-1,1]
StepFn menshov_translate(int k, long i);

struct MenshovSystem {
    int k = 0;
    std::vector<StepFn> functions; // on [-2,2], level k+3
    double gram_residual = 0.0;
    bool exact_tails = false;
};

// orthonormal extension of {M_{k,i}} to [-2,2]: zero on [-2,-1),
// tails in E^{k+1}_{[1,2]} with zero integral
MenshovSystem lemma1_system(int k);
// true when the tails are rational (currently k = 2)
bool lemma1_exact_tails(int k);
// tails only, one per function, on [1,2] at level k+1
std::vector<StepFn> lemma1_tails(int k);

// f(x) = 2^{k/p} f(2^k (x - 2^-k)) on (2^-k, 2^{-k+1}], k = 1..k_max, 0 below
StepFn rearrange_natural(const StepFn& f, const mpq_class& p, int k_max);
// |{x : |f(x)| > t}|
Scalar distribution(const StepFn& f, const Scalar& t);
// same measure for the rearrangement, summed band by band without materializing
Scalar rearranged_distribution(const StepFn& f, const mpq_class& p, int k_max, const Scalar& t);
// sum_{k > k_max} 2^-k
mpq_class truncation_residual(int k_max);
// 2 / (p (2^{1/p} - 1))
double weak_type_constant(double p);
// int |f|^p over the domain
Scalar lp_norm_pow(const StepFn& f, const mpq_class& p);

} // namespace euclid
