#pragma once

#include "euclid/auxsys.hpp"
#include "euclid/stepfn.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace euclid {

enum class CoeffFamily { inv_sqrt, inv, geometric, custom, random_sign };
const char* family_name(CoeffFamily f);

// a_1, a_2, ... (1-based)
struct CoeffSeq {
    CoeffFamily family = CoeffFamily::inv_sqrt;
    long length = 0;
    mpq_class ratio{1, 2};        // geometric
    std::vector<Scalar> custom;   // custom list
    std::uint64_t seed = 1;       // random_sign

    // inv_sqrt is the only family outside l^2 (|r| < 1 for geometric, custom
    // and random_sign are finite so formally l^2, flagged by declared length)
    bool l2() const;
    Scalar at(long k) const;
    std::vector<Scalar> take(long n) const;

    static CoeffSeq inv_sqrt(long n);
    static CoeffSeq inv(long n);
    static CoeffSeq geometric(const mpq_class& r, long n);
    static CoeffSeq list(std::vector<Scalar> v);
    static CoeffSeq random_sign(std::uint64_t seed, long n);
    // "inv_sqrt", "inv", "geometric:1/2", "custom:1,-1/2,3", "random:7"
    static CoeffSeq parse(const std::string& s, long n);
};

// S_j = sum_{k<=j} a_k f_k for each checkpoint j (1-based, ascending)
std::vector<StepFn> partial_sums(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                 const std::vector<long>& checkpoints);
// pointwise max_{v<=J} |S_v|
StepFn maximal_partial_sum(const std::vector<StepFn>& fns, const std::vector<Scalar>& a, long J);

struct CheckpointRecord {
    long j = 0;
    double sup = 0.0;
    Scalar l2sq;     // |S_j|_2^2
    Scalar coef_sq;  // sum_{k<=j} a_k^2
};
std::vector<CheckpointRecord> checkpoint_records(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                                 const std::vector<long>& checkpoints);

struct BlockRecord {
    long m = 0;
    long size = 0;
    double big_m = 0.0; // (sum alpha^2)^{1/2}
    double beta = 0.0;  // sum alpha / sqrt(size)
    std::vector<double> eps;
    std::vector<char> in_omega; // (eps/4) big_m <= |beta|
};
// alpha blocks of the given sizes taken consecutively from a
std::vector<BlockRecord> block_diagnostics(const std::vector<long>& sizes, const std::vector<Scalar>& a,
                                           const std::vector<double>& eps = {1.0, 0.5, 0.25, 0.125});
// block sizes l(n) of an Upsilon system
std::vector<long> upsilon_block_sizes(const UpsilonSystem& up);

struct ProfileRow {
    long J = 0;
    double t = 0.0;
    Scalar sup_measure; // |{S*_J > t}|
    Scalar osc_measure; // |{max S_v - min S_v > t}|
};
std::vector<ProfileRow> divergence_profile(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                           const std::vector<double>& t_grid, const std::vector<long>& J_list);

struct TrialStats {
    long trials = 0;
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    double mean_ratio = 0.0;
    std::vector<double> ratios;
};
// |sum a_k f_k|_p / |a|_2 over seeded draws uniform on the sphere; p > 2
TrialStats sp_ratio(const std::vector<StepFn>& fns, double p, long trials, std::uint64_t seed);

struct Le11Stats {
    long trials = 0;
    double max_ratio = 0.0; // max_b int max_m |sum_{k<=m} b_k ftilde_k|^2 / |b|^2
    double c_emp = 0.0;     // same quantity for the input functions
    double bound_ratio = 0.0; // max_ratio / (14 c_emp)
    bool pass = false;
    std::vector<double> ratios;
};
// fns = f_1..f_{N+1}; random seeded b in R^N, plus e_1
Le11Stats le11_experiment(const std::vector<StepFn>& fns, long trials, std::uint64_t seed);
// int max_{m<=N} |sum_{k<=m} b_k f_k|^2 for the given b
Scalar maximal_l2(const std::vector<StepFn>& fns, const std::vector<Scalar>& b);

// default checkpoints for a theta-like system: the block boundaries
std::vector<long> block_checkpoints(const std::vector<long>& varpi);

} // namespace euclid
