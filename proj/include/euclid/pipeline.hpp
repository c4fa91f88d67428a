#pragma once

#include "euclid/io.hpp"

namespace euclid {

struct PipelineOptions {
    Profile profile;
    int stages = 3;
    Scalar M = Scalar(mpq_class(5, 2));
    bool through_theta = true;
    int max_blocks = 0; // 0 = one block per Upsilon
};

// CONS-1 stages, then xi, Upsilon, chi and Theta.  A budget stop after the first
// stage is recorded (cons1.partial / theta_status) instead of thrown.
// ParameterError for an invalid M or profile.
BuildArtifacts run_pipeline(const PipelineOptions& opt);

// true when some requested piece was cut short by K_max
bool budget_limited(const BuildArtifacts& b, bool through_theta);

} // namespace euclid

#include <cstdint>

namespace euclid {

// suites: orthonormal, complete, parseval, independence, sup, weak, isometry, full
const std::vector<std::string>& suite_names();

struct SuiteResult {
    std::vector<VerifyReport> reports;
    std::vector<std::string> budget_notes; // checks skipped for K_max
    bool all_pass() const;
};

// draws: random cells / coefficient vectors per randomized check
SuiteResult run_suite(const BuildArtifacts& b, const std::string& suite, std::uint64_t seed = 1, int draws = 10);

// F_n = sum a_i g_n^i
StepFn stage_combination(const Cons1Stage& s, const std::vector<Scalar>& a);
// per block: |sum c theta|^2 = |c|^2 and |H c|^2 = |c|^2 on seeded draws
VerifyReport check_block_isometry(const ThetaSystem& th, std::uint64_t seed, int draws);

} // namespace euclid
