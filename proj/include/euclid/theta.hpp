#pragma once

#include "euclid/classical.hpp"
#include "euclid/stepfn.hpp"

#include <vector>

namespace euclid {

// minimal l_0 >= 1 with sqrt(2^-l_0) < M - sqrt2 - 1; exact for rational M
int compute_l0(const Scalar& M);

struct ChiBlock {
    int j = 0;
    long first = 0; // 0-based flat index of Upsilon_j
    long size = 0;  // 2^{n_j}
    int n = 0;
    int k_prev = 0;     // k_{nu_{j-1}}: level bound of Upsilon_j
    long k_first = 0;   // 1-based k-sequence index of the first Rademacher in the block
};

struct ChiSystem {
    std::vector<StepFn> chi;
    std::vector<int> rad; // Rademacher index per member, -1 for an Upsilon
    std::vector<ChiBlock> blocks;
    std::vector<long> nu; // nu_0, nu_1, ...: last k-sequence index used after each block
    long nu0 = 0;
    int l0 = 0;
    Scalar M;
    std::vector<int> kseq;
};

// Interleave upsilon with Rademacher blocks.  Rademacher indices are consumed
// from kseq in order.  Stops after max_blocks blocks (0 = one per upsilon);
// BudgetError when the sequence or the Haar matrix size runs out.
ChiSystem build_chi(const std::vector<StepFn>& upsilon, const std::vector<int>& kseq, const Scalar& M, int l0,
                    int max_blocks = 0);

struct ThetaSystem {
    std::vector<StepFn> theta;
    std::vector<long> varpi; // varpi_0 = nu_0, varpi_j = varpi_{j-1} + 2^{n_j}
    Scalar M;
    ChiSystem chi;

    // 2^{-n_j/2} sup|Upsilon_j| + 1 + sqrt2
    double block_bound(std::size_t j) const;
};

ThetaSystem build_theta(const ChiSystem& chi);

// b = H_{n_j} c for the coefficients of block j, so sum c_i theta_i = sum b_i chi_i
std::vector<Scalar> theta_to_chi(const ThetaSystem& th, std::size_t block, const std::vector<Scalar>& c);

} // namespace euclid
