#pragma once

#include "euclid/stepfn.hpp"

#include <string>
#include <vector>

namespace euclid {

// h_1 = 1, h_{2^k + j} = h^{(k)}_j on [0,1]
StepFn haar(long n);
// +-2^{k/2} on the two halves of the j-th level-k cell; level k+1
StepFn haar_level(int k, long j);
// sgn sin(2^{n+1} pi t): level n+1, alternating, first cell +1
StepFn rademacher(int n);

enum class MatrixKind { haar, olevskii, custom };
const char* kind_name(MatrixKind k);
MatrixKind parse_kind(const std::string& s);

struct OrthoMatrix {
    int size = 0;
    MatrixKind kind = MatrixKind::custom;
    std::vector<Scalar> entries; // row-major

    const Scalar& at(int i, int j) const { return entries[std::size_t(i) * size + j]; }
    Scalar& at(int i, int j) { return entries[std::size_t(i) * size + j]; }
    Mode mode() const;
    // max |M^T M - I| entry; 0 exactly when every entry is rational and the check holds
    Scalar orthogonality_residual() const;
    Scalar transpose_product(int i, int j) const;
};

// largest dense matrix built on request
constexpr int dense_matrix_max_log = 12;

OrthoMatrix haar_matrix(int k);
OrthoMatrix k_matrix(long N);
Scalar k_delta(long N);
OrthoMatrix identity_matrix(int n);

// output_j = sum_i m[i][j] * fns[i]
std::vector<StepFn> apply_matrix(const OrthoMatrix& m, const std::vector<StepFn>& fns);
// coefficient side: b = M c, so sum_j c_j out_j = sum_i b_i fns_i
std::vector<Scalar> matrix_times(const OrthoMatrix& m, const std::vector<Scalar>& c);

// N = fns.size() - 1 outputs; the first N outputs of apply_matrix(k_matrix(N), fns)
std::vector<StepFn> le11_transform(const std::vector<StepFn>& fns);

} // namespace euclid
