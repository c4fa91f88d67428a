#pragma once

#include "euclid/auxsys.hpp"
#include "euclid/stepfn.hpp"

#include <string>
#include <vector>

namespace euclid {

struct VerifyReport {
    std::string name;
    bool pass = false;
    Scalar residual;
    double tolerance = 0.0;
    std::vector<std::string> witnesses;
    std::string detail;
};

// float default used when tol < 0: 1e-9 sqrt(2^level)
double default_tolerance(int level);

// max |Gram - I|; exact when every function is exact
VerifyReport check_orthonormal(const std::vector<StepFn>& fns, double tol = -1.0);
// rank of the value matrix at level K against 2^K
VerifyReport check_complete(const std::vector<StepFn>& fns, int K);
// rank only, without the 2^K comparison
long span_rank(const std::vector<StepFn>& fns, int K, bool* exact_used = nullptr);

// fixed set plus completion: Gram bounded entrywise, and a Gershgorin certificate
// of full rank in the target span
VerifyReport check_orthonormal(const std::vector<StepFn>& fixed, const CompletionFamily& fam, double tol = -1.0);
VerifyReport check_complete(const std::vector<StepFn>& fixed, const CompletionFamily& fam);

// int_cell (omega + sum a_i g_i)^2 = |cell| (omega^2 + sum a_i^2); ParameterError if cell.level > max_level
VerifyReport check_local_parseval(const std::vector<StepFn>& g, const DyadicInterval& cell, const Scalar& omega,
                                  const std::vector<Scalar>& a, int max_level, double tol = 0.0);
// joint distribution on the common grid equals the product of marginals
VerifyReport check_independence(const std::vector<StepFn>& fns);
VerifyReport check_sup_bound(const std::vector<StepFn>& fns, const Scalar& M);
VerifyReport check_weak_type(const StepFn& f, const mpq_class& p, int k_max, const std::vector<double>& t_grid);

std::string report_line(const VerifyReport& r);

} // namespace euclid
