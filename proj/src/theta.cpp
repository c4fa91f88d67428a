#include "euclid/theta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace euclid {

int compute_l0(const Scalar& M)
{
    if (M.is_exact()) {
        // M - 1 > sqrt2  <=>  M > 1 and (M-1)^2 > 2
        mpq_class m1 = M.q() - 1;
        if (m1 <= 0 || m1 * m1 <= 2) throw ParameterError("compute_l0: M must exceed 1 + sqrt2");
        // 2^-l < (m1 - sqrt2)^2 = A - B sqrt2 with A = m1^2 + 2, B = 2 m1
        mpq_class A = m1 * m1 + 2, B = 2 * m1;
        for (int l = 1; l < 4096; ++l) {
            mpq_class rhs = A - mpq_class(1) / pow2(l);
            if (rhs > 0 && 2 * B * B < rhs * rhs) return l;
        }
        throw ParameterError("compute_l0: M too close to 1 + sqrt2");
    }
    double m = M.d();
    double gap = m - std::sqrt(2.0) - 1.0;
    if (!(gap > 0)) throw ParameterError("compute_l0: M must exceed 1 + sqrt2");
    for (int l = 1; l < 1024; ++l)
        if (std::sqrt(std::ldexp(1.0, -l)) < gap) return l;
    throw ParameterError("compute_l0: M too close to 1 + sqrt2");
}

ChiSystem build_chi(const std::vector<StepFn>& upsilon, const std::vector<int>& kseq, const Scalar& M, int l0,
                    int max_blocks)
{
    if (upsilon.empty()) throw ParameterError("build_chi: no upsilon functions");
    if (kseq.empty()) throw BudgetError("build_chi: empty Rademacher index sequence");
    for (std::size_t i = 1; i < kseq.size(); ++i)
        if (kseq[i] <= kseq[i - 1]) throw ParameterError("build_chi: k-sequence must increase strictly");
    ChiSystem cs;
    cs.M = M;
    cs.l0 = l0;
    cs.kseq = kseq;
    const long K = long(kseq.size());
    auto kat = [&](long idx) {
        if (idx < 1 || idx > K) throw BudgetError("build_chi: Rademacher index sequence exhausted below K_max");
        return kseq[idx - 1];
    };

    std::vector<int> lev;
    for (auto& u : upsilon) lev.push_back(detect_level(u));

    // nu_0: minimal with Upsilon_1 in E^{k_{nu_0}}
    long nu0 = 1;
    while (kat(nu0) < lev[0]) ++nu0;
    cs.nu0 = nu0;
    cs.nu.push_back(nu0);
    for (long i = 1; i <= nu0; ++i) {
        cs.chi.push_back(rademacher(kat(i)));
        cs.rad.push_back(kat(i));
    }

    const int J = max_blocks > 0 ? std::min<int>(max_blocks, int(upsilon.size())) : int(upsilon.size());
    long last = nu0;
    for (int j = 1; j <= J; ++j) {
        int kprev = kat(last);
        if (lev[j - 1] > kprev) throw InfeasibleError("build_chi: Upsilon_j is not in E^{k_{nu_{j-1}}}");
        int n = kprev + l0;
        // the next Upsilon must sit below the last Rademacher of this block
        if (j < int(upsilon.size())) {
            while (true) {
                if (n > 40) throw BudgetError("build_chi: block exponent out of range");
                long end = last + (long(1) << n) - 1;
                if (end > K) throw BudgetError("build_chi: block " + std::to_string(j) + " needs 2^" + std::to_string(n) +
                                               " - 1 Rademacher functions; the k-sequence below K_max has " +
                                               std::to_string(K - last) + " left");
                if (kat(end) >= lev[j]) break;
                ++n;
            }
        } else if (last + (long(1) << n) - 1 > K) {
            throw BudgetError("build_chi: block " + std::to_string(j) + " needs 2^" + std::to_string(n) +
                              " - 1 Rademacher functions beyond the k-sequence");
        }
        ChiBlock b;
        b.j = j;
        b.first = long(cs.chi.size());
        b.size = long(1) << n;
        b.n = n;
        b.k_prev = kprev;
        b.k_first = last + 1;
        cs.chi.push_back(upsilon[j - 1]);
        cs.rad.push_back(-1);
        for (long i = 1; i < b.size; ++i) {
            int k = kat(last + i);
            cs.chi.push_back(rademacher(k));
            cs.rad.push_back(k);
        }
        last += b.size - 1;
        cs.blocks.push_back(b);
        cs.nu.push_back(last);
    }
    return cs;
}

ThetaSystem build_theta(const ChiSystem& chi)
{
    ThetaSystem th;
    th.M = chi.M;
    th.chi = chi;
    for (long i = 0; i < chi.nu0; ++i) th.theta.push_back(chi.chi[i]);
    th.varpi.push_back(chi.nu0);
    for (auto& b : chi.blocks) {
        if (b.n > dense_matrix_max_log) throw BudgetError("build_theta: Haar matrix H_n too large");
        OrthoMatrix H = haar_matrix(b.n);
        std::vector<StepFn> in(chi.chi.begin() + b.first, chi.chi.begin() + b.first + b.size);
        auto out = apply_matrix(H, in);
        for (auto& f : out) th.theta.push_back(std::move(f));
        th.varpi.push_back(th.varpi.back() + b.size);
    }
    return th;
}

double ThetaSystem::block_bound(std::size_t j) const
{
    const auto& b = chi.blocks.at(j);
    double su = sup_norm(chi.chi[b.first]).d();
    return std::sqrt(std::ldexp(1.0, -b.n)) * su + 1.0 + std::sqrt(2.0);
}

std::vector<Scalar> theta_to_chi(const ThetaSystem& th, std::size_t block, const std::vector<Scalar>& c)
{
    const auto& b = th.chi.blocks.at(block);
    if (long(c.size()) != b.size) throw ParameterError("theta_to_chi: coefficient length mismatch");
    return matrix_times(haar_matrix(b.n), c);
}

} // namespace euclid
