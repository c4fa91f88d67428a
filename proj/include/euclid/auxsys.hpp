#pragma once

#include "euclid/classical.hpp"
#include "euclid/stepfn.hpp"

#include <optional>
#include <string>
#include <vector>

namespace euclid {

enum class ProfileMode { paper, desk };
const char* profile_name(ProfileMode m);
ProfileMode parse_profile(const std::string& s);

// Stage parameters.  Desk mode uses constants; paper mode the original growth
// (2n^2, 2n, 2(k_n+1), offset 4).
struct Profile {
    ProfileMode mode = ProfileMode::desk;
    int depth_c = 3;
    int count_exp_c = 2;
    int p_exp_c = 3;
    int rad_offset = 2;
    std::optional<int> l0_override;
    int k_max = 22;

    static Profile paper();
    static Profile desk();

    int depth(int n) const;
    int count_exp(int n) const;
    int p_exp(int n, int k_n) const;
    void validate() const;
};

// Orthonormal completion of a small fixed set V inside the Haar span
// {h_i : first <= i <= 2^K}, by Gram-Schmidt over h_first, h_first+1, ...
// Stored in Haar coordinates; only indices where V has a nonzero row carry
// a correction, every other member is the Haar function itself.
struct CompletionFamily {
    int K = 0;
    long first = 1; // 1-based Haar index
    int r = 0;
    std::vector<long> supp;    // 1-based Haar indices with nonzero V row, ascending
    std::vector<double> rows;  // supp.size() x r
    std::vector<double> coef;  // c_i = G_i^+ v_i, supp.size() x r
    std::vector<double> scale; // 1/|u_i|, 0 for skipped
    std::vector<char> skipped;
    std::vector<long> skipped_index; // ascending
    // certificate pieces, filled by the builder
    std::vector<double> a_norm; // |scale * c|
    std::vector<double> b_norm; // |scale (G_i c - v)|
    std::vector<double> diag_dev; // | |psi|^2 - 1 |
    std::vector<double> fixed_dev; // max_s |<psi, V_s>|

    long dimension() const { return (long(1) << K) - first + 1; }
    long count() const { return dimension() - long(skipped_index.size()); }
    long haar_index(long nu) const; // nu is 0-based
    std::vector<double> coefficients(long nu) const;
    StepFn materialize(long nu) const;
    long nontrivial() const;
};

// fixed: orthonormal functions in E^{first-level, K}; throws InfeasibleError on rank trouble
CompletionFamily complete_family(const std::vector<StepFn>& fixed, int K, long first);

struct Cons1Stage {
    int n = 0;
    int k_prev = 0;
    int k = 0;             // k_n
    int compression = 0;   // g = ghat(2^compression x)
    int parseval_depth = 0; // deepest cell level where the local Parseval identity holds
    std::vector<int> ghat_rademacher;
    std::vector<StepFn> g;
    long m_prev = 0, m = 0; // m_{n-1}, m_n
    CompletionFamily psi;

    // g, r_{k_n}, h_1^{(k_n+1)}
    std::vector<StepFn> fixed() const;
    StepFn psi_fn(long nu) const; // global 1-based nu
};

struct Cons1Result {
    Profile profile;
    std::vector<Cons1Stage> stages;
    int requested = 0;
    bool partial = false;
    std::string stop_reason;
};

std::vector<StepFn> build_ghat(int n, const Profile& profile, int k_prev);
int compression_exponent(int n, const Profile& profile, int k_prev);
std::vector<StepFn> build_g(int n, const Profile& profile, int k_prev);
// minimal level k with every function in E^k
int detect_level(const std::vector<StepFn>& fns);
CompletionFamily complete_psi(const Cons1Stage& stage);
Cons1Stage build_stage(int n, const Profile& profile, int k_prev, long m_prev);
Cons1Result build_cons1(int stages, const Profile& profile);

// k_1..k_N from the build, then k_N + 2, k_N + 4, ... while <= K_max - 1
std::vector<int> extended_kseq(const Cons1Result& cons1, int kmax_level);

struct XiLabel {
    int n = 0;
    long nu = 0;
    int j = 0;
};

struct XiSystem {
    std::vector<StepFn> xi;
    std::vector<XiLabel> labels;
    std::vector<long> rho;   // rho_0 .. rho_N
    std::vector<long> m_of;  // m_0 .. m_N
    std::vector<long> p;     // p(n)
    std::vector<int> kseq;
    std::vector<std::vector<int>> spikes; // spike k values per built phi group
    long groups = 0;
    // 1-based l for (n, nu, j)
    long index_of(int n, long nu, int j) const;
    XiLabel label_of(long l) const;
};

// builds xi_1 .. xi_count (whole phi groups); BudgetError when a spike falls outside K_max
XiSystem build_xi(const Cons1Result& cons1, const Profile& profile, long count);

struct UpsilonSystem {
    std::vector<StepFn> upsilon;
    std::vector<long> mu;   // mu_0 .. mu_N
    std::vector<int> l;     // l(n)
    std::vector<int> stage; // stage of each member
};

UpsilonSystem build_upsilon(const Cons1Result& cons1, const XiSystem& xi);

} // namespace euclid
