#include "euclid/auxsys.hpp"

#include "euclid/haarfast.hpp"
#include "euclid/menshov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace euclid {

const char* profile_name(ProfileMode m) { return m == ProfileMode::paper ? "paper" : "desk"; }

ProfileMode parse_profile(const std::string& s)
{
    if (s == "paper") return ProfileMode::paper;
    if (s == "desk") return ProfileMode::desk;
    throw ParameterError("unknown profile: " + s);
}

Profile Profile::paper()
{
    Profile p;
    p.mode = ProfileMode::paper;
    p.rad_offset = 4;
    return p;
}

Profile Profile::desk() { return Profile{}; }

int Profile::depth(int n) const { return mode == ProfileMode::paper ? 2 * n * n : depth_c; }
int Profile::count_exp(int n) const { return mode == ProfileMode::paper ? 2 * n : count_exp_c; }
int Profile::p_exp(int, int k_n) const { return mode == ProfileMode::paper ? 2 * (k_n + 1) : p_exp_c; }

void Profile::validate() const
{
    if (depth_c < 2) throw ParameterError("profile: depth must be >= 2");
    // the Menshov family needs k >= 2, so one g per stage pair is not available
    if (count_exp_c < 2) throw ParameterError("profile: count_exp must be >= 2");
    if (p_exp_c < 1) throw ParameterError("profile: p_exp must be >= 1");
    if (rad_offset < 2) throw ParameterError("profile: rad_offset must be >= 2");
    if (k_max < 1 || k_max > 30) throw ParameterError("profile: K_max must lie in 1..30");
    if (l0_override && *l0_override < 1) throw ParameterError("profile: l_0 must be >= 1");
}

namespace {

StepFn relabel(const StepFn& f, const mpq_class& a, const mpq_class& b, const Scalar& amp)
{
    StepFn s = scale(amp, f);
    if (s.is_exact()) return StepFn::exact(a, b, s.level(), s.qvals());
    return StepFn::real(a, b, s.level(), s.dvals());
}

double dot(const double* x, const double* y, int r)
{
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += x[i] * y[i];
    return s;
}

} // namespace

std::vector<StepFn> build_ghat(int n, const Profile& profile, int k_prev)
{
    profile.validate();
    if (n < 1) throw IndexError("build_ghat: n must be >= 1");
    BudgetScope scope(profile.k_max);
    const mpq_class half(1, 2);
    std::vector<StepFn> out;

    if (profile.mode == ProfileMode::paper && n == 1) {
        auto sys = lemma1_system(2);
        for (int i = 0; i < 4; ++i) {
            // 2 f_2^i(8x - 2) on [0,1/2]
            StepFn left = relabel(sys.functions[i], 0, half, Scalar(2));
            StepFn right = restrict(rademacher(9 + i), half, 1);
            out.push_back(concat({left, right}));
        }
        return out;
    }

    const int D = profile.depth(n);
    const int c = profile.count_exp(n);
    const int cnt = 1 << c;
    auto sys = lemma1_system(c);
    Scalar base = sqrt(Scalar(2) / Scalar(D));
    for (int i = 0; i < cnt; ++i) {
        // one full period of f per band; x -> 2^{k+2}(x - 2^-k) starts at the middle of [-2,2]
        StepFn rot = translate_dyadic(sys.functions[i], 1, 1);
        std::vector<StepFn> parts;
        parts.push_back(relabel(rot, 0, mpq_class(1) / pow2(D), base * pow2_half(D)));
        for (int k = D; k >= 2; --k)
            parts.push_back(relabel(rot, mpq_class(1) / pow2(k), mpq_class(2) / pow2(k), base * pow2_half(k)));
        int idx = profile.mode == ProfileMode::paper ? k_prev + 4 + i : profile.rad_offset + i;
        StepFn left = concat(parts);
        StepFn right = restrict(rademacher(idx), half, 1);
        out.push_back(concat({left, right}));
    }
    return out;
}

int compression_exponent(int n, const Profile& profile, int k_prev)
{
    if (n == 1) return 0;
    if (profile.mode == ProfileMode::paper) return k_prev + 2 * n * n + 2;
    // one extra level so that every r_{k_{n-1}} cell holds whole periods
    return k_prev + 1;
}

std::vector<StepFn> build_g(int n, const Profile& profile, int k_prev)
{
    auto gh = build_ghat(n, profile, k_prev);
    BudgetScope scope(profile.k_max);
    int comp = compression_exponent(n, profile, k_prev);
    std::vector<StepFn> out;
    out.reserve(gh.size());
    for (auto& f : gh) out.push_back(dilate_pow2(f, comp));
    return out;
}

int detect_level(const std::vector<StepFn>& fns)
{
    int k = 0;
    for (auto& f : fns) k = std::max(k, detect_level(f));
    return k;
}

long CompletionFamily::haar_index(long nu) const
{
    if (nu < 0 || nu >= count()) throw IndexError("completion: member index out of range");
    long idx = first + nu;
    for (long s : skipped_index) {
        if (s <= idx)
            ++idx;
        else
            break;
    }
    return idx;
}

long CompletionFamily::nontrivial() const
{
    long c = 0;
    for (std::size_t t = 0; t < supp.size(); ++t)
        if (!skipped[t]) ++c;
    return c;
}

std::vector<double> CompletionFamily::coefficients(long nu) const
{
    const long i = haar_index(nu);
    std::vector<double> x(std::size_t(1) << K, 0.0);
    auto it = std::lower_bound(supp.begin(), supp.end(), i);
    if (it == supp.end() || *it != i) {
        x[i - 1] = 1.0;
        return x;
    }
    std::size_t t = std::size_t(it - supp.begin());
    const double* c = &coef[t * r];
    const double sc = scale[t];
    x[i - 1] = sc;
    for (std::size_t u = t; u < supp.size(); ++u) x[supp[u] - 1] -= sc * dot(&rows[u * r], c, r);
    return x;
}

StepFn CompletionFamily::materialize(long nu) const
{
    const long i = haar_index(nu);
    if (!std::binary_search(supp.begin(), supp.end(), i)) return haar(i);
    return StepFn::real(0, 1, K, haar_inverse(coefficients(nu)));
}

CompletionFamily complete_family(const std::vector<StepFn>& fixed, int K, long first)
{
    if (fixed.empty()) throw ParameterError("complete_family: empty fixed set");
    check_budget(K, "complete_family");
    const long N = long(1) << K;
    if (first < 1 || first > N) throw IndexError("complete_family: bad first index");
    const int r = int(fixed.size());

    std::vector<std::vector<double>> hv;
    for (auto& f : fixed) {
        if (f.a() != 0 || f.b() != 1) throw DomainError("complete_family: functions must live on [0,1]");
        if (detect_level(f) > K) throw LevelError("complete_family: function above the ambient level");
        StepFn c = canonicalize(f);
        hv.push_back(haar_forward(values_at(c, K)));
        auto& h = hv.back();
        for (long i = 0; i < first - 1; ++i)
            if (std::fabs(h[i]) > 1e-9) throw InfeasibleError("complete_family: fixed function has mass outside the target span");
    }

    CompletionFamily fam;
    fam.K = K;
    fam.first = first;
    fam.r = r;
    // coefficients below this are rounding noise of mean-zero cells
    const double zero_tol = 1e-11;
    for (long i = first; i <= N; ++i) {
        bool nz = false;
        for (int s = 0; s < r && !nz; ++s) nz = std::fabs(hv[s][i - 1]) > zero_tol;
        if (!nz) continue;
        fam.supp.push_back(i);
        for (int s = 0; s < r; ++s) fam.rows.push_back(std::fabs(hv[s][i - 1]) > zero_tol ? hv[s][i - 1] : 0.0);
    }
    hv.clear();

    const std::size_t S = fam.supp.size();
    fam.coef.assign(S * r, 0.0);
    fam.scale.assign(S, 0.0);
    fam.skipped.assign(S, 0);
    fam.a_norm.assign(S, 0.0);
    fam.b_norm.assign(S, 0.0);
    fam.diag_dev.assign(S, 0.0);
    fam.fixed_dev.assign(S, 0.0);

    // suffix Gram G_{i+1}; the rank grows by one exactly at the indices Gram-Schmidt drops
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(r, r);
    int rank = 0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (std::size_t tt = S; tt-- > 0;) {
        Eigen::Map<const Eigen::VectorXd> v(&fam.rows[tt * r], r);
        double vv = v.squaredNorm();
        Eigen::VectorXd pinv_v = Eigen::VectorXd::Zero(r);
        double s = 0.0;
        bool grows = true;
        if (rank > 0) {
            es.compute(G);
            // eigenvalues ascending: the last `rank` span the range
            Eigen::VectorXd perp = v;
            for (int e = r - rank; e < r; ++e) {
                double pe = es.eigenvectors().col(e).dot(v);
                perp -= pe * es.eigenvectors().col(e);
                pinv_v += es.eigenvectors().col(e) * (pe / es.eigenvalues()(e));
                s += pe * pe / es.eigenvalues()(e);
            }
            grows = perp.squaredNorm() > 1e-10 * vv;
        }
        G += v * v.transpose();
        if (grows) {
            ++rank;
            if (rank > r) throw InfeasibleError("complete_family: fixed functions are not orthonormal");
            fam.skipped[tt] = 1;
            continue;
        }
        Eigen::VectorXd c = pinv_v / (1.0 + s);
        double sc = std::sqrt(1.0 + s);
        Eigen::VectorXd Gc = G * c;
        Eigen::VectorXd b = sc * (Gc - v);
        for (int q = 0; q < r; ++q) fam.coef[tt * r + q] = c(q);
        fam.scale[tt] = sc;
        fam.a_norm[tt] = sc * c.norm();
        fam.b_norm[tt] = b.norm();
        fam.fixed_dev[tt] = b.cwiseAbs().maxCoeff();
        fam.diag_dev[tt] = std::fabs(sc * sc * (1.0 - 2.0 * c.dot(v) + c.dot(Gc)) - 1.0);
    }
    if (rank != r) throw InfeasibleError("complete_family: fixed set does not have full rank in the target span");
    for (std::size_t t = 0; t < S; ++t)
        if (fam.skipped[t]) fam.skipped_index.push_back(fam.supp[t]);
    return fam;
}

std::vector<StepFn> Cons1Stage::fixed() const
{
    std::vector<StepFn> f = g;
    f.push_back(rademacher(k));
    f.push_back(haar_level(k + 1, 1));
    return f;
}

StepFn Cons1Stage::psi_fn(long nu) const
{
    if (nu <= m_prev || nu > m) throw IndexError("psi index outside this stage");
    return psi.materialize(nu - m_prev - 1);
}

CompletionFamily complete_psi(const Cons1Stage& stage)
{
    long first = stage.n == 1 ? 1 : (long(1) << (stage.k_prev + 2)) + 1;
    return complete_family(stage.fixed(), stage.k + 2, first);
}

Cons1Stage build_stage(int n, const Profile& profile, int k_prev, long m_prev)
{
    BudgetScope scope(profile.k_max);
    Cons1Stage st;
    st.n = n;
    st.k_prev = k_prev;
    st.g = build_g(n, profile, k_prev);
    st.compression = compression_exponent(n, profile, k_prev);
    st.parseval_depth = st.compression + 1;
    st.k = detect_level(st.g);
    for (int i = 0; i < int(st.g.size()); ++i)
        st.ghat_rademacher.push_back(profile.mode == ProfileMode::paper ? (n == 1 ? 9 + i : k_prev + 4 + i)
                                                                          : profile.rad_offset + i);
    if (n > 1) {
        for (auto& f : st.g)
            if (!mean_zero_on(f, k_prev + 1, 1e-12))
                throw InfeasibleError("build_stage: g is not mean-zero on level k_{n-1}+1 cells");
    }
    check_budget(st.k + 2, "build_stage");
    st.m_prev = m_prev;
    st.psi = complete_psi(st);
    st.m = m_prev + st.psi.count();
    return st;
}

Cons1Result build_cons1(int stages, const Profile& profile)
{
    profile.validate();
    if (stages < 1) throw ParameterError("build_cons1: need at least one stage");
    Cons1Result res;
    res.profile = profile;
    res.requested = stages;
    int k_prev = 0;
    long m_prev = 0;
    for (int n = 1; n <= stages; ++n) {
        try {
            res.stages.push_back(build_stage(n, profile, k_prev, m_prev));
        } catch (const BudgetError& e) {
            if (res.stages.empty()) throw;
            res.partial = true;
            res.stop_reason = e.what();
            break;
        }
        k_prev = res.stages.back().k;
        m_prev = res.stages.back().m;
    }
    return res;
}

std::vector<int> extended_kseq(const Cons1Result& cons1, int kmax_level)
{
    std::vector<int> ks;
    for (auto& s : cons1.stages) ks.push_back(s.k);
    // step 2 keeps r_k orthogonal to every spike h_1^{(k'+1)}
    int last = ks.empty() ? 0 : ks.back();
    while (last + 2 <= kmax_level - 1) {
        last += 2;
        ks.push_back(last);
    }
    return ks;
}

long XiSystem::index_of(int n, long nu, int j) const
{
    if (n < 1 || n >= int(rho.size())) throw IndexError("xi: stage out of range");
    return rho[n - 1] + (nu - m_of[n - 1] - 1) * p[n - 1] + j;
}

XiLabel XiSystem::label_of(long l) const
{
    for (std::size_t n = 1; n < rho.size(); ++n)
        if (l > rho[n - 1] && l <= rho[n]) {
            long off = l - rho[n - 1] - 1;
            XiLabel lab;
            lab.n = int(n);
            lab.nu = m_of[n - 1] + 1 + off / p[n - 1];
            lab.j = int(off % p[n - 1]) + 1;
            return lab;
        }
    throw IndexError("xi: index outside the enumerated range");
}

XiSystem build_xi(const Cons1Result& cons1, const Profile& profile, long count)
{
    profile.validate();
    BudgetScope scope(profile.k_max);
    XiSystem xs;
    xs.kseq = extended_kseq(cons1, profile.k_max);
    xs.rho.push_back(0);
    xs.m_of.push_back(0);
    for (auto& st : cons1.stages) {
        int pe = profile.p_exp(st.n, st.k);
        if (pe > 62) throw BudgetError("build_xi: p(n) does not fit a machine integer");
        long pn = long(1) << pe;
        xs.p.push_back(pn);
        xs.rho.push_back(xs.rho.back() + pn * (st.m - st.m_prev));
        xs.m_of.push_back(st.m);
    }
    long q = 0; // spikes consumed so far
    for (auto& st : cons1.stages) {
        int pe = profile.p_exp(st.n, st.k);
        if (pe > dense_matrix_max_log) throw BudgetError("build_xi: dissolution matrix K_{p(n)-1} too large");
        int pn = 1 << pe;
        for (long nu = st.m_prev + 1; nu <= st.m && long(xs.xi.size()) < count; ++nu) {
            std::vector<StepFn> in;
            in.push_back(st.psi_fn(nu));
            std::vector<int> used;
            for (int i = 2; i <= pn; ++i) {
                long idx = q + i - 1; // 1-based into kseq
                if (idx > long(xs.kseq.size()))
                    throw BudgetError("build_xi: spike sequence exhausted below K_max");
                int kk = xs.kseq[idx - 1];
                in.push_back(haar_level(kk + 1, 1));
                used.push_back(kk);
            }
            auto out = apply_matrix(k_matrix(pn - 1), in);
            for (int j = 1; j <= pn; ++j) {
                xs.xi.push_back(std::move(out[j - 1]));
                xs.labels.push_back({st.n, nu, j});
            }
            xs.spikes.push_back(used);
            q += pn - 1;
            ++xs.groups;
        }
        if (long(xs.xi.size()) >= count) break;
    }
    return xs;
}

UpsilonSystem build_upsilon(const Cons1Result& cons1, const XiSystem& xi)
{
    UpsilonSystem up;
    up.mu.push_back(0);
    for (auto& st : cons1.stages) {
        if (long(xi.xi.size()) < st.n) throw BudgetError("build_upsilon: xi_n was not built");
        int ln = int(st.g.size()) + 1;
        std::vector<StepFn> in;
        in.push_back(xi.xi[st.n - 1]);
        for (auto& g : st.g) in.push_back(g);
        auto out = apply_matrix(k_matrix(ln - 1), in);
        for (auto& f : out) {
            up.upsilon.push_back(std::move(f));
            up.stage.push_back(st.n);
        }
        up.l.push_back(ln);
        up.mu.push_back(up.mu.back() + ln);
    }
    return up;
}

} // namespace euclid
