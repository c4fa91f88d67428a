#include "euclid/experiments.hpp"

#include "euclid/classical.hpp"
#include "euclid/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace euclid {

const char* family_name(CoeffFamily f)
{
    switch (f) {
    case CoeffFamily::inv_sqrt: return "inv_sqrt";
    case CoeffFamily::inv: return "inv";
    case CoeffFamily::geometric: return "geometric";
    case CoeffFamily::custom: return "custom";
    case CoeffFamily::random_sign: return "random_sign";
    }
    return "?";
}

bool CoeffSeq::l2() const
{
    if (family == CoeffFamily::inv_sqrt) return false;
    if (family == CoeffFamily::geometric) return abs(ratio) < 1;
    return true;
}

Scalar CoeffSeq::at(long k) const
{
    if (k < 1) throw IndexError("CoeffSeq: index starts at 1");
    switch (family) {
    case CoeffFamily::inv_sqrt: return Scalar(1) / sqrt(Scalar(k));
    case CoeffFamily::inv: return Scalar(mpq_class(1, k));
    case CoeffFamily::geometric: {
        mpq_class r(1);
        for (long i = 1; i < k; ++i) r *= ratio;
        return Scalar(r);
    }
    case CoeffFamily::custom:
        if (k > long(custom.size())) return Scalar(0);
        return custom[k - 1];
    case CoeffFamily::random_sign: {
        // one draw per index, independent of how many were taken before
        std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + std::uint64_t(k));
        return Scalar((rng() >> 63) ? 1 : -1);
    }
    }
    return Scalar(0);
}

std::vector<Scalar> CoeffSeq::take(long n) const
{
    std::vector<Scalar> out;
    out.reserve(std::size_t(std::max(0L, n)));
    if (family == CoeffFamily::geometric) {
        mpq_class r(1);
        for (long k = 1; k <= n; ++k) {
            out.push_back(Scalar(r));
            r *= ratio;
        }
        return out;
    }
    for (long k = 1; k <= n; ++k) out.push_back(at(k));
    return out;
}

CoeffSeq CoeffSeq::inv_sqrt(long n)
{
    CoeffSeq c;
    c.family = CoeffFamily::inv_sqrt;
    c.length = n;
    return c;
}

CoeffSeq CoeffSeq::inv(long n)
{
    CoeffSeq c;
    c.family = CoeffFamily::inv;
    c.length = n;
    return c;
}

CoeffSeq CoeffSeq::geometric(const mpq_class& r, long n)
{
    CoeffSeq c;
    c.family = CoeffFamily::geometric;
    c.ratio = r;
    c.length = n;
    return c;
}

CoeffSeq CoeffSeq::list(std::vector<Scalar> v)
{
    CoeffSeq c;
    c.family = CoeffFamily::custom;
    c.length = long(v.size());
    c.custom = std::move(v);
    return c;
}

CoeffSeq CoeffSeq::random_sign(std::uint64_t seed, long n)
{
    CoeffSeq c;
    c.family = CoeffFamily::random_sign;
    c.seed = seed;
    c.length = n;
    return c;
}

CoeffSeq CoeffSeq::parse(const std::string& s, long n)
{
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    if (head == "inv_sqrt") return inv_sqrt(n);
    if (head == "inv") return inv(n);
    if (head == "geometric") return geometric(parse_rational(arg.empty() ? "1/2" : arg), n);
    if (head == "random") return random_sign(arg.empty() ? 1 : std::stoull(arg), n);
    if (head == "custom") {
        std::vector<Scalar> v;
        std::stringstream ss(arg);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) v.push_back(Scalar::parse(tok));
        return list(std::move(v));
    }
    throw ParameterError("unknown coefficient family '" + s + "'");
}

namespace {

// running S on a common grid
struct Accum {
    bool exact = true;
    int L = 0;
    mpq_class a, b;
    std::vector<mpq_class> q;
    std::vector<double> d;

    Accum(const std::vector<StepFn>& fns, const std::vector<Scalar>& c, long J)
    {
        if (J < 0 || J > long(fns.size()) || J > long(c.size()))
            throw IndexError("partial sums: checkpoint beyond the system or coefficient length");
        if (fns.empty()) throw ParameterError("partial sums: empty system");
        a = fns[0].a();
        b = fns[0].b();
        for (long k = 0; k < J; ++k) {
            if (!fns[k].same_domain(fns[0])) throw DomainError("partial sums: mixed domains");
            L = std::max(L, fns[k].level());
            exact = exact && fns[k].is_exact() && c[k].is_exact();
        }
        check_budget(L, "partial sums");
        if (exact)
            q.assign(std::size_t(1) << L, mpq_class(0));
        else
            d.assign(std::size_t(1) << L, 0.0);
    }

    std::size_t size() const { return std::size_t(1) << L; }

    void add(const Scalar& c, const StepFn& f)
    {
        std::size_t rep = std::size_t(1) << (L - f.level());
        if (exact) {
            if (c.q() == 0) return;
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (f.qvals()[i] == 0) continue;
                mpq_class t = c.q() * f.qvals()[i];
                for (std::size_t r = 0; r < rep; ++r) q[i * rep + r] += t;
            }
            return;
        }
        double cd = c.d();
        if (cd == 0.0) return;
        if (rep == 1 && !f.is_exact()) {
            kernels::axpy(cd, f.dvals().data(), d.data(), d.size());
            return;
        }
        for (std::size_t i = 0; i < f.size(); ++i) {
            double t = cd * f.dval(i);
            for (std::size_t r = 0; r < rep; ++r) d[i * rep + r] += t;
        }
    }

    StepFn fn() const { return exact ? StepFn::exact(a, b, L, q) : StepFn::real(a, b, L, d); }
    Scalar width() const { return Scalar(mpq_class((b - a) / pow2(L))); }
};

long max_checkpoint(const std::vector<long>& cps)
{
    long J = 0;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i] < 1) throw IndexError("checkpoints start at 1");
        if (i && cps[i] <= cps[i - 1]) throw ParameterError("checkpoints must increase");
        J = cps[i];
    }
    return J;
}

// uniform in (0,1) from 53 random bits
double unit(std::mt19937_64& rng) { return (double(rng() >> 11) + 0.5) * 0x1.0p-53; }

std::vector<double> gaussian_vector(std::mt19937_64& rng, std::size_t n)
{
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; i += 2) {
        double u1 = unit(rng), u2 = unit(rng);
        double rad = std::sqrt(-2.0 * std::log(u1));
        g[i] = rad * std::cos(2 * M_PI * u2);
        if (i + 1 < n) g[i + 1] = rad * std::sin(2 * M_PI * u2);
    }
    return g;
}

} // namespace

std::vector<StepFn> partial_sums(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                 const std::vector<long>& checkpoints)
{
    long J = max_checkpoint(checkpoints);
    Accum acc(fns, a, J);
    std::vector<StepFn> out;
    std::size_t next = 0;
    for (long k = 1; k <= J; ++k) {
        acc.add(a[k - 1], fns[k - 1]);
        if (checkpoints[next] == k) {
            out.push_back(acc.fn());
            ++next;
        }
    }
    return out;
}

StepFn maximal_partial_sum(const std::vector<StepFn>& fns, const std::vector<Scalar>& a, long J)
{
    if (J < 1) throw IndexError("maximal_partial_sum: J starts at 1");
    Accum acc(fns, a, J);
    if (acc.exact) {
        std::vector<mpq_class> m(acc.size(), mpq_class(0));
        for (long k = 1; k <= J; ++k) {
            acc.add(a[k - 1], fns[k - 1]);
            for (std::size_t i = 0; i < m.size(); ++i) {
                mpq_class v = abs(acc.q[i]);
                if (v > m[i]) m[i] = v;
            }
        }
        return StepFn::exact(acc.a, acc.b, acc.L, std::move(m));
    }
    std::vector<double> m(acc.size(), 0.0);
    for (long k = 1; k <= J; ++k) {
        acc.add(a[k - 1], fns[k - 1]);
        kernels::running_max_abs(m.data(), acc.d.data(), m.size());
    }
    return StepFn::real(acc.a, acc.b, acc.L, std::move(m));
}

std::vector<CheckpointRecord> checkpoint_records(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                                 const std::vector<long>& checkpoints)
{
    auto S = partial_sums(fns, a, checkpoints);
    std::vector<CheckpointRecord> out;
    Scalar cs(0);
    long k = 0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        while (k < checkpoints[i]) {
            cs += a[k] * a[k];
            ++k;
        }
        CheckpointRecord r;
        r.j = checkpoints[i];
        r.sup = sup_norm(S[i]).d();
        r.l2sq = norm2_sq(S[i]);
        r.coef_sq = cs;
        out.push_back(r);
    }
    return out;
}

std::vector<BlockRecord> block_diagnostics(const std::vector<long>& sizes, const std::vector<Scalar>& a,
                                           const std::vector<double>& eps)
{
    std::vector<BlockRecord> out;
    std::size_t pos = 0;
    for (std::size_t m = 0; m < sizes.size(); ++m) {
        if (sizes[m] < 1) throw ParameterError("block_diagnostics: empty block");
        if (pos + std::size_t(sizes[m]) > a.size()) break;
        BlockRecord r;
        r.m = long(m + 1);
        r.size = sizes[m];
        double s = 0.0, s2 = 0.0;
        for (long i = 0; i < sizes[m]; ++i) {
            double v = a[pos + i].d();
            s += v;
            s2 += v * v;
        }
        pos += std::size_t(sizes[m]);
        r.big_m = std::sqrt(s2);
        r.beta = s / std::sqrt(double(sizes[m]));
        for (double e : eps) {
            r.eps.push_back(e);
            r.in_omega.push_back(e / 4 * r.big_m <= std::fabs(r.beta));
        }
        out.push_back(r);
    }
    return out;
}

std::vector<long> upsilon_block_sizes(const UpsilonSystem& up) { return std::vector<long>(up.l.begin(), up.l.end()); }

std::vector<ProfileRow> divergence_profile(const std::vector<StepFn>& fns, const std::vector<Scalar>& a,
                                           const std::vector<double>& t_grid, const std::vector<long>& J_list)
{
    long J = max_checkpoint(J_list);
    Accum acc(fns, a, J);
    const std::size_t n = acc.size();
    const Scalar w = acc.width();
    std::vector<ProfileRow> out;
    std::size_t next = 0;
    if (acc.exact) {
        std::vector<mpq_class> mx(n, mpq_class(0)), hi(n, mpq_class(0)), lo(n, mpq_class(0));
        std::vector<mpq_class> ts;
        for (double t : t_grid) ts.push_back(mpq_class(t));
        for (long k = 1; k <= J; ++k) {
            acc.add(a[k - 1], fns[k - 1]);
            for (std::size_t i = 0; i < n; ++i) {
                const mpq_class& v = acc.q[i];
                if (k == 1 || v > hi[i]) hi[i] = v;
                if (k == 1 || v < lo[i]) lo[i] = v;
                mpq_class av = abs(v);
                if (av > mx[i]) mx[i] = av;
            }
            if (J_list[next] != k) continue;
            for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                long cs = 0, co = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    cs += mx[i] > ts[ti];
                    co += mpq_class(hi[i] - lo[i]) > ts[ti];
                }
                out.push_back({k, t_grid[ti], Scalar(cs) * w, Scalar(co) * w});
            }
            ++next;
        }
        return out;
    }
    std::vector<double> mx(n, 0.0), hi(n, 0.0), lo(n, 0.0);
    for (long k = 1; k <= J; ++k) {
        acc.add(a[k - 1], fns[k - 1]);
        for (std::size_t i = 0; i < n; ++i) {
            double v = acc.d[i];
            if (k == 1 || v > hi[i]) hi[i] = v;
            if (k == 1 || v < lo[i]) lo[i] = v;
        }
        kernels::running_max_abs(mx.data(), acc.d.data(), n);
        if (J_list[next] != k) continue;
        for (double t : t_grid) {
            long cs = 0, co = 0;
            for (std::size_t i = 0; i < n; ++i) {
                cs += mx[i] > t;
                co += hi[i] - lo[i] > t;
            }
            out.push_back({k, t, Scalar(cs) * w, Scalar(co) * w});
        }
        ++next;
    }
    return out;
}

TrialStats sp_ratio(const std::vector<StepFn>& fns, double p, long trials, std::uint64_t seed)
{
    if (!(p > 2)) throw ParameterError("sp_ratio: p must exceed 2");
    if (fns.empty() || trials < 1) throw ParameterError("sp_ratio: need functions and trials");
    int L = 0;
    for (auto& f : fns) {
        if (!f.same_domain(fns[0])) throw DomainError("sp_ratio: mixed domains");
        L = std::max(L, f.level());
    }
    check_budget(L, "sp_ratio");
    std::vector<std::vector<double>> v;
    for (auto& f : fns) v.push_back(values_at(f, L));
    const double w = mpq_class(fns[0].length() / pow2(L)).get_d();
    const std::size_t n = std::size_t(1) << L;
    std::mt19937_64 rng(seed);
    TrialStats st;
    st.trials = trials;
    double sum = 0.0;
    std::vector<double> s(n);
    for (long t = 0; t < trials; ++t) {
        auto a = gaussian_vector(rng, fns.size());
        double na = std::sqrt(kernels::sum_squares(a.data(), a.size()));
        std::fill(s.begin(), s.end(), 0.0);
        for (std::size_t k = 0; k < fns.size(); ++k) kernels::axpy(a[k] / na, v[k].data(), s.data(), n);
        double acc = 0.0;
        for (double x : s) acc += std::pow(std::fabs(x), p);
        double r = std::pow(acc * w, 1.0 / p);
        st.ratios.push_back(r);
        sum += r;
    }
    st.max_ratio = *std::max_element(st.ratios.begin(), st.ratios.end());
    st.min_ratio = *std::min_element(st.ratios.begin(), st.ratios.end());
    st.mean_ratio = sum / double(trials);
    return st;
}

Scalar maximal_l2(const std::vector<StepFn>& fns, const std::vector<Scalar>& b)
{
    if (b.empty()) return Scalar(0);
    StepFn m = maximal_partial_sum(fns, b, long(b.size()));
    return norm2_sq(m);
}

Le11Stats le11_experiment(const std::vector<StepFn>& fns, long trials, std::uint64_t seed)
{
    if (fns.size() < 2) throw ParameterError("le11_experiment: need N + 1 >= 2 functions");
    const std::size_t N = fns.size() - 1;
    auto ft = le11_transform(fns);
    std::mt19937_64 rng(seed);
    Le11Stats st;
    std::vector<std::vector<Scalar>> draws;
    {
        std::vector<Scalar> e1(N, Scalar(0));
        e1[0] = Scalar(1);
        draws.push_back(e1);
    }
    for (long t = 0; t < trials; ++t) {
        auto g = gaussian_vector(rng, N);
        std::vector<Scalar> b;
        for (double x : g) b.push_back(Scalar::real(x));
        draws.push_back(b);
    }
    st.trials = long(draws.size());
    for (auto& b : draws) {
        double nb = 0.0;
        for (auto& x : b) nb += x.d() * x.d();
        double lhs = maximal_l2(ft, b).d();
        std::vector<Scalar> bo(b);
        bo.push_back(Scalar(0));
        double orig = maximal_l2(fns, bo).d();
        double r = nb > 0 ? lhs / nb : 0.0;
        st.ratios.push_back(r);
        st.max_ratio = std::max(st.max_ratio, r);
        if (nb > 0) st.c_emp = std::max(st.c_emp, orig / nb);
    }
    st.bound_ratio = st.c_emp > 0 ? st.max_ratio / (14.0 * st.c_emp) : 0.0;
    st.pass = st.bound_ratio <= 1.0;
    return st;
}

std::vector<long> block_checkpoints(const std::vector<long>& varpi)
{
    std::vector<long> out;
    for (long v : varpi)
        if (v >= 1 && (out.empty() || v > out.back())) out.push_back(v);
    return out;
}

} // namespace euclid
