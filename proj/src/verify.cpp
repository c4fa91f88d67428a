#include "euclid/verify.hpp"

#include "euclid/kernels.hpp"
#include "euclid/menshov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

namespace euclid {

double default_tolerance(int level) { return 1e-9 * std::sqrt(std::ldexp(1.0, level)); }

namespace {

std::string pair_witness(std::size_t i, std::size_t j)
{
    return "gram(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

void common_domain(const std::vector<StepFn>& fns, const char* what)
{
    for (auto& f : fns)
        if (!f.same_domain(fns.front())) throw DomainError(std::string(what) + ": functions on different domains");
}

int max_level(const std::vector<StepFn>& fns)
{
    int L = 0;
    for (auto& f : fns) L = std::max(L, f.level());
    return L;
}

// rank over Z/p of the rows of an n x m matrix given as residues
long rank_mod(std::vector<std::uint64_t> a, long n, long m, std::uint64_t p)
{
    auto mulm = [p](std::uint64_t x, std::uint64_t y) { return (x * y) % p; };
    auto powm = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulm(r, b);
            b = mulm(b, b);
            e >>= 1;
        }
        return r;
    };
    long rank = 0;
    for (long col = 0; col < m && rank < n; ++col) {
        long piv = -1;
        for (long i = rank; i < n; ++i)
            if (a[i * m + col]) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (long c = 0; c < m; ++c) std::swap(a[piv * m + c], a[rank * m + c]);
        std::uint64_t inv = powm(a[rank * m + col], p - 2);
        for (long i = rank + 1; i < n; ++i) {
            std::uint64_t f = a[i * m + col];
            if (!f) continue;
            f = mulm(f, inv);
            for (long c = col; c < m; ++c) a[i * m + c] = (a[i * m + c] + p - mulm(f, a[rank * m + c])) % p;
        }
        ++rank;
    }
    return rank;
}

std::uint64_t residue(const mpq_class& q, std::uint64_t p)
{
    mpz_class num = q.get_num() % mpz_class(static_cast<unsigned long>(p));
    if (num < 0) num += static_cast<unsigned long>(p);
    mpz_class den = q.get_den() % mpz_class(static_cast<unsigned long>(p));
    mpz_class inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(static_cast<unsigned long>(p)).get_mpz_t()))
        throw ParameterError("rank: denominator divisible by the modulus");
    mpz_class r = (num * inv) % static_cast<unsigned long>(p);
    return r.get_ui();
}

// fraction-free elimination on integer rows
long rank_bareiss(std::vector<mpz_class> a, long n, long m)
{
    long rank = 0;
    mpz_class prev = 1;
    for (long col = 0; col < m && rank < n; ++col) {
        long piv = -1;
        for (long i = rank; i < n; ++i)
            if (a[i * m + col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (long c = 0; c < m; ++c) std::swap(a[piv * m + c], a[rank * m + c]);
        const mpz_class& pv = a[rank * m + col];
        for (long i = rank + 1; i < n; ++i) {
            for (long c = col + 1; c < m; ++c) {
                mpz_class t = pv * a[i * m + c] - a[i * m + col] * a[rank * m + c];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i * m + c] = t;
            }
            a[i * m + col] = 0;
        }
        prev = pv;
        ++rank;
    }
    return rank;
}

} // namespace

VerifyReport check_orthonormal(const std::vector<StepFn>& fns, double tol)
{
    VerifyReport rep;
    rep.name = "orthonormal";
    if (fns.empty()) {
        rep.pass = true;
        rep.residual = Scalar(0);
        rep.detail = "empty family";
        return rep;
    }
    common_domain(fns, "check_orthonormal");
    const int L = max_level(fns);
    bool exact = std::all_of(fns.begin(), fns.end(), [](const StepFn& f) { return f.is_exact(); });
    const double n = double(fns.size());
    // exact Gram only while it stays cheap
    if (exact && n * n * std::ldexp(1.0, L) > 4e8) exact = false;
    rep.tolerance = exact ? 0.0 : (tol >= 0 ? tol : default_tolerance(L));

    std::size_t wi = 0, wj = 0;
    if (exact) {
        mpq_class worst(0);
        for (std::size_t i = 0; i < fns.size(); ++i)
            for (std::size_t j = i; j < fns.size(); ++j) {
                mpq_class d = inner(fns[i], fns[j]).q() - (i == j ? 1 : 0);
                d = abs(d);
                if (d > worst) {
                    worst = d;
                    wi = i;
                    wj = j;
                }
            }
        rep.residual = Scalar(worst);
        rep.pass = worst == 0;
        rep.detail = "exact Gram";
    } else {
        std::vector<std::vector<double>> v;
        v.reserve(fns.size());
        for (auto& f : fns) v.push_back(values_at(f, L));
        const double w = mpq_class(fns.front().length() / pow2(L)).get_d();
        const std::size_t m = std::size_t(1) << L;
        double worst = 0.0;
        for (std::size_t i = 0; i < fns.size(); ++i)
            for (std::size_t j = i; j < fns.size(); ++j) {
                double d = std::fabs(kernels::dot(v[i].data(), v[j].data(), m) * w - (i == j ? 1.0 : 0.0));
                if (d > worst) {
                    worst = d;
                    wi = i;
                    wj = j;
                }
            }
        rep.residual = Scalar::real(worst);
        rep.pass = worst <= rep.tolerance;
        rep.detail = "float Gram at level " + std::to_string(L);
    }
    rep.witnesses.push_back(pair_witness(wi, wj));
    return rep;
}

long span_rank(const std::vector<StepFn>& fns, int K, bool* exact_used)
{
    if (fns.empty()) return 0;
    common_domain(fns, "check_complete");
    for (auto& f : fns)
        if (detect_level(f) > K) throw ParameterError("check_complete: a function is not in E^K");
    check_budget(K, "check_complete");
    const long n = long(fns.size()), m = long(1) << K;
    bool exact = std::all_of(fns.begin(), fns.end(), [](const StepFn& f) { return f.is_exact(); });
    if (exact_used) *exact_used = exact;
    if (exact) {
        if (K > 10) throw BudgetError("check_complete: exact dense rank limited to 2^10 columns");
        const std::uint64_t primes[2] = {2147483629ULL, 2147483587ULL};
        long best = 0;
        for (auto p : primes) {
            std::vector<std::uint64_t> a(std::size_t(n * m));
            for (long i = 0; i < n; ++i) {
                StepFn r = refine(canonicalize(fns[i]), K);
                for (long c = 0; c < m; ++c) a[i * m + c] = residue(r.qvals()[c], p);
            }
            best = std::max(best, rank_mod(std::move(a), n, m, p));
            if (best == std::min(n, m)) return best;
        }
        if (n > 128) return best;
        // small enough for exact fraction-free elimination
        std::vector<mpz_class> a(std::size_t(n * m));
        for (long i = 0; i < n; ++i) {
            StepFn r = refine(canonicalize(fns[i]), K);
            mpz_class l = 1;
            for (auto& q : r.qvals()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
            for (long c = 0; c < m; ++c) {
                mpq_class t = r.qvals()[c] * l;
                a[i * m + c] = t.get_num();
            }
        }
        return rank_bareiss(std::move(a), n, m);
    }
    if (K > 11) throw BudgetError("check_complete: dense float rank limited to 2^11 columns");
    const double sw = std::sqrt(mpq_class(fns.front().length() / pow2(K)).get_d());
    Eigen::MatrixXd A(m, n);
    for (long i = 0; i < n; ++i) {
        auto v = values_at(fns[i], K);
        for (long c = 0; c < m; ++c) A(c, i) = v[c] * sw;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-8 * std::sqrt(double(m)));
    return qr.rank();
}

VerifyReport check_complete(const std::vector<StepFn>& fns, int K)
{
    VerifyReport rep;
    rep.name = "complete";
    bool ex = false;
    long rank = span_rank(fns, K, &ex);
    long dim = long(1) << K;
    rep.residual = Scalar(long(dim - rank));
    rep.tolerance = 0.0;
    rep.pass = rank == dim;
    rep.detail = "rank " + std::to_string(rank) + " of " + std::to_string(dim) + (ex ? " (exact)" : " (float)");
    if (!rep.pass) rep.witnesses.push_back("missing " + std::to_string(dim - rank) + " dimensions");
    return rep;
}

namespace {

struct FamilyBound {
    double worst = 0.0;
    std::string where;
};

FamilyBound family_bound(const std::vector<StepFn>& fixed, const CompletionFamily& fam, Scalar* fixed_res)
{
    FamilyBound fb;
    auto fr = check_orthonormal(fixed);
    *fixed_res = fr.residual;
    fb.worst = fr.residual.d();
    fb.where = "fixed " + (fr.witnesses.empty() ? std::string("-") : fr.witnesses.front());
    double amax = 0.0;
    for (std::size_t t = 0; t < fam.supp.size(); ++t) {
        if (fam.skipped[t]) continue;
        auto upd = [&](double v, const std::string& w) {
            if (v > fb.worst) {
                fb.worst = v;
                fb.where = w;
            }
        };
        std::string h = "haar " + std::to_string(fam.supp[t]);
        upd(fam.diag_dev[t], "norm of psi at " + h);
        upd(fam.fixed_dev[t], "psi at " + h + " vs fixed");
        // <psi_s, psi_t> = a_s . b_t for s before t, bounded by |a_s| |b_t|
        upd(amax * fam.b_norm[t], "pair bound ending at " + h);
        amax = std::max(amax, fam.a_norm[t]);
    }
    return fb;
}

} // namespace

VerifyReport check_orthonormal(const std::vector<StepFn>& fixed, const CompletionFamily& fam, double tol)
{
    VerifyReport rep;
    rep.name = "orthonormal(structured)";
    Scalar fres;
    auto fb = family_bound(fixed, fam, &fres);
    rep.residual = Scalar::real(fb.worst);
    rep.tolerance = tol >= 0 ? tol : default_tolerance(fam.K);
    rep.pass = fb.worst <= rep.tolerance;
    rep.witnesses.push_back(fb.where);
    rep.detail = std::to_string(fixed.size()) + " fixed + " + std::to_string(fam.count()) + " completion members, " +
                 std::to_string(fam.nontrivial()) + " non-Haar; fixed Gram residual " + fres.str();
    return rep;
}

VerifyReport check_complete(const std::vector<StepFn>& fixed, const CompletionFamily& fam)
{
    VerifyReport rep;
    rep.name = "complete(structured)";
    const long dim = fam.dimension();
    const long total = long(fixed.size()) + fam.count();
    for (auto& f : fixed)
        if (detect_level(f) > fam.K) throw ParameterError("check_complete: fixed function not in E^K");
    Scalar fres;
    auto fb = family_bound(fixed, fam, &fres);
    // Gershgorin: every eigenvalue of the Gram lies within dim * eps of 1
    double cert = double(dim) * fb.worst;
    rep.residual = Scalar::real(cert);
    rep.tolerance = 0.5;
    rep.pass = total == dim && cert <= rep.tolerance;
    rep.detail = "members " + std::to_string(total) + " in a span of dimension " + std::to_string(dim) +
                 ", Gershgorin radius " + double_str(cert);
    if (total != dim) rep.witnesses.push_back("member count " + std::to_string(total) + " != " + std::to_string(dim));
    rep.witnesses.push_back(fb.where);
    return rep;
}

VerifyReport check_local_parseval(const std::vector<StepFn>& g, const DyadicInterval& cell, const Scalar& omega,
                                  const std::vector<Scalar>& a, int max_level, double tol)
{
    if (g.empty() || g.size() != a.size()) throw ParameterError("check_local_parseval: coefficient count mismatch");
    if (cell.level > max_level)
        throw ParameterError("check_local_parseval: cell level " + std::to_string(cell.level) +
                             " is finer than the admissible depth " + std::to_string(max_level));
    VerifyReport rep;
    rep.name = "local_parseval";
    std::vector<StepFn> fns(g);
    std::vector<Scalar> co(a);
    fns.push_back(StepFn::constant(Scalar(1), g.front().a(), g.front().b()));
    co.push_back(omega);
    StepFn f = lin_comb(co, fns);
    Scalar lhs = norm2_sq(restrict(f, cell));
    Scalar s = omega * omega;
    for (auto& x : a) s += x * x;
    Scalar rhs = Scalar(cell.length()) * s;
    rep.residual = (lhs - rhs).abs();
    rep.tolerance = rep.residual.is_exact() ? 0.0 : (tol > 0 ? tol : default_tolerance(f.level()));
    rep.pass = rep.residual.is_exact() ? rep.residual.q() == 0 : rep.residual.d() <= rep.tolerance;
    rep.witnesses.push_back("cell level " + std::to_string(cell.level) + " nu " + std::to_string(cell.nu));
    rep.detail = "lhs " + lhs.str() + " rhs " + rhs.str();
    return rep;
}

VerifyReport check_independence(const std::vector<StepFn>& fns)
{
    if (fns.empty()) throw ParameterError("check_independence: empty family");
    if (fns.size() > 6) throw ParameterError("check_independence: at most 6 functions");
    common_domain(fns, "check_independence");
    const int L = max_level(fns);
    check_budget(L, "check_independence");
    const std::size_t m = std::size_t(1) << L;
    const std::size_t nf = fns.size();

    // atom ids per function; exact values compare as rationals, floats bitwise
    std::vector<std::vector<int>> ids(nf, std::vector<int>(m));
    std::vector<std::vector<std::string>> labels(nf);
    std::vector<std::vector<long>> marg(nf);
    for (std::size_t k = 0; k < nf; ++k) {
        const StepFn& f = fns[k];
        std::size_t rep = std::size_t(1) << (L - f.level());
        if (f.is_exact()) {
            std::map<mpq_class, int> at;
            for (std::size_t c = 0; c < f.size(); ++c) {
                auto it = at.emplace(f.qvals()[c], int(at.size())).first;
                for (std::size_t r = 0; r < rep; ++r) ids[k][c * rep + r] = it->second;
            }
            labels[k].resize(at.size());
            for (auto& [q, id] : at) labels[k][id] = rational_str(q);
        } else {
            std::map<double, int> at;
            for (std::size_t c = 0; c < f.size(); ++c) {
                auto it = at.emplace(f.dvals()[c], int(at.size())).first;
                for (std::size_t r = 0; r < rep; ++r) ids[k][c * rep + r] = it->second;
            }
            labels[k].resize(at.size());
            for (auto& [q, id] : at) labels[k][id] = double_str(q);
        }
        marg[k].assign(labels[k].size(), 0);
        for (std::size_t c = 0; c < m; ++c) ++marg[k][ids[k][c]];
    }
    double combos = 1.0;
    for (auto& mg : marg) combos *= double(mg.size());
    if (combos > 2e7) throw ParameterError("check_independence: joint atom space too large");

    std::map<std::vector<int>, long> joint;
    std::vector<int> key(nf);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t k = 0; k < nf; ++k) key[k] = ids[k][c];
        ++joint[key];
    }

    // joint measure J / 2^L against prod(c_k / 2^L)
    mpq_class worst(0);
    std::vector<int> wkey(nf, 0);
    std::vector<int> cur(nf, 0);
    const mpq_class cell = mpq_class(1) / pow2(L);
    while (true) {
        mpq_class prod(1);
        for (std::size_t k = 0; k < nf; ++k) prod *= mpq_class(marg[k][cur[k]]) * cell;
        auto it = joint.find(cur);
        mpq_class jm = it == joint.end() ? mpq_class(0) : mpq_class(it->second) * cell;
        mpq_class d = abs(mpq_class(jm - prod));
        if (d > worst) {
            worst = d;
            wkey = cur;
        }
        std::size_t k = 0;
        while (k < nf && ++cur[k] == int(marg[k].size())) cur[k++] = 0;
        if (k == nf) break;
    }
    VerifyReport rep;
    rep.name = "independence";
    rep.residual = Scalar(worst);
    rep.tolerance = 0.0;
    rep.pass = worst == 0;
    std::string w = "values (";
    for (std::size_t k = 0; k < nf; ++k) w += (k ? ", " : "") + labels[k][wkey[k]];
    rep.witnesses.push_back(w + ")");
    rep.detail = std::to_string(joint.size()) + " joint atoms over " + std::to_string(m) + " cells";
    return rep;
}

VerifyReport check_sup_bound(const std::vector<StepFn>& fns, const Scalar& M)
{
    VerifyReport rep;
    rep.name = "sup_bound";
    Scalar worst(0);
    std::size_t wi = 0;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        Scalar s = sup_norm(fns[i]);
        if (s > worst) {
            worst = s;
            wi = i;
        }
    }
    rep.residual = worst;
    rep.tolerance = M.d();
    rep.pass = worst <= M;
    rep.witnesses.push_back("function " + std::to_string(wi + 1));
    rep.detail = "margin " + (M - worst).str();
    return rep;
}

VerifyReport check_weak_type(const StepFn& f, const mpq_class& p, int k_max, const std::vector<double>& t_grid)
{
    VerifyReport rep;
    rep.name = "weak_type";
    const double Cp = weak_type_constant(p.get_d());
    const double norm = lp_norm_pow(f, p).d();
    const double tr = truncation_residual(k_max).get_d();
    double worst = -1e300;
    double wt = 0.0;
    for (double t : t_grid) {
        Scalar ts = Scalar(mpq_class(t));
        double lam = rearranged_distribution(f, p, k_max, ts).d();
        double allow = Cp * std::pow(t, -p.get_d()) * norm + tr;
        if (lam - allow > worst) {
            worst = lam - allow;
            wt = t;
        }
    }
    rep.residual = Scalar::real(worst);
    rep.tolerance = 0.0;
    rep.pass = worst <= 0.0;
    rep.witnesses.push_back("t = " + double_str(wt));
    rep.detail = "C_p " + double_str(Cp) + ", truncation " + double_str(tr);
    return rep;
}

std::string report_line(const VerifyReport& r)
{
    std::ostringstream os;
    os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " residual=" << r.residual.str() << " tol=" << double_str(r.tolerance);
    for (auto& w : r.witnesses) os << " [" << w << "]";
    if (!r.detail.empty()) os << " " << r.detail;
    return os.str();
}

} // namespace euclid
