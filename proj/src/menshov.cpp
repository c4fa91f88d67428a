#include "euclid/menshov.hpp"

#include "euclid/classical.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace euclid {

StepFn menshov(int k)
{
    if (k < 2) throw IndexError("menshov: k must be >= 2");
    check_budget(k + 1, "menshov");
    const long half = long(1) << k;
    const std::size_t n = std::size_t(2 * half);
    Scalar amp = pow2_half(k) / Scalar(8);
    std::vector<Scalar> v(n, Scalar(0));
    for (std::size_t c = 0; c < n; ++c) {
        // cell c covers ((i-1) 2^-k, i 2^-k) with i = c - 2^k + 1
        long i = long(c) - half + 1;
        if (i == 0 || i == half) continue;
        v[c] = amp / Scalar(i);
    }
    return StepFn::from_scalars(-1, 1, k + 1, v);
}

StepFn menshov_translate(int k, long i)
{
    if (k < 2) throw IndexError("menshov_translate: k must be >= 2");
    if (i < 0 || i >= (long(1) << k)) throw IndexError("menshov_translate: i out of range");
    // one cell of M_k is 2^-k = (domain length) 2^-(k+1)
    return translate_dyadic(menshov(k), i, k + 1);
}

namespace {

// orthonormal Haar basis of mean-zero functions on [1,2], first `count` members, at level L
std::vector<std::vector<double>> haar_tail_basis(int L, std::size_t count)
{
    std::vector<std::vector<double>> out;
    const std::size_t n = std::size_t(1) << L;
    for (int l = 0; l < L && out.size() < count; ++l) {
        double amp = std::ldexp(1.0, l / 2) * ((l % 2) ? std::sqrt(2.0) : 1.0);
        std::size_t w = n >> l;
        for (std::size_t j = 0; j < (std::size_t(1) << l) && out.size() < count; ++j) {
            std::vector<double> v(n, 0.0);
            for (std::size_t c = 0; c < w; ++c) v[j * w + c] = c < w / 2 ? amp : -amp;
            out.push_back(std::move(v));
        }
    }
    return out;
}

// rational tails for k = 2, found by an integer lattice search: W^T W = 2 S with
// S = 1152 (I - G) = Toeplitz(1103, -24, 8, 24); tail_i = (Walsh rows) W_i / 48
const char* const k2_tails[4][8] = {
    {"1/3", "-3/8", "-4/3", "41/24", "-11/12", "-13/24", "5/4", "-1/8"},
    {"-13/12", "35/24", "1", "13/24", "-13/8", "-1/3", "-3/8", "5/12"},
    {"0", "5/4", "-17/24", "-35/24", "7/24", "-9/8", "17/12", "1/3"},
    {"-49/24", "-5/6", "13/24", "7/12", "13/12", "-11/24", "5/6", "7/24"},
};

} // namespace

bool lemma1_exact_tails(int k) { return k == 2; }

std::vector<StepFn> lemma1_tails(int k)
{
    if (k < 2) throw IndexError("lemma1_system: k must be >= 2");
    check_budget(k + 3, "lemma1_system");
    if (k == 2) {
        std::vector<StepFn> out;
        for (auto& row : k2_tails) {
            std::vector<mpq_class> v;
            for (auto* q : row) v.emplace_back(q);
            out.push_back(StepFn::exact(1, 2, 3, std::move(v)));
        }
        return out;
    }
    const std::size_t m = std::size_t(1) << k;
    std::vector<StepFn> M;
    M.reserve(m);
    for (std::size_t i = 0; i < m; ++i) M.push_back(menshov_translate(k, long(i)));

    Eigen::MatrixXd A(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            double g = inner(M[i], M[j]).d();
            A(i, j) = A(j, i) = (i == j ? 1.0 : 0.0) - g;
        }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    if (es.info() != Eigen::Success) throw InfeasibleError("lemma1_system: eigen decomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::MatrixXd Q = es.eigenvectors();

    // descending eigenvalue; sign fixed by first nonzero coordinate
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lam(a) > lam(b); });

    Eigen::MatrixXd L(m, m);
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t e = order[c];
        double l = lam(e);
        if (l < -1e-10) throw InfeasibleError("lemma1_system: I - G has a negative eigenvalue");
        if (std::fabs(l) <= 1e-12) l = 0.0;
        Eigen::VectorXd q = Q.col(e);
        for (std::size_t r = 0; r < m; ++r)
            if (std::fabs(q(r)) > 1e-14) {
                if (q(r) < 0) q = -q;
                break;
            }
        L.col(c) = q * std::sqrt(l);
    }

    const int TL = k + 1;
    auto basis = haar_tail_basis(TL, m);
    std::vector<StepFn> tails;
    tails.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> v(std::size_t(1) << TL, 0.0);
        for (std::size_t c = 0; c < m; ++c) {
            double coef = L(i, c);
            if (coef == 0.0) continue;
            for (std::size_t x = 0; x < v.size(); ++x) v[x] += coef * basis[c][x];
        }
        tails.push_back(StepFn::real(1, 2, TL, std::move(v)));
    }
    return tails;
}

MenshovSystem lemma1_system(int k)
{
    auto tails = lemma1_tails(k);
    MenshovSystem sys;
    sys.k = k;
    sys.exact_tails = lemma1_exact_tails(k);
    const std::size_t m = tails.size();
    StepFn left = StepFn::zero(-2, -1, 0, Mode::exact);
    for (std::size_t i = 0; i < m; ++i) sys.functions.push_back(concat({left, menshov_translate(k, long(i)), tails[i]}));
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            Scalar g = inner(sys.functions[i], sys.functions[j]) - Scalar(i == j ? 1 : 0);
            worst = std::max(worst, g.abs().d());
        }
    sys.gram_residual = worst;
    return sys;
}

StepFn rearrange_natural(const StepFn& f, const mpq_class& p, int k_max)
{
    if (f.a() != 0 || f.b() != 1) throw DomainError("rearrange_natural: function must live on [0,1]");
    if (p < 1) throw ParameterError("rearrange_natural: p must be >= 1");
    if (k_max < 1) throw ParameterError("rearrange_natural: k_max must be >= 1");
    const int L = f.level() + k_max;
    check_budget(L, "rearrange_natural");
    const std::size_t n = std::size_t(1) << L;
    const std::size_t fs = f.size();
    // band k: cells [2^{L-k}, 2^{L-k+1}) hold f compressed by 2^k, each f-cell spread over 2^{k_max-k} cells
    std::vector<Scalar> amps;
    bool ex = f.is_exact();
    for (int k = 1; k <= k_max; ++k) {
        mpq_class e = mpq_class(k) / p;
        Scalar a = e.get_den() == 1 ? Scalar(pow2(int(e.get_num().get_si()))) : Scalar::real(std::exp2(e.get_d()));
        ex = ex && a.is_exact();
        amps.push_back(a);
    }
    if (ex) {
        std::vector<mpq_class> v(n, mpq_class(0));
        for (int k = 1; k <= k_max; ++k) {
            std::size_t start = std::size_t(1) << (L - k);
            std::size_t rep = std::size_t(1) << (k_max - k);
            for (std::size_t c = 0; c < fs; ++c) {
                mpq_class val = amps[k - 1].q() * f.qvals()[c];
                for (std::size_t r = 0; r < rep; ++r) v[start + c * rep + r] = val;
            }
        }
        return StepFn::exact(0, 1, L, std::move(v));
    }
    std::vector<double> v(n, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        std::size_t start = std::size_t(1) << (L - k);
        std::size_t rep = std::size_t(1) << (k_max - k);
        for (std::size_t c = 0; c < fs; ++c) {
            double val = amps[k - 1].d() * f.dval(c);
            for (std::size_t r = 0; r < rep; ++r) v[start + c * rep + r] = val;
        }
    }
    return StepFn::real(0, 1, L, std::move(v));
}

Scalar distribution(const StepFn& f, const Scalar& t)
{
    if (t < Scalar(0)) throw ParameterError("distribution: t must be >= 0");
    std::size_t count = 0;
    if (f.is_exact() && t.is_exact()) {
        for (auto& q : f.qvals())
            if (abs(q) > t.q()) ++count;
    } else {
        double td = t.d();
        for (std::size_t i = 0; i < f.size(); ++i)
            if (std::fabs(f.dval(i)) > td) ++count;
    }
    mpq_class m = mpq_class(long(count)) * f.cell_width();
    if (f.is_exact() && t.is_exact()) return Scalar(m);
    return Scalar::real(m.get_d());
}

Scalar rearranged_distribution(const StepFn& f, const mpq_class& p, int k_max, const Scalar& t)
{
    if (f.a() != 0 || f.b() != 1) throw DomainError("rearranged_distribution: function must live on [0,1]");
    if (p < 1) throw ParameterError("rearranged_distribution: p must be >= 1");
    if (t < Scalar(0)) throw ParameterError("rearranged_distribution: t must be >= 0");
    // |v| 2^{k/p} > t  <=>  |v|^a 2^{kb} > t^a  for p = a/b
    const bool ex = f.is_exact() && t.is_exact();
    const unsigned long pa = p.get_num().get_ui(), pb = p.get_den().get_ui();
    mpq_class total(0);
    for (int k = 1; k <= k_max; ++k) {
        std::size_t count = 0;
        if (ex) {
            mpq_class ta;
            mpz_class tn, td;
            mpz_pow_ui(tn.get_mpz_t(), t.q().get_num().get_mpz_t(), pa);
            mpz_pow_ui(td.get_mpz_t(), t.q().get_den().get_mpz_t(), pa);
            ta = mpq_class(tn, td);
            ta.canonicalize();
            mpq_class scale = pow2(int(k * pb));
            for (auto& q : f.qvals()) {
                mpq_class aq = abs(q);
                mpz_class n, d;
                mpz_pow_ui(n.get_mpz_t(), aq.get_num().get_mpz_t(), pa);
                mpz_pow_ui(d.get_mpz_t(), aq.get_den().get_mpz_t(), pa);
                mpq_class lhs(n, d);
                lhs.canonicalize();
                if (lhs * scale > ta) ++count;
            }
        } else {
            double amp = std::exp2(double(k) / p.get_d());
            for (std::size_t i = 0; i < f.size(); ++i)
                if (std::fabs(f.dval(i)) * amp > t.d()) ++count;
        }
        // band k has measure 2^-k, each f-cell a fraction 2^-level of it
        total += mpq_class(long(count)) * f.cell_width() / pow2(k);
    }
    return ex ? Scalar(total) : Scalar::real(total.get_d());
}

mpq_class truncation_residual(int k_max) { return mpq_class(1) / pow2(k_max); }

double weak_type_constant(double p) { return 2.0 / (p * (std::exp2(1.0 / p) - 1.0)); }

Scalar lp_norm_pow(const StepFn& f, const mpq_class& p)
{
    if (p.get_den() == 1 && f.is_exact()) {
        unsigned long e = p.get_num().get_ui();
        mpq_class s(0);
        for (auto& q : f.qvals()) {
            mpq_class a = abs(q);
            mpz_class n, d;
            mpz_pow_ui(n.get_mpz_t(), a.get_num().get_mpz_t(), e);
            mpz_pow_ui(d.get_mpz_t(), a.get_den().get_mpz_t(), e);
            mpq_class t(n, d);
            t.canonicalize();
            s += t;
        }
        return Scalar(mpq_class(s * f.cell_width()));
    }
    double s = 0.0, pd = p.get_d();
    for (std::size_t i = 0; i < f.size(); ++i) s += std::pow(std::fabs(f.dval(i)), pd);
    return Scalar::real(s * f.cell_width().get_d());
}

} // namespace euclid
