#include "euclid/stepfn.hpp"

#include "euclid/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>

namespace euclid {

namespace {

std::atomic<int> g_kmax{22};

void require_same_domain(const StepFn& f, const StepFn& g, const char* what)
{
    if (!f.same_domain(g))
        throw DomainError(std::string(what) + ": domain mismatch [" + rational_str(f.a()) + "," + rational_str(f.b()) +
                          "] vs [" + rational_str(g.a()) + "," + rational_str(g.b()) + "]");
}

// smallest L >= lo_level such that r * 2^L is an integer; -1 if r is not dyadic
int dyadic_level_of(const mpq_class& r, int lo_level)
{
    mpz_class den = r.get_den();
    if (den <= 0) return -1;
    // den must be a power of two
    if ((den & (den - 1)) != 0) return -1;
    int e = int(mpz_sizeinbase(den.get_mpz_t(), 2)) - 1;
    return std::max(e, lo_level);
}

} // namespace

int kmax() { return g_kmax.load(); }

void set_kmax(int k)
{
    if (k < 0 || k > 30) throw ParameterError("K_max must lie in 0..30");
    g_kmax.store(k);
}

void check_budget(int level, const char* what)
{
    if (level > kmax())
        throw BudgetError(std::string(what) + ": level " + std::to_string(level) + " exceeds K_max = " +
                          std::to_string(kmax()));
}

mpq_class DyadicInterval::lo() const { return a + (b - a) * mpq_class(nu - 1) / pow2(level); }
mpq_class DyadicInterval::hi() const { return a + (b - a) * mpq_class(nu) / pow2(level); }

StepFn::StepFn() : a_(0), b_(1), level_(0), mode_(Mode::exact), q_(1, mpq_class(0)) {}

StepFn StepFn::constant(const Scalar& c, const mpq_class& a, const mpq_class& b)
{
    if (c.is_exact()) return exact(a, b, 0, {c.q()});
    return real(a, b, 0, {c.d()});
}

StepFn StepFn::zero(const mpq_class& a, const mpq_class& b, int level, Mode m)
{
    check_budget(level, "zero");
    if (m == Mode::exact) return exact(a, b, level, std::vector<mpq_class>(std::size_t(1) << level, mpq_class(0)));
    return real(a, b, level, std::vector<double>(std::size_t(1) << level, 0.0));
}

StepFn StepFn::exact(const mpq_class& a, const mpq_class& b, int level, std::vector<mpq_class> v)
{
    if (!(a < b)) throw DomainError("empty domain");
    if (level < 0) throw LevelError("negative level");
    check_budget(level, "StepFn");
    if (v.size() != (std::size_t(1) << level)) throw LevelError("value count must be 2^level");
    StepFn f;
    f.a_ = a;
    f.b_ = b;
    f.level_ = level;
    f.mode_ = Mode::exact;
    f.q_ = std::move(v);
    for (auto& q : f.q_) q.canonicalize();
    f.d_.clear();
    return f;
}

StepFn StepFn::real(const mpq_class& a, const mpq_class& b, int level, std::vector<double> v)
{
    if (!(a < b)) throw DomainError("empty domain");
    if (level < 0) throw LevelError("negative level");
    check_budget(level, "StepFn");
    if (v.size() != (std::size_t(1) << level)) throw LevelError("value count must be 2^level");
    StepFn f;
    f.a_ = a;
    f.b_ = b;
    f.level_ = level;
    f.mode_ = Mode::real;
    f.q_.clear();
    f.d_ = std::move(v);
    return f;
}

StepFn StepFn::from_scalars(const mpq_class& a, const mpq_class& b, int level, const std::vector<Scalar>& v)
{
    bool ex = std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_exact(); });
    if (ex) {
        std::vector<mpq_class> q;
        q.reserve(v.size());
        for (auto& s : v) q.push_back(s.q());
        return exact(a, b, level, std::move(q));
    }
    std::vector<double> d;
    d.reserve(v.size());
    for (auto& s : v) d.push_back(s.d());
    return real(a, b, level, std::move(d));
}

Scalar StepFn::value(std::size_t i) const { return is_exact() ? Scalar(q_[i]) : Scalar::real(d_[i]); }

std::vector<double> StepFn::as_doubles() const
{
    if (!is_exact()) return d_;
    std::vector<double> out(q_.size());
    for (std::size_t i = 0; i < q_.size(); ++i) out[i] = q_[i].get_d();
    return out;
}

std::vector<Scalar> StepFn::scalars() const
{
    std::vector<Scalar> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(value(i));
    return out;
}

StepFn StepFn::to_real() const
{
    if (!is_exact()) return *this;
    return real(a_, b_, level_, as_doubles());
}

bool operator==(const StepFn& f, const StepFn& g)
{
    return f.a_ == g.a_ && f.b_ == g.b_ && f.level_ == g.level_ && f.mode_ == g.mode_ && f.q_ == g.q_ && f.d_ == g.d_;
}

StepFn refine(const StepFn& f, int j)
{
    if (j < f.level()) throw LevelError("refine: target level " + std::to_string(j) + " below " + std::to_string(f.level()));
    if (j == f.level()) return f;
    check_budget(j, "refine");
    std::size_t rep = std::size_t(1) << (j - f.level());
    if (f.is_exact()) {
        std::vector<mpq_class> v;
        v.reserve(f.size() * rep);
        for (auto& q : f.qvals())
            for (std::size_t r = 0; r < rep; ++r) v.push_back(q);
        return StepFn::exact(f.a(), f.b(), j, std::move(v));
    }
    std::vector<double> v;
    v.reserve(f.size() * rep);
    for (double d : f.dvals())
        for (std::size_t r = 0; r < rep; ++r) v.push_back(d);
    return StepFn::real(f.a(), f.b(), j, std::move(v));
}

std::vector<double> values_at(const StepFn& f, int level)
{
    if (level < f.level()) throw LevelError("values_at: level below function level");
    std::size_t rep = std::size_t(1) << (level - f.level());
    std::vector<double> out;
    out.reserve(f.size() * rep);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = f.dval(i);
        for (std::size_t r = 0; r < rep; ++r) out.push_back(v);
    }
    return out;
}

int common_level(const StepFn& f, const StepFn& g) { return std::max(f.level(), g.level()); }

StepFn lin_comb(const std::vector<Scalar>& coeffs, const std::vector<StepFn>& fns)
{
    if (fns.empty()) throw ParameterError("lin_comb: empty input");
    if (coeffs.size() != fns.size()) throw ParameterError("lin_comb: length mismatch");
    int L = 0;
    bool ex = true;
    for (std::size_t i = 0; i < fns.size(); ++i) {
        require_same_domain(fns[0], fns[i], "lin_comb");
        L = std::max(L, fns[i].level());
        ex = ex && fns[i].is_exact() && coeffs[i].is_exact();
    }
    check_budget(L, "lin_comb");
    const std::size_t n = std::size_t(1) << L;
    if (ex) {
        std::vector<mpq_class> acc(n, mpq_class(0));
        for (std::size_t i = 0; i < fns.size(); ++i) {
            const mpq_class& c = coeffs[i].q();
            if (c == 0) continue;
            std::size_t rep = std::size_t(1) << (L - fns[i].level());
            const auto& v = fns[i].qvals();
            for (std::size_t c0 = 0; c0 < v.size(); ++c0) {
                if (v[c0] == 0) continue;
                mpq_class t = c * v[c0];
                for (std::size_t r = 0; r < rep; ++r) acc[c0 * rep + r] += t;
            }
        }
        return StepFn::exact(fns[0].a(), fns[0].b(), L, std::move(acc));
    }
    std::vector<double> acc(n, 0.0);
    for (std::size_t i = 0; i < fns.size(); ++i) {
        double c = coeffs[i].d();
        if (fns[i].level() == L && !fns[i].is_exact()) {
            kernels::axpy(c, fns[i].dvals().data(), acc.data(), n);
        } else {
            auto v = values_at(fns[i], L);
            kernels::axpy(c, v.data(), acc.data(), n);
        }
    }
    return StepFn::real(fns[0].a(), fns[0].b(), L, std::move(acc));
}

StepFn add(const StepFn& f, const StepFn& g) { return lin_comb({Scalar(1), Scalar(1)}, {f, g}); }
StepFn sub(const StepFn& f, const StepFn& g) { return lin_comb({Scalar(1), Scalar(-1)}, {f, g}); }
StepFn scale(const Scalar& c, const StepFn& f) { return lin_comb({c}, {f}); }

Scalar inner(const StepFn& f, const StepFn& g)
{
    require_same_domain(f, g, "inner");
    int L = common_level(f, g);
    if (f.is_exact() && g.is_exact()) {
        // sum over the coarser grid: each coarse cell pairs with a block of fine cells
        const StepFn& lo = f.level() <= g.level() ? f : g;
        const StepFn& hi = f.level() <= g.level() ? g : f;
        std::size_t rep = std::size_t(1) << (hi.level() - lo.level());
        mpq_class acc(0);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (lo.qvals()[i] == 0) continue;
            mpq_class s(0);
            for (std::size_t r = 0; r < rep; ++r) s += hi.qvals()[i * rep + r];
            acc += lo.qvals()[i] * s;
        }
        acc *= (f.b() - f.a()) / pow2(L);
        return Scalar(acc);
    }
    double w = mpq_class((f.b() - f.a()) / pow2(L)).get_d();
    if (f.level() == L && g.level() == L && !f.is_exact() && !g.is_exact())
        return Scalar::real(kernels::dot(f.dvals().data(), g.dvals().data(), f.size()) * w);
    auto x = values_at(f, L), y = values_at(g, L);
    return Scalar::real(kernels::dot(x.data(), y.data(), x.size()) * w);
}

Scalar integral(const StepFn& f)
{
    if (f.is_exact()) {
        mpq_class s(0);
        for (auto& q : f.qvals()) s += q;
        return Scalar(mpq_class(s * f.cell_width()));
    }
    return Scalar::real(kernels::sum(f.dvals().data(), f.size()) * f.cell_width().get_d());
}

Scalar norm2_sq(const StepFn& f) { return inner(f, f); }

Scalar sup_norm(const StepFn& f)
{
    if (f.is_exact()) {
        mpq_class m(0);
        for (auto& q : f.qvals()) {
            mpq_class a = abs(q);
            if (a > m) m = a;
        }
        return Scalar(m);
    }
    return Scalar::real(kernels::max_abs(f.dvals().data(), f.size()));
}

StepFn dilate_pow2(const StepFn& f, int m)
{
    if (m < 0) throw LevelError("dilate_pow2: negative exponent");
    if (m == 0) return f;
    int L = f.level() + m;
    check_budget(L, "dilate_pow2");
    std::size_t tiles = std::size_t(1) << m;
    if (f.is_exact()) {
        std::vector<mpq_class> v;
        v.reserve(f.size() * tiles);
        for (std::size_t t = 0; t < tiles; ++t) v.insert(v.end(), f.qvals().begin(), f.qvals().end());
        return StepFn::exact(f.a(), f.b(), L, std::move(v));
    }
    std::vector<double> v;
    v.reserve(f.size() * tiles);
    for (std::size_t t = 0; t < tiles; ++t) v.insert(v.end(), f.dvals().begin(), f.dvals().end());
    return StepFn::real(f.a(), f.b(), L, std::move(v));
}

StepFn translate_dyadic(const StepFn& f, long j, int m)
{
    if (m < 0) throw LevelError("translate_dyadic: negative level");
    StepFn g = m > f.level() ? refine(f, m) : f;
    const long n = long(g.size());
    // shift in cells, reduced mod n
    long unit = long(1) << (g.level() - m);
    long s = ((j % (n / unit)) * unit) % n;
    if (s < 0) s += n;
    if (s == 0) return g;
    if (g.is_exact()) {
        std::vector<mpq_class> v(n);
        for (long c = 0; c < n; ++c) v[c] = g.qvals()[(c - s + n) % n];
        return StepFn::exact(g.a(), g.b(), g.level(), std::move(v));
    }
    std::vector<double> v(n);
    for (long c = 0; c < n; ++c) v[c] = g.dvals()[(c - s + n) % n];
    return StepFn::real(g.a(), g.b(), g.level(), std::move(v));
}

StepFn restrict(const StepFn& f, const DyadicInterval& sub)
{
    if (sub.level < 0 || sub.nu < 1 || sub.nu > (long(1) << sub.level)) throw IndexError("restrict: bad dyadic interval");
    return restrict(f, sub.lo(), sub.hi());
}

StepFn restrict(const StepFn& f, const mpq_class& lo, const mpq_class& hi)
{
    if (!(lo < hi) || lo < f.a() || hi > f.b()) throw DomainError("restrict: interval outside domain");
    mpq_class len = f.length();
    mpq_class rel = (hi - lo) / len;
    // rel must be 2^-m
    int m = dyadic_level_of(rel, 0);
    if (m < 0 || rel != mpq_class(1) / pow2(m)) throw DomainError("restrict: length is not a dyadic fraction of the domain");
    int L = dyadic_level_of(mpq_class((lo - f.a()) / len), std::max(f.level(), m));
    if (L < 0) throw DomainError("restrict: misaligned boundary");
    check_budget(L, "restrict");
    StepFn g = refine(f, L);
    mpq_class first = (lo - f.a()) / len * pow2(L);
    std::size_t start = first.get_num().get_ui();
    std::size_t count = std::size_t(1) << (L - m);
    if (g.is_exact()) {
        std::vector<mpq_class> v(g.qvals().begin() + start, g.qvals().begin() + start + count);
        return StepFn::exact(lo, hi, L - m, std::move(v));
    }
    std::vector<double> v(g.dvals().begin() + start, g.dvals().begin() + start + count);
    return StepFn::real(lo, hi, L - m, std::move(v));
}

StepFn concat(const std::vector<StepFn>& parts)
{
    if (parts.empty()) throw ParameterError("concat: empty input");
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (parts[i].a() != parts[i - 1].b()) throw DomainError("concat: parts do not tile");
    mpq_class a = parts.front().a(), b = parts.back().b(), len = b - a;
    int L = 0;
    bool ex = true;
    for (auto& p : parts) {
        mpq_class rel = p.length() / len;
        int m = dyadic_level_of(rel, 0);
        if (m < 0 || rel != mpq_class(1) / pow2(m)) throw DomainError("concat: part length is not dyadic");
        int need = dyadic_level_of(mpq_class((p.a() - a) / len), p.level() + m);
        if (need < 0) throw DomainError("concat: misaligned boundary");
        L = std::max(L, need);
        ex = ex && p.is_exact();
    }
    check_budget(L, "concat");
    if (ex) {
        std::vector<mpq_class> v;
        v.reserve(std::size_t(1) << L);
        for (auto& p : parts) {
            int m = dyadic_level_of(mpq_class(p.length() / len), 0);
            auto r = refine(p, L - m);
            v.insert(v.end(), r.qvals().begin(), r.qvals().end());
        }
        return StepFn::exact(a, b, L, std::move(v));
    }
    std::vector<double> v;
    v.reserve(std::size_t(1) << L);
    for (auto& p : parts) {
        int m = dyadic_level_of(mpq_class(p.length() / len), 0);
        auto r = values_at(p, L - m);
        v.insert(v.end(), r.begin(), r.end());
    }
    return StepFn::real(a, b, L, std::move(v));
}

StepFn project(const StepFn& f, int j)
{
    if (j < 0) throw LevelError("project: negative level");
    if (j >= f.level()) return f;
    std::size_t blk = std::size_t(1) << (f.level() - j);
    std::size_t n = std::size_t(1) << j;
    if (f.is_exact()) {
        std::vector<mpq_class> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class s(0);
            for (std::size_t r = 0; r < blk; ++r) s += f.qvals()[i * blk + r];
            v[i] = s / mpq_class(long(blk));
        }
        return StepFn::exact(f.a(), f.b(), j, std::move(v));
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = kernels::sum(f.dvals().data() + i * blk, blk) / double(blk);
    return StepFn::real(f.a(), f.b(), j, std::move(v));
}

Scalar eval(const StepFn& f, const mpq_class& x)
{
    if (x <= f.a() || x >= f.b()) throw DomainError("eval: point outside the open domain");
    mpq_class pos = (x - f.a()) / f.cell_width();
    if (pos.get_den() == 1) throw UndefinedPointError("eval: " + rational_str(x) + " is a breakpoint");
    mpz_class cell = pos.get_num() / pos.get_den();
    return f.value(cell.get_ui());
}

int detect_level(const StepFn& f)
{
    int k = f.level();
    while (k > 0) {
        std::size_t blk = std::size_t(1) << (f.level() - k + 1);
        bool ok = true;
        for (std::size_t i = 0; ok && i < f.size(); i += blk)
            for (std::size_t r = 1; r < blk; ++r) {
                bool same = f.is_exact() ? f.qvals()[i + r] == f.qvals()[i] : f.dvals()[i + r] == f.dvals()[i];
                if (!same) {
                    ok = false;
                    break;
                }
            }
        if (!ok) break;
        --k;
    }
    return k;
}

StepFn canonicalize(const StepFn& f)
{
    int k = detect_level(f);
    if (k == f.level()) return f;
    std::size_t blk = std::size_t(1) << (f.level() - k);
    std::size_t n = std::size_t(1) << k;
    if (f.is_exact()) {
        std::vector<mpq_class> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = f.qvals()[i * blk];
        return StepFn::exact(f.a(), f.b(), k, std::move(v));
    }
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = f.dvals()[i * blk];
    return StepFn::real(f.a(), f.b(), k, std::move(v));
}

bool in_space(const StepFn& f, int k) { return detect_level(f) <= k; }

bool mean_zero_on(const StepFn& f, int k, double tol)
{
    if (k >= f.level()) {
        // only the zero function is mean-zero on its own cells
        if (f.is_exact())
            return std::all_of(f.qvals().begin(), f.qvals().end(), [](const mpq_class& q) { return q == 0; });
        return kernels::max_abs(f.dvals().data(), f.size()) <= tol;
    }
    StepFn p = project(f, k);
    if (p.is_exact()) {
        if (tol == 0.0)
            return std::all_of(p.qvals().begin(), p.qvals().end(), [](const mpq_class& q) { return q == 0; });
        return std::all_of(p.qvals().begin(), p.qvals().end(), [&](const mpq_class& q) { return std::fabs(q.get_d()) <= tol; });
    }
    return kernels::max_abs(p.dvals().data(), p.size()) <= tol;
}

} // namespace euclid
