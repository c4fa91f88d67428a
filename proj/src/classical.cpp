#include "euclid/classical.hpp"

#include <algorithm>
#include <cmath>

namespace euclid {

StepFn haar_level(int k, long j)
{
    if (k < 0) throw IndexError("haar_level: negative k");
    if (k + 1 > 62 || j < 1 || j > (long(1) << k)) throw IndexError("haar_level: j out of range");
    check_budget(k + 1, "haar_level");
    std::size_t n = std::size_t(1) << (k + 1);
    Scalar amp = pow2_half(k);
    if (amp.is_exact()) {
        std::vector<mpq_class> v(n, mpq_class(0));
        v[2 * (j - 1)] = amp.q();
        v[2 * (j - 1) + 1] = -amp.q();
        return StepFn::exact(0, 1, k + 1, std::move(v));
    }
    std::vector<double> v(n, 0.0);
    v[2 * (j - 1)] = amp.d();
    v[2 * (j - 1) + 1] = -amp.d();
    return StepFn::real(0, 1, k + 1, std::move(v));
}

StepFn haar(long n)
{
    if (n < 1) throw IndexError("haar: index must be >= 1");
    if (n == 1) return StepFn::constant(Scalar(1));
    int k = 0;
    while ((long(1) << (k + 1)) < n) ++k;
    return haar_level(k, n - (long(1) << k));
}

StepFn rademacher(int n)
{
    if (n < 0) throw IndexError("rademacher: negative index");
    check_budget(n + 1, "rademacher");
    std::size_t sz = std::size_t(1) << (n + 1);
    std::vector<mpq_class> v(sz);
    for (std::size_t i = 0; i < sz; ++i) v[i] = (i % 2 == 0) ? 1 : -1;
    return StepFn::exact(0, 1, n + 1, std::move(v));
}

const char* kind_name(MatrixKind k)
{
    switch (k) {
    case MatrixKind::haar: return "haar";
    case MatrixKind::olevskii: return "olevskii";
    default: return "custom";
    }
}

MatrixKind parse_kind(const std::string& s)
{
    if (s == "haar") return MatrixKind::haar;
    if (s == "olevskii") return MatrixKind::olevskii;
    if (s == "custom") return MatrixKind::custom;
    throw ParameterError("unknown matrix kind: " + s);
}

Mode OrthoMatrix::mode() const
{
    for (auto& e : entries)
        if (!e.is_exact()) return Mode::real;
    return Mode::exact;
}

Scalar OrthoMatrix::transpose_product(int i, int j) const
{
    Scalar s(0);
    for (int r = 0; r < size; ++r) s += at(r, i) * at(r, j);
    return s;
}

Scalar OrthoMatrix::orthogonality_residual() const
{
    // exact result only if every residual is exact
    mpq_class wq(0);
    double wd = 0.0;
    bool ex = true;
    for (int i = 0; i < size; ++i)
        for (int j = i; j < size; ++j) {
            Scalar d = (transpose_product(i, j) - Scalar(i == j ? 1 : 0)).abs();
            if (d.is_exact()) {
                if (d.q() > wq) wq = d.q();
            } else {
                ex = false;
            }
            wd = std::max(wd, d.d());
        }
    return ex ? Scalar(wq) : Scalar::real(wd);
}

OrthoMatrix haar_matrix(int k)
{
    if (k < 1) throw IndexError("haar_matrix: k must be >= 1");
    check_budget(k, "haar_matrix");
    if (k > dense_matrix_max_log) throw BudgetError("haar_matrix: dense 2^k x 2^k matrix too large");
    int n = 1 << k;
    OrthoMatrix m;
    m.size = n;
    m.kind = MatrixKind::haar;
    m.entries.assign(std::size_t(n) * n, Scalar(0));
    for (int i = 1; i <= n; ++i) {
        if (i == 1) {
            Scalar v = pow2_half(-k);
            for (int j = 0; j < n; ++j) m.at(0, j) = v;
            continue;
        }
        int l = 0;
        while ((1 << (l + 1)) < i) ++l;
        int jj = i - (1 << l);
        // h^{(l)}_{jj} at midpoints of level-k cells: support cells [(jj-1) 2^{k-l}, jj 2^{k-l})
        Scalar v = pow2_half(l - k);
        int w = 1 << (k - l);
        int start = (jj - 1) * w;
        for (int c = 0; c < w; ++c) m.at(i - 1, start + c) = c < w / 2 ? v : -v;
    }
    return m;
}

Scalar k_delta(long N)
{
    if (N < 1) throw IndexError("k_matrix: N must be >= 1");
    Scalar s = Scalar(1) / sqrt(Scalar(N + 1));
    return (Scalar(1) + s) / Scalar(N);
}

OrthoMatrix k_matrix(long N)
{
    if (N < 1) throw IndexError("k_matrix: N must be >= 1");
    if (N + 1 > (long(1) << dense_matrix_max_log)) throw BudgetError("k_matrix: dense matrix too large");
    int n = int(N + 1);
    Scalar s = Scalar(1) / sqrt(Scalar(N + 1));
    Scalar d = k_delta(N);
    Scalar one_minus = Scalar(1) - d, minus = -d;
    OrthoMatrix m;
    m.size = n;
    m.kind = MatrixKind::olevskii;
    m.entries.assign(std::size_t(n) * n, Scalar(0));
    for (int j = 0; j < n; ++j) m.at(0, j) = s;
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < n - 1; ++j) m.at(i, j) = (j == i - 1) ? one_minus : minus;
        m.at(i, n - 1) = s;
    }
    return m;
}

OrthoMatrix identity_matrix(int n)
{
    OrthoMatrix m;
    m.size = n;
    m.kind = MatrixKind::custom;
    m.entries.assign(std::size_t(n) * n, Scalar(0));
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar(1);
    return m;
}

std::vector<StepFn> apply_matrix(const OrthoMatrix& m, const std::vector<StepFn>& fns)
{
    if (int(fns.size()) != m.size) throw ParameterError("apply_matrix: size mismatch");
    std::vector<StepFn> out;
    out.reserve(fns.size());
    std::vector<Scalar> col(m.size);
    for (int j = 0; j < m.size; ++j) {
        for (int i = 0; i < m.size; ++i) col[i] = m.at(i, j);
        out.push_back(lin_comb(col, fns));
    }
    return out;
}

std::vector<Scalar> matrix_times(const OrthoMatrix& m, const std::vector<Scalar>& c)
{
    if (int(c.size()) != m.size) throw ParameterError("matrix_times: size mismatch");
    std::vector<Scalar> b(m.size, Scalar(0));
    for (int i = 0; i < m.size; ++i)
        for (int j = 0; j < m.size; ++j) b[i] += m.at(i, j) * c[j];
    return b;
}

std::vector<StepFn> le11_transform(const std::vector<StepFn>& fns)
{
    if (fns.size() < 2) throw ParameterError("le11_transform: need at least two functions");
    long N = long(fns.size()) - 1;
    Scalar s = Scalar(1) / sqrt(Scalar(N + 1));
    Scalar d = k_delta(N);
    std::vector<StepFn> out;
    out.reserve(N);
    std::vector<Scalar> c(fns.size());
    for (long j = 1; j <= N; ++j) {
        // -delta * sum_{i=1}^{N} f_{i+1} + f_{j+1} + s f_1
        c[0] = s;
        for (long i = 1; i <= N; ++i) c[i] = (i == j) ? Scalar(1) - d : -d;
        out.push_back(lin_comb(c, fns));
    }
    return out;
}

} // namespace euclid
