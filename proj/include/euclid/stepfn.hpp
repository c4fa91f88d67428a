#pragma once

#include "euclid/errors.hpp"
#include "euclid/scalar.hpp"

#include <cstddef>
#include <vector>

namespace euclid {

// Global level budget.  Any operation that would produce a level above
// kmax() throws BudgetError.
int kmax();
void set_kmax(int k);
void check_budget(int level, const char* what);

struct BudgetScope {
    explicit BudgetScope(int k) : saved(kmax()) { set_kmax(k); }
    ~BudgetScope() { set_kmax(saved); }
    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;
    int saved;
};

// [a + (nu-1)(b-a)/2^level, a + nu(b-a)/2^level], 1 <= nu <= 2^level
struct DyadicInterval {
    mpq_class a{0}, b{1};
    int level = 0;
    long nu = 1;

    mpq_class lo() const;
    mpq_class hi() const;
    mpq_class length() const { return (b - a) / pow2(level); }
};

class StepFn {
public:
    StepFn();

    static StepFn constant(const Scalar& c, const mpq_class& a = 0, const mpq_class& b = 1);
    static StepFn zero(const mpq_class& a = 0, const mpq_class& b = 1, int level = 0, Mode m = Mode::exact);
    static StepFn exact(const mpq_class& a, const mpq_class& b, int level, std::vector<mpq_class> v);
    static StepFn real(const mpq_class& a, const mpq_class& b, int level, std::vector<double> v);
    // mode promotes to float if any value is float
    static StepFn from_scalars(const mpq_class& a, const mpq_class& b, int level, const std::vector<Scalar>& v);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    mpq_class length() const { return b_ - a_; }
    mpq_class cell_width() const { return length() / pow2(level_); }
    int level() const { return level_; }
    std::size_t size() const { return std::size_t(1) << level_; }
    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::exact; }

    Scalar value(std::size_t i) const;
    double dval(std::size_t i) const { return is_exact() ? q_[i].get_d() : d_[i]; }
    const std::vector<mpq_class>& qvals() const { return q_; }
    const std::vector<double>& dvals() const { return d_; }
    std::vector<double> as_doubles() const;
    std::vector<Scalar> scalars() const;

    StepFn to_real() const;
    bool same_domain(const StepFn& o) const { return a_ == o.a_ && b_ == o.b_; }

    // identical representation (domain, level, mode, values)
    friend bool operator==(const StepFn& f, const StepFn& g);

private:
    mpq_class a_, b_;
    int level_ = 0;
    Mode mode_ = Mode::exact;
    std::vector<mpq_class> q_;
    std::vector<double> d_;
};

StepFn refine(const StepFn& f, int j);
StepFn lin_comb(const std::vector<Scalar>& coeffs, const std::vector<StepFn>& fns);
StepFn add(const StepFn& f, const StepFn& g);
StepFn sub(const StepFn& f, const StepFn& g);
StepFn scale(const Scalar& c, const StepFn& f);

Scalar inner(const StepFn& f, const StepFn& g);
Scalar integral(const StepFn& f);
Scalar norm2_sq(const StepFn& f);
Scalar sup_norm(const StepFn& f);

// x -> f(2^m x) with f extended periodically (period = domain length)
StepFn dilate_pow2(const StepFn& f, int m);
// x -> f(x - j * length * 2^-m), periodic wrap
StepFn translate_dyadic(const StepFn& f, long j, int m);

StepFn restrict(const StepFn& f, const DyadicInterval& sub);
StepFn restrict(const StepFn& f, const mpq_class& lo, const mpq_class& hi);
StepFn concat(const std::vector<StepFn>& parts);

// conditional expectation onto level-j cells
StepFn project(const StepFn& f, int j);
Scalar eval(const StepFn& f, const mpq_class& x);

int detect_level(const StepFn& f);
StepFn canonicalize(const StepFn& f);
bool in_space(const StepFn& f, int k);
// f in E^{k, level}: zero mean on every level-k cell
bool mean_zero_on(const StepFn& f, int k, double tol = 0.0);

// both functions refined to a common level; values as doubles
int common_level(const StepFn& f, const StepFn& g);
std::vector<double> values_at(const StepFn& f, int level);

} // namespace euclid
