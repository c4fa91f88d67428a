#include "euclid/scalar.hpp"

#include "euclid/errors.hpp"

#include <cmath>
#include <cstdio>

namespace euclid {

const char* mode_name(Mode m) { return m == Mode::exact ? "exact" : "float"; }

Mode parse_mode(const std::string& s)
{
    if (s == "exact") return Mode::exact;
    if (s == "float" || s == "real") return Mode::real;
    throw ParameterError("unknown scalar mode: " + s);
}

mpq_class parse_rational(const std::string& raw)
{
    std::string s;
    for (char c : raw)
        if (c != ' ') s += c;
    if (s.empty()) throw ParameterError("empty rational literal");
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            mpq_class q(mpz_class(s.substr(0, slash), 10), mpz_class(s.substr(slash + 1), 10));
            if (q.get_den() == 0) throw ParameterError("zero denominator: " + raw);
            q.canonicalize();
            return q;
        }
        auto e = s.find_first_of("eE");
        std::string mant = s.substr(0, e);
        long exp10 = e == std::string::npos ? 0 : std::stol(s.substr(e + 1));
        bool neg = !mant.empty() && mant[0] == '-';
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) mant = mant.substr(1);
        auto dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            exp10 -= long(mant.size() - dot - 1);
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw ParameterError("bad rational literal: " + raw);
        mpz_class num(digits, 10), ten(10), p;
        mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), (unsigned long)std::labs(exp10));
        mpq_class q = exp10 >= 0 ? mpq_class(num * p) : mpq_class(num, p);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    } catch (const std::invalid_argument&) {
        throw ParameterError("bad rational literal: " + raw);
    }
}

std::string rational_str(const mpq_class& q)
{
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string double_str(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Scalar Scalar::exact(long p, long q) { return Scalar(mpq_class(p, q)); }

Scalar Scalar::real(double v)
{
    Scalar s;
    s.mode_ = Mode::real;
    s.q_ = 0;
    s.d_ = v;
    return s;
}

Scalar Scalar::abs() const { return is_exact() ? Scalar(mpq_class(::abs(q_))) : real(std::fabs(d_)); }

std::string Scalar::str() const { return is_exact() ? rational_str(q_) : double_str(d_); }

Scalar Scalar::parse(const std::string& s, Mode m)
{
    if (m == Mode::exact) return Scalar(parse_rational(s));
    if (s.find('/') != std::string::npos) return real(parse_rational(s).get_d());
    return real(std::stod(s));
}

Scalar Scalar::operator-() const { return is_exact() ? Scalar(mpq_class(-q_)) : real(-d_); }

Scalar& Scalar::operator+=(const Scalar& o)
{
    if (is_exact() && o.is_exact()) {
        q_ += o.q_;
        d_ = q_.get_d();
    } else {
        *this = real(d_ + o.d_);
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o)
{
    if (is_exact() && o.is_exact()) {
        q_ -= o.q_;
        d_ = q_.get_d();
    } else {
        *this = real(d_ - o.d_);
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o)
{
    if (is_exact() && o.is_exact()) {
        q_ *= o.q_;
        d_ = q_.get_d();
    } else {
        *this = real(d_ * o.d_);
    }
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o)
{
    if (is_exact() && o.is_exact()) {
        if (o.q_ == 0) throw ParameterError("division by zero");
        q_ /= o.q_;
        d_ = q_.get_d();
    } else {
        *this = real(d_ / o.d_);
    }
    return *this;
}

bool operator==(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return a.q_ == b.q_;
    return a.d_ == b.d_;
}

bool operator<(const Scalar& a, const Scalar& b)
{
    if (a.is_exact() && b.is_exact()) return a.q_ < b.q_;
    return a.d_ < b.d_;
}

std::optional<mpq_class> exact_sqrt(const mpq_class& q)
{
    if (q < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

Scalar sqrt(const Scalar& s)
{
    if (s.is_exact()) {
        if (auto r = exact_sqrt(s.q())) return Scalar(*r);
    }
    if (s.d() < 0) throw ParameterError("square root of a negative value");
    return Scalar::real(std::sqrt(s.d()));
}

mpq_class pow2(int e)
{
    mpz_class p(1);
    p <<= (unsigned long)std::abs(e);
    return e >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
}

Scalar pow2_half(int e)
{
    if (e % 2 == 0) return Scalar(pow2(e / 2));
    return Scalar::real(std::ldexp(std::sqrt(2.0), (e - 1) / 2));
}

} // namespace euclid
