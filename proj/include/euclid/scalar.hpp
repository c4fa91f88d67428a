#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace euclid {

enum class Mode { exact, real };

inline Mode join(Mode a, Mode b) { return (a == Mode::exact && b == Mode::exact) ? Mode::exact : Mode::real; }

const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);

// "p/q", "p", or a decimal literal; decimals are read exactly as rationals
mpq_class parse_rational(const std::string& s);
std::string rational_str(const mpq_class& q);
std::string double_str(double v);

class Scalar {
public:
    Scalar() : mode_(Mode::exact), q_(0), d_(0.0) {}
    Scalar(int v) : mode_(Mode::exact), q_(v), d_(v) {}
    Scalar(long v) : mode_(Mode::exact), q_(v), d_(double(v)) {}
    Scalar(const mpq_class& q) : mode_(Mode::exact), q_(q), d_(q.get_d()) { q_.canonicalize(); }

    static Scalar exact(const mpq_class& q) { return Scalar(q); }
    static Scalar exact(long p, long q);
    static Scalar real(double v);

    Mode mode() const { return mode_; }
    bool is_exact() const { return mode_ == Mode::exact; }
    const mpq_class& q() const { return q_; }
    double d() const { return d_; }

    Scalar to_real() const { return real(d_); }
    Scalar abs() const;
    std::string str() const;
    static Scalar parse(const std::string& s, Mode m = Mode::exact);

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator<(const Scalar& a, const Scalar& b);
    friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
    friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

private:
    Mode mode_;
    mpq_class q_;
    double d_;
};

// exact square root when q is a square of a rational
std::optional<mpq_class> exact_sqrt(const mpq_class& q);
Scalar sqrt(const Scalar& s);
// 2^{e/2}, exact when e is even
Scalar pow2_half(int e);
mpq_class pow2(int e);

} // namespace euclid
