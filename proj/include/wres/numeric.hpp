#pragma once

#include <cmath>
#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <gmpxx.h>

namespace wres {

using BigFloat = boost::multiprecision::mpfr_float;

// Minimal complex type usable with both double and BigFloat.
template <class R>
struct Cx {
    R re{0}, im{0};
    Cx() = default;
    Cx(R r) : re(std::move(r)), im(0) {}
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

    friend Cx operator+(const Cx &a, const Cx &b) { return Cx(a.re + b.re, a.im + b.im); }
    friend Cx operator-(const Cx &a, const Cx &b) { return Cx(a.re - b.re, a.im - b.im); }
    friend Cx operator*(const Cx &a, const Cx &b) {
        return Cx(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Cx operator*(const Cx &a, const R &s) { return Cx(a.re * s, a.im * s); }
    friend Cx operator/(const Cx &a, const Cx &b) {
        R d = b.re * b.re + b.im * b.im;
        return Cx((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
    }
    Cx operator-() const { return Cx(-re, -im); }
    Cx &operator+=(const Cx &b) { re += b.re; im += b.im; return *this; }
    Cx &operator-=(const Cx &b) { re -= b.re; im -= b.im; return *this; }
    Cx &operator*=(const Cx &b) { *this = *this * b; return *this; }
    Cx conj() const { return Cx(re, -im); }
    R norm2() const { return re * re + im * im; }
};

template <class R>
R cx_abs(const Cx<R> &z) {
    using std::sqrt;
    return sqrt(z.norm2());
}

template <class R>
R q_to_real(const mpq_class &q);

template <>
inline double q_to_real<double>(const mpq_class &q) { return q.get_d(); }

template <>
inline BigFloat q_to_real<BigFloat>(const mpq_class &q) {
    return BigFloat(q.get_num().get_str()) / BigFloat(q.get_den().get_str());
}

template <class R>
R real_pi();

template <>
inline double real_pi<double>() { return 3.14159265358979323846264338327950288; }

template <>
inline BigFloat real_pi<BigFloat>() {
    BigFloat r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

template <class R>
double to_double(const R &x) { return static_cast<double>(x); }

// Sets the working precision of BigFloat in decimal digits.
inline void set_big_digits(unsigned digits) { BigFloat::default_precision(digits); }

}  // namespace wres
