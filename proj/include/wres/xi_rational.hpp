#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wres/scalar.hpp"

namespace wres {

struct DecayError : std::domain_error {
    using std::domain_error::domain_error;
};

namespace detail {

// Polynomial helpers over GaussQ, lowest degree first.
using GPoly = std::vector<GaussQ>;

inline GPoly gpoly_mul(const GPoly &a, const GPoly &b) {
    if (a.empty() || b.empty()) return {};
    GPoly r(a.size() + b.size() - 1, GaussQ(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// (xi - i)^a (xi + i)^b
inline GPoly pole_denominator(int a, int b) {
    GPoly d{GaussQ(1)};
    for (int k = 0; k < a; ++k) d = gpoly_mul(d, GPoly{-GaussQ::i(), GaussQ(1)});
    for (int k = 0; k < b; ++k) d = gpoly_mul(d, GPoly{GaussQ::i(), GaussQ(1)});
    return d;
}

inline Q binom(long n, long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Q(r);
}

inline GaussQ gpow(const GaussQ &x, int e) {
    GaussQ r(1);
    for (int k = 0; k < e; ++k) r *= x;
    return r;
}

// First `terms` Taylor coefficients of (u + c)^(-e) in u.
inline GPoly inverse_power_series(const GaussQ &c, int e, int terms) {
    GPoly out;
    if (terms <= 0) return out;
    GaussQ ci = c.inverse();
    GaussQ lead = gpow(ci, e);
    GaussQ step(1);
    for (int m = 0; m < terms; ++m) {
        // C(e+m-1, m) (-1/c)^m
        GaussQ coef = e == 0 ? GaussQ(m == 0 ? 1 : 0) : GaussQ(binom(e + m - 1, m));
        out.push_back(lead * coef * step);
        step *= -ci;
    }
    return out;
}

inline Scalar times_pi(const GaussQ &c) { return Scalar::monomial(Monomial::pi_pow(1), c); }
inline Scalar times_pi(const Scalar &c) { return c * Scalar::pi(1); }

}  // namespace detail

// Rational function of xi_n with poles only at +i and -i, kept in partial fractions.
template <class Coef>
class RationalXi {
public:
    using Poly = std::vector<Coef>;

    RationalXi() = default;

    static RationalXi constant(const Coef &c) {
        RationalXi r;
        if (!c.is_zero()) r.poly_.push_back(c);
        return r;
    }

    // numerator / ((xi - i)^a (xi + i)^b), numerator lowest degree first
    static RationalXi from_fraction(const Poly &num, int a, int b) {
        RationalXi r;
        detail::GPoly den = detail::pole_denominator(a, b);
        // polynomial part by long division against a monic denominator
        Poly rem = num;
        const int dd = static_cast<int>(den.size()) - 1;
        if (static_cast<int>(rem.size()) - 1 >= dd) {
            Poly quot(rem.size() - dd, Coef(0));
            for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
                Coef q = rem[k];
                quot[k - dd] = q;
                if (q.is_zero()) continue;
                for (int m = 0; m <= dd; ++m) rem[k - dd + m] -= q * den[m];
            }
            r.poly_ = quot;
        }
        // principal parts from Laurent expansions at each pole
        r.plus_ = principal(num, GaussQ::i(), a, b, GaussQ(0, 2));
        r.minus_ = principal(num, -GaussQ::i(), b, a, GaussQ(0, -2));
        r.trim();
        return r;
    }

    // xi^k (1 + xi^2)^m for any integer m
    static RationalXi profile(int k, int m) {
        Poly num(k + 1, Coef(0));
        num[k] = Coef(1);
        if (m >= 0) {
            detail::GPoly p = detail::pole_denominator(m, m);
            Poly full(k + p.size(), Coef(0));
            for (std::size_t j = 0; j < p.size(); ++j) full[k + j] = Coef(1) * p[j];
            return from_fraction(full, 0, 0);
        }
        return from_fraction(num, -m, -m);
    }

    static RationalXi xi() {
        RationalXi r;
        r.poly_ = {Coef(0), Coef(1)};
        return r;
    }

    const Poly &poly() const { return poly_; }
    const std::map<int, Coef> &plus() const { return plus_; }
    const std::map<int, Coef> &minus() const { return minus_; }
    bool is_zero() const { return poly_.empty() && plus_.empty() && minus_.empty(); }
    bool decays() const { return poly_.empty(); }

    int plus_order() const { return plus_.empty() ? 0 : plus_.rbegin()->first; }
    int minus_order() const { return minus_.empty() ? 0 : minus_.rbegin()->first; }

    // numerator over (xi - i)^A (xi + i)^B with A, B the pole orders
    Poly numerator() const {
        const int A = plus_order(), B = minus_order();
        detail::GPoly den = detail::pole_denominator(A, B);
        Poly num;
        auto add_to = [&](const Poly &p) {
            if (num.size() < p.size()) num.resize(p.size(), Coef(0));
            for (std::size_t k = 0; k < p.size(); ++k) num[k] += p[k];
        };
        add_to(mul_g(poly_, den));
        for (const auto &[k, c] : plus_) add_to(mul_g(Poly{c}, detail::pole_denominator(A - k, B)));
        for (const auto &[k, c] : minus_) add_to(mul_g(Poly{c}, detail::pole_denominator(A, B - k)));
        return num;
    }

    RationalXi &operator+=(const RationalXi &o) {
        if (poly_.size() < o.poly_.size()) poly_.resize(o.poly_.size(), Coef(0));
        for (std::size_t k = 0; k < o.poly_.size(); ++k) poly_[k] += o.poly_[k];
        for (const auto &[k, c] : o.plus_) plus_[k] += c;
        for (const auto &[k, c] : o.minus_) minus_[k] += c;
        trim();
        return *this;
    }
    friend RationalXi operator+(RationalXi a, const RationalXi &b) { return a += b; }
    friend RationalXi operator-(RationalXi a, const RationalXi &b) { return a += b.scaled(GaussQ(-1)); }

    RationalXi times(const Coef &s) const {
        RationalXi r = *this;
        for (auto &c : r.poly_) c = c * s;
        for (auto &[k, c] : r.plus_) c = c * s;
        for (auto &[k, c] : r.minus_) c = c * s;
        r.trim();
        return r;
    }

    RationalXi scaled(const GaussQ &s) const {
        RationalXi r = *this;
        for (auto &c : r.poly_) c = c * s;
        for (auto &[k, c] : r.plus_) c = c * s;
        for (auto &[k, c] : r.minus_) c = c * s;
        r.trim();
        return r;
    }

    friend RationalXi operator*(const RationalXi &f, const RationalXi &g) {
        Poly nf = f.numerator(), ng = g.numerator();
        Poly prod;
        if (!nf.empty() && !ng.empty()) {
            prod.assign(nf.size() + ng.size() - 1, Coef(0));
            for (std::size_t i = 0; i < nf.size(); ++i)
                for (std::size_t j = 0; j < ng.size(); ++j) prod[i + j] += nf[i] * ng[j];
        }
        return from_fraction(prod, f.plus_order() + g.plus_order(), f.minus_order() + g.minus_order());
    }

    friend bool operator==(const RationalXi &a, const RationalXi &b) {
        return a.poly_ == b.poly_ && a.plus_ == b.plus_ && a.minus_ == b.minus_;
    }

    std::string to_string() const;

private:
    Poly poly_;
    std::map<int, Coef> plus_, minus_;

    static Poly mul_g(const Poly &p, const detail::GPoly &g) {
        if (p.empty() || g.empty()) return {};
        Poly r(p.size() + g.size() - 1, Coef(0));
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += p[i] * g[j];
        return r;
    }

    // Principal part at xi = z0 of num / ((xi - z0)^a (xi - z1)^b) where z0 - z1 = gap.
    static std::map<int, Coef> principal(const Poly &num, const GaussQ &z0, int a, int b, const GaussQ &gap) {
        std::map<int, Coef> out;
        if (a <= 0) return out;
        // num(t + z0) as a polynomial in t
        Poly shifted(num.size(), Coef(0));
        for (std::size_t k = 0; k < num.size(); ++k) {
            if (num[k].is_zero()) continue;
            for (std::size_t m = 0; m <= k; ++m) {
                GaussQ f = GaussQ(detail::binom(static_cast<long>(k), static_cast<long>(m))) *
                           detail::gpow(z0, static_cast<int>(k - m));
                shifted[m] += num[k] * f;
            }
        }
        detail::GPoly series = detail::inverse_power_series(gap, b, a);
        for (int k = 1; k <= a; ++k) {
            const int deg = a - k;  // coefficient of t^deg
            Coef c(0);
            for (int m = 0; m <= deg && m < static_cast<int>(shifted.size()); ++m)
                c += shifted[m] * series[deg - m];
            if (!c.is_zero()) out.emplace(k, c);
        }
        return out;
    }

    void trim() {
        while (!poly_.empty() && poly_.back().is_zero()) poly_.pop_back();
        for (auto it = plus_.begin(); it != plus_.end();) it = it->second.is_zero() ? plus_.erase(it) : ++it;
        for (auto it = minus_.begin(); it != minus_.end();) it = it->second.is_zero() ? minus_.erase(it) : ++it;
    }

    template <class C>
    friend RationalXi<C> rx_pi_plus(const RationalXi<C> &f);
    template <class C>
    friend RationalXi<C> rx_deriv(const RationalXi<C> &f);
    template <class C>
    friend RationalXi<C> rx_minus_part(const RationalXi<C> &f);
};

template <class Coef>
RationalXi<Coef> rx_pi_plus(const RationalXi<Coef> &f) {
    if (!f.decays()) throw DecayError("not in H+ (+) H0- decay class: nonzero polynomial part");
    RationalXi<Coef> r;
    r.plus_ = f.plus_;
    return r;
}

// The part analytic in the upper half-plane (principal part at -i).
template <class Coef>
RationalXi<Coef> rx_minus_part(const RationalXi<Coef> &f) {
    RationalXi<Coef> r;
    r.minus_ = f.minus_;
    return r;
}

template <class Coef>
RationalXi<Coef> rx_deriv(const RationalXi<Coef> &f) {
    RationalXi<Coef> r;
    for (std::size_t k = 1; k < f.poly_.size(); ++k) r.poly_.push_back(f.poly_[k] * GaussQ(static_cast<long>(k)));
    for (const auto &[k, c] : f.plus_) r.plus_.emplace(k + 1, c * GaussQ(-k));
    for (const auto &[k, c] : f.minus_) r.minus_.emplace(k + 1, c * GaussQ(-k));
    r.trim();
    return r;
}

// Integral over the real line, closing in the upper half-plane: 2 pi i Res_{+i}.
template <class Coef>
Scalar rx_integrate_line(const RationalXi<Coef> &f) {
    if (!f.decays()) throw DecayError("line integral: nonzero polynomial part");
    Coef c1 = f.plus().count(1) ? f.plus().at(1) : Coef(0);
    Coef d1 = f.minus().count(1) ? f.minus().at(1) : Coef(0);
    if (!(c1 + d1).is_zero()) throw DecayError("line integral: integrand decays only like 1/xi");
    return detail::times_pi(c1 * GaussQ(0, 2));
}

// pi' h = i times the residue at +i.
template <class Coef>
Coef rx_pi_prime(const RationalXi<Coef> &f) {
    if (!f.decays()) throw DecayError("pi': nonzero polynomial part");
    Coef c1 = f.plus().count(1) ? f.plus().at(1) : Coef(0);
    return c1 * GaussQ::i();
}

template <class Coef>
std::string RationalXi<Coef>::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    auto sep = [&]() { if (!s.empty()) s += " + "; };
    for (std::size_t k = 0; k < poly_.size(); ++k) {
        if (poly_[k].is_zero()) continue;
        sep();
        s += "(" + poly_[k].to_string() + ")*xi^" + std::to_string(k);
    }
    for (const auto &[k, c] : plus_) {
        sep();
        s += "(" + c.to_string() + ")/(xi-i)^" + std::to_string(k);
    }
    for (const auto &[k, c] : minus_) {
        sep();
        s += "(" + c.to_string() + ")/(xi+i)^" + std::to_string(k);
    }
    return s;
}

template <class R, class Coef, class EvalCoef>
Cx<R> rx_eval(const RationalXi<Coef> &f, const Cx<R> &xi, EvalCoef eval) {
    Cx<R> total;
    Cx<R> pw(R(1));
    for (const auto &c : f.poly()) {
        total += eval(c) * pw;
        pw = pw * xi;
    }
    const Cx<R> i(R(0), R(1));
    for (const auto &[k, c] : f.plus()) {
        Cx<R> d(R(1));
        for (int m = 0; m < k; ++m) d = d * (xi - i);
        total += eval(c) / d;
    }
    for (const auto &[k, c] : f.minus()) {
        Cx<R> d(R(1));
        for (int m = 0; m < k; ++m) d = d * (xi + i);
        total += eval(c) / d;
    }
    return total;
}

using RationalXiQ = RationalXi<GaussQ>;

}  // namespace wres
