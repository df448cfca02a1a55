#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "wres/numeric.hpp"

namespace wres {

using Q = mpq_class;

// a + b i with exact rational parts
struct GaussQ {
    Q re, im;

    GaussQ() = default;
    GaussQ(long v) : re(v), im(0) {}
    GaussQ(Q r) : re(std::move(r)), im(0) { re.canonicalize(); }
    GaussQ(Q r, Q i) : re(std::move(r)), im(std::move(i)) {
        re.canonicalize();
        im.canonicalize();
    }
    static GaussQ frac(long num, long den) { Q q(num, den); q.canonicalize(); return GaussQ(q); }
    static GaussQ i() { return GaussQ(0, 1); }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussQ &operator+=(const GaussQ &o) { re += o.re; im += o.im; return *this; }
    GaussQ &operator-=(const GaussQ &o) { re -= o.re; im -= o.im; return *this; }
    GaussQ &operator*=(const GaussQ &o);
    friend GaussQ operator+(GaussQ a, const GaussQ &b) { return a += b; }
    friend GaussQ operator-(GaussQ a, const GaussQ &b) { return a -= b; }
    friend GaussQ operator*(GaussQ a, const GaussQ &b) { return a *= b; }
    GaussQ operator-() const { return GaussQ(-re, -im); }
    friend bool operator==(const GaussQ &a, const GaussQ &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const GaussQ &a, const GaussQ &b) { return !(a == b); }

    GaussQ inverse() const;
    std::string to_string() const;
};

// Frame indices are 1..15; atoms and vector symbols pack them into nibbles.
using Atom = std::uint32_t;
using VecId = std::uint16_t;

enum class AtomKind : std::uint8_t {
    HPrime = 1,
    A,        // a_l^p
    DA,       // d/dx_j (a_h^p)
    Vc,       // V_k
    NabJ,     // g((nabla_{e_al} J) e_be, e_ga)
    GPair,    // g(u, v) for vector symbols
    CurvR,    // R(J e_i, J e_j, e_k, e_l)
    ScalS,
    VNormSq,
};

enum class VecKind : std::uint8_t {
    E = 1,  // frame vector e_h
    JX,     // J(dx_p)
    JXt,    // tangential part of J(dx_p)
    JT,     // sum_h a_nu^h e_h
    DJX,    // d/dx_j J(dx_p)
    V,
    NJ,     // (nabla_{e_al} J) e_la
    D2J,    // (nabla_j nabla_nu J) e_j - (nabla_{nabla_j e_nu} J) e_j
    DV,     // nabla_{e_i} V
};

namespace vec {
VecId make(VecKind k, int x = 0, int y = 0);
inline VecId e(int h) { return make(VecKind::E, h); }
inline VecId jx(int p) { return make(VecKind::JX, p); }
inline VecId jxt(int p) { return make(VecKind::JXt, p); }
inline VecId jt(int nu) { return make(VecKind::JT, nu); }
inline VecId djx(int j, int p) { return make(VecKind::DJX, j, p); }
inline VecId v() { return make(VecKind::V); }
inline VecId nj(int al, int la) { return make(VecKind::NJ, al, la); }
inline VecId d2j(int j, int nu) { return make(VecKind::D2J, j, nu); }
inline VecId dv(int i) { return make(VecKind::DV, i); }
VecKind kind(VecId v);
int arg0(VecId v);
int arg1(VecId v);
std::string name(VecId v);
}  // namespace vec

namespace atom {
Atom hprime();
Atom a(int l, int p);
Atom da(int j, int h, int p);
Atom vc(int k);
Atom nabj(int al, int be, int ga);
Atom gpair(VecId u, VecId v);
Atom curv(int i, int j, int k, int l);
Atom scal_s();
Atom vnormsq();
AtomKind kind(Atom a);
int idx(Atom a, int slot);  // slot-th nibble of the payload
std::pair<VecId, VecId> gpair_args(Atom a);
std::string to_string(Atom a);
// Inverse of to_string; throws std::invalid_argument.
Atom parse(const std::string &s);
}  // namespace atom

// Product of atoms (sorted, repeats allowed) times pi^pi.
struct Monomial {
    static constexpr int kCap = 14;
    std::uint8_t pi = 0;
    std::uint8_t n = 0;
    std::array<Atom, kCap> at{};

    Monomial() = default;
    static Monomial of(Atom a) { Monomial m; m.at[0] = a; m.n = 1; return m; }
    static Monomial pi_pow(int k) { Monomial m; m.pi = static_cast<std::uint8_t>(k); return m; }

    bool is_one() const { return n == 0 && pi == 0; }
    void mul_atom(Atom a);
    friend Monomial operator*(const Monomial &x, const Monomial &y);
    friend bool operator==(const Monomial &x, const Monomial &y);
    friend bool operator<(const Monomial &x, const Monomial &y);
    std::size_t hash() const;
    std::string to_string() const;  // atoms only, '*'-joined
};

struct MonomialHash {
    std::size_t operator()(const Monomial &m) const { return m.hash(); }
};

class Scalar {
public:
    using Term = std::pair<Monomial, GaussQ>;

    Scalar() = default;
    Scalar(const GaussQ &c);
    Scalar(long c) : Scalar(GaussQ(c)) {}
    static Scalar atom(Atom a);
    static Scalar monomial(const Monomial &m, const GaussQ &c);
    static Scalar pi(int k = 1);
    // Builds from unsorted terms; merges duplicates and drops zeros.
    static Scalar from_terms(std::vector<Term> terms);

    const std::vector<Term> &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_real() const;
    std::size_t size() const { return terms_.size(); }

    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const GaussQ &c);
    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(const Scalar &a, const Scalar &b);
    friend Scalar operator*(Scalar a, const GaussQ &c) { return a *= c; }
    Scalar operator-() const;
    friend bool operator==(const Scalar &a, const Scalar &b);
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    // Coefficient of pi^k with no atoms.
    GaussQ constant(int pi_power = 0) const;
    // Replace every atom through f (each atom maps to a Scalar).
    Scalar substitute(const std::function<Scalar(Atom)> &f) const;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

Scalar scalar_add(const Scalar &a, const Scalar &b);
Scalar scalar_mul(const Scalar &a, const Scalar &b);

// Unordered accumulator for hot loops.
class ScalarAcc {
public:
    void add(const Monomial &m, const GaussQ &c);
    void add(const Scalar &s);
    void add_product(const Scalar &s, const Monomial &m, const GaussQ &c);
    Scalar to_scalar() const;
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<Monomial, GaussQ, MonomialHash> map_;
};

struct MissingAtom : std::runtime_error {
    explicit MissingAtom(Atom a) : std::runtime_error("no value assigned to atom " + atom::to_string(a)), which(a) {}
    Atom which;
};

template <class R>
using Assignment = std::unordered_map<Atom, Cx<R>>;

template <class R>
Cx<R> to_cx(const GaussQ &q) {
    return Cx<R>(q_to_real<R>(q.re), q_to_real<R>(q.im));
}

template <class R>
Cx<R> scalar_eval_numeric(const Scalar &s, const Assignment<R> &asg, const R &pi_value) {
    Cx<R> total;
    for (const auto &[m, c] : s.terms()) {
        Cx<R> t = to_cx<R>(c);
        for (int k = 0; k < m.pi; ++k) t = t * Cx<R>(pi_value);
        for (int k = 0; k < m.n; ++k) {
            auto it = asg.find(m.at[k]);
            if (it == asg.end()) throw MissingAtom(m.at[k]);
            t = t * it->second;
        }
        total = total + t;
    }
    return total;
}

}  // namespace wres
