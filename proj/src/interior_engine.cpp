#include "wres/interior_engine.hpp"

#include <stdexcept>

namespace wres {

namespace {

Letter c(VecId v) { return letter_c(v); }
Letter cb(VecId v) { return letter_cbar(v); }

}  // namespace

EndomorphismExpr build_endomorphism(int n) {
    EndomorphismExpr e;
    e.dim = n;
    auto push = [&](const std::string &group, AbstractWord w, Scalar s) {
        e.terms.emplace_back(std::move(w), std::move(s));
        ++e.group_sizes[group];
    };
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                for (int l = 1; l <= n; ++l)
                    push("curvature", {cb(vec::e(i)), cb(vec::e(j)), c(vec::e(k)), c(vec::e(l))},
                         Scalar::atom(atom::curv(i, j, k, l)) * GaussQ::frac(1, 8));
    push("scalar", {}, Scalar::atom(atom::scal_s()) * GaussQ::frac(-1, 4));
    for (int i = 1; i <= n; ++i) push("dv", {c(vec::jx(i)), cb(vec::dv(i))}, Scalar(-1));
    for (int nu = 1; nu <= n; ++nu)
        for (int j = 1; j <= n; ++j) push("nj-nj", {c(vec::nj(j, nu)), c(vec::nj(nu, j))}, Scalar(GaussQ::frac(1, 2)));
    for (int nu = 1; nu <= n; ++nu)
        for (int j = 1; j <= n; ++j) push("jx-d2j", {c(vec::jx(nu)), c(vec::d2j(j, nu))}, Scalar(GaussQ::frac(1, 2)));
    for (int al = 1; al <= n; ++al)
        for (int nu = 1; nu <= n; ++nu)
            for (int j = 1; j <= n; ++j)
                push("quartic", {c(vec::jx(al)), c(vec::nj(al, j)), c(vec::jx(nu)), c(vec::nj(nu, j))},
                     Scalar(GaussQ::frac(-1, 4)));
    push("potential", {}, -Scalar::atom(atom::vnormsq()));
    return e;
}

Scalar reduce_curvature_symmetries(const Scalar &s) {
    return s.substitute([](Atom a) -> Scalar {
        if (atom::kind(a) != AtomKind::CurvR) return Scalar::atom(a);
        if (atom::idx(a, 0) == atom::idx(a, 1) || atom::idx(a, 2) == atom::idx(a, 3)) return Scalar();
        return Scalar::atom(a);
    });
}

Scalar interior_integrand(int n) {
    EndomorphismExpr e = build_endomorphism(n);
    ScalarAcc acc;
    for (const auto &[w, coef] : e.terms) acc.add(wick_trace(w, n) * coef);
    // -s/6 tr[id]
    acc.add(Scalar::atom(atom::scal_s()) * GaussQ(Q(-(1L << n), 6)));
    return reduce_curvature_symmetries(acc.to_scalar());
}

WresInterior wres_without_boundary(int n) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("dimension must be even and at least 4");
    long fact = 1;
    for (int k = 2; k <= n / 2 - 1; ++k) fact *= k;
    WresInterior w;
    w.prefactor = Scalar::monomial(Monomial::pi_pow(n / 2), GaussQ(Q(n - 2, fact)));
    w.integrand = interior_integrand(n);
    return w;
}

Scalar apply_j_isometry(const Scalar &s) {
    return s.substitute([](Atom a) -> Scalar {
        if (atom::kind(a) != AtomKind::GPair) return Scalar::atom(a);
        auto [u, v] = atom::gpair_args(a);
        if (vec::kind(u) != VecKind::JX || vec::kind(v) != VecKind::JX) return Scalar::atom(a);
        return vec::arg0(u) == vec::arg0(v) ? Scalar(1) : Scalar();
    });
}

}  // namespace wres
