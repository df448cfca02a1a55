#include <doctest.h>

#include "wres/numeric_oracle.hpp"
#include "wres/symbol_calculus.hpp"

using namespace wres;

namespace {

SymbolExpr cj(int n, int j) { return SymbolExpr::letter(n, letter_c(vec::jx(j))); }

// Displayed closed form of the second inverse symbol.
//   m = 1: c sigma0 c / |xi|^4 + c/|xi|^6 sum_j c_j [d_j(c) |xi|^2 - c d_j |xi|^2]
//   m = 2: c sigma2 c / |xi|^8 + c/|xi|^10 sum_j (c_j |xi|^2 + 2 xi_j c) [d_j(c) |xi|^2 - 2 c d_j |xi|^2]
SymbolExpr closed_form(int n, int m) {
    const Operator op = m == 1 ? Operator::D : Operator::D3;
    const SymbolExpr c = SymbolExpr::c_jxi(n), ns = SymbolExpr::normsq(n, 1);
    SymbolExpr s = c * build_sigma(op, m == 1 ? 0 : 2, n) * c * SymbolExpr::normsq(n, -2 * m);
    SymbolExpr sum(n);
    for (int j = 1; j <= n; ++j) {
        const SymbolExpr left = m == 1 ? cj(n, j) : cj(n, j) * ns + SymbolExpr::xi(n, j) * c * Scalar(2);
        sum += left * (symbol_deriv(c, Var::x(j)) * ns - c * symbol_deriv(ns, Var::x(j)) * Scalar(m));
    }
    return s + c * SymbolExpr::normsq(n, m == 1 ? -3 : -5) * sum;
}

std::vector<SymbolExpr> inverse(int n, int m) {
    if (m == 1) return invert_symbol({build_sigma(Operator::D, 1, n), build_sigma(Operator::D, 0, n)}, 2);
    return invert_symbol({build_sigma(Operator::D3, 3, n), build_sigma(Operator::D3, 2, n)}, 2);
}

}  // namespace

TEST_CASE("leading symbols") {
    const Scalar i(GaussQ::i());
    for (int n : {4, 6}) {
        CHECK(build_sigma(Operator::D, 1, n) == SymbolExpr::c_jxi(n) * i);
        CHECK(build_sigma(Operator::D3, 3, n) == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, 1) * i);
        CHECK(build_sigma(Operator::D, 1, n).degree() == 1);
        CHECK(build_sigma(Operator::D3, 2, n).degree() == 2);
    }
    CHECK_THROWS_AS(build_sigma(Operator::D, 2, 4), std::invalid_argument);
}

TEST_CASE("first inverse symbols") {
    const Scalar i(GaussQ::i());
    for (int n : {4, 6}) {
        CHECK(inverse(n, 1)[0] == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, -1) * i);
        CHECK(inverse(n, 2)[0] == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, -2) * i);
    }
}

TEST_CASE("second inverse symbols equal the displayed closed forms") {
    for (int n : {4, 6})
        for (int m : {1, 2}) {
            CAPTURE(n);
            CAPTURE(m);
            const auto q = inverse(n, m);
            CHECK(q[1] == closed_form(n, m));
            CHECK(q[1].degree() == -2 * m);
        }
}

TEST_CASE("inversion rejects unsupported input") {
    CHECK_THROWS_AS(invert_symbol({build_sigma(Operator::D3, 2, 4)}, 1), std::domain_error);
    CHECK_THROWS_AS(invert_symbol({build_sigma(Operator::D, 1, 4)}, 2), std::invalid_argument);
    CHECK_THROWS_AS(invert_symbol({}, 1), std::invalid_argument);
}

TEST_CASE("xi derivatives agree with central differences") {
    for (int n : {4, 6}) {
        const NumericAssignment a = make_assignment(n, 5);
        std::vector<SymbolExpr> syms = inverse(n, 1);
        if (n == 6) syms.push_back(inverse(n, 2)[0]);
        const std::vector<AbstractWord> probes{{},
                                               {letter_c(vec::e(1))},
                                               {letter_c(vec::e(n)), letter_cbar(vec::e(2))},
                                               {letter_c(vec::e(2)), letter_c(vec::e(3)), letter_cbar(vec::e(n))}};
        std::vector<double> xt(n - 1);
        for (int k = 0; k < n - 1; ++k) xt[k] = 0.3 + 0.1 * k;
        const Cx<double> xn(0.45);
        const double h = 1e-5;
        for (const auto &s : syms)
            for (const auto &probe : probes) {
                // normal direction
                auto d = oracle_symbol_trace<double>(symbol_deriv(s, Var::xi_n()), a, xt, xn, probe);
                auto fd = (oracle_symbol_trace<double>(s, a, xt, xn + Cx<double>(h), probe) -
                           oracle_symbol_trace<double>(s, a, xt, xn - Cx<double>(h), probe)) *
                          (1 / (2 * h));
                CHECK(cx_abs(d - fd) < 1e-6 * (1 + cx_abs(d)));
                // one tangential direction
                auto xp = xt, xm = xt;
                xp[1] += h;
                xm[1] -= h;
                d = oracle_symbol_trace<double>(symbol_deriv(s, Var::xi(2)), a, xt, xn, probe);
                fd = (oracle_symbol_trace<double>(s, a, xp, xn, probe) - oracle_symbol_trace<double>(s, a, xm, xn, probe)) *
                     (1 / (2 * h));
                CHECK(cx_abs(d - fd) < 1e-6 * (1 + cx_abs(d)));
            }
    }
}

TEST_CASE("derivatives lower the degree") {
    const auto q = inverse(4, 1);
    CHECK(symbol_deriv(q[0], Var::xi_n()).degree() == -2);
    CHECK(symbol_deriv(q[1], Var::xi(1)).degree() == -3);
    CHECK(symbol_deriv(SymbolExpr::constant(4, Scalar(3)), Var::xi_n()).is_zero());
}

TEST_CASE("boundary restriction keeps the profile") {
    // i c[J xi] / |xi|^2 restricted to |xi'| = 1: the xi_n term carries x/(1+x^2)
    const auto q = inverse(4, 1)[0];
    const BoundaryForm f = evaluate_boundary(q);
    CHECK(f.size() == 4);
    BoundaryKey k;
    k.word = {letter_c(vec::jx(4))};
    REQUIRE(f.count(k) == 1);
    CHECK(f.at(k) == RationalXi<Scalar>::profile(1, -1).times(Scalar(GaussQ::i())));
}
