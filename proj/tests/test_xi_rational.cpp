#include <functional>

#include <doctest.h>

#include "wres/boundary_engine.hpp"
#include "wres/numeric_oracle.hpp"
#include "wres/xi_rational.hpp"

using namespace wres;

namespace {

using RX = RationalXiQ;

GaussQ gq(long rn, long rd, long in = 0, long id = 1) { return GaussQ(Q(rn, rd), Q(in, id)); }

// num / ((xi - i)^a (xi + i)^b)
RX frac(std::vector<GaussQ> num, int a, int b = 0) { return RX::from_fraction(num, a, b); }

Cx<double> eval(const RX &f, double x) {
    return rx_eval<double>(f, Cx<double>(x), [](const GaussQ &c) { return to_cx<double>(c); });
}

}  // namespace

TEST_CASE("worked projections") {
    // pi+ 1/(1+x^2)^2 = -(i x + 2) / (4 (x - i)^2)
    CHECK(rx_pi_plus(RX::profile(0, -2)) == frac({gq(-1, 2), gq(0, 1, -1, 4)}, 2));
    // pi+ x/(1+x^2)^2 = -i / (4 (x - i)^2)
    CHECK(rx_pi_plus(RX::profile(1, -2)) == frac({gq(0, 1, -1, 4)}, 2));
    // pi+ x^2/(1+x^2)^2 = -i x / (4 (x - i)^2)
    CHECK(rx_pi_plus(RX::profile(2, -2)) == frac({gq(0, 1), gq(0, 1, -1, 4)}, 2));
    // pi+ 1/(1+x^2) = 1 / (2i (x - i))
    CHECK(rx_pi_plus(RX::profile(0, -1)) == frac({gq(0, 1, -1, 2)}, 1));
    // pi+ x/(1+x^2) = 1 / (2 (x - i))
    CHECK(rx_pi_plus(RX::profile(1, -1)) == frac({gq(1, 2)}, 1));
}

TEST_CASE("projection of the derivative of the leading inverse profile") {
    // pi+ d/dx (i x/(1+x^2)) = -i / (2 (x - i)^2); tangential part: pi+ d/dx (i/(1+x^2)) = -1/(2 (x - i)^2)
    const RX normal = RX::profile(1, -1).scaled(GaussQ::i());
    const RX tangential = RX::profile(0, -1).scaled(GaussQ::i());
    CHECK(rx_pi_plus(rx_deriv(normal)) == frac({gq(0, 1, -1, 2)}, 2));
    CHECK(rx_pi_plus(rx_deriv(tangential)) == frac({gq(-1, 2)}, 2));
}

TEST_CASE("projection properties on profiles") {
    for (int m = 1; m <= 5; ++m)
        for (int k = 0; k < 2 * m; ++k) {
            const RX f = RX::profile(k, -m);
            const RX p = rx_pi_plus(f);
            CHECK(rx_pi_plus(p) == p);
            CHECK(p + rx_minus_part(f) == f);
            CHECK(rx_pi_plus(rx_deriv(f)) == rx_deriv(p));
            CHECK(rx_integrate_line(rx_deriv(f)).is_zero());
        }
}

TEST_CASE("partial fractions reproduce the function") {
    for (int m = 1; m <= 4; ++m)
        for (int k = 0; k <= 2 * m + 1; ++k) {
            const RX f = RX::profile(k, -m);
            for (double x : {-2.3, -0.4, 0.0, 0.7, 3.1}) {
                const double want = std::pow(x, k) / std::pow(1 + x * x, m);
                const auto got = eval(f, x);
                CHECK(got.re == doctest::Approx(want).epsilon(1e-13));
                CHECK(std::abs(got.im) < 1e-13);
            }
        }
}

TEST_CASE("products stay canonical") {
    const RX a = RX::profile(1, -2), b = RX::profile(2, -1);
    CHECK(a * b == RX::profile(3, -3));
    CHECK(RX::xi() * RX::profile(0, -1) == RX::profile(1, -1));
}

TEST_CASE("line integrals") {
    // int 1/(1+x^2) = pi, int x^2/(1+x^2)^3 = pi/8
    CHECK(rx_integrate_line(RX::profile(0, -1)) == Scalar::pi(1));
    CHECK(rx_integrate_line(RX::profile(2, -3)) == Scalar::pi(1) * GaussQ::frac(1, 8));
    CHECK_THROWS_AS(rx_integrate_line(RX::profile(1, -1)), DecayError);
    CHECK_THROWS_AS(rx_pi_plus(RX::profile(3, -1)), DecayError);
    CHECK(profile_integral(0, -1, 0, -1) == GaussQ::frac(1, 4));
}

TEST_CASE("profile integrals against contour projection and quadrature") {
    // theta-midpoint rule on x = tan(theta); pi+ taken numerically on the contour
    const int nodes = 4000;
    const double pi = real_pi<double>();
    for (int ka = 0; ka <= 2; ++ka)
        for (int ma = 1; ma <= 2; ++ma)
            for (int kb = 0; kb <= 3; ++kb)
                for (int mb = 1; mb <= 2; ++mb) {
                    if (ka >= 2 * ma || kb > 2 * mb - 1) continue;
                    const std::function<Cx<double>(const Cx<double> &)> fa = [&](const Cx<double> &z) {
                        Cx<double> num(1), den(1);
                        for (int k = 0; k < ka; ++k) num = num * z;
                        for (int k = 0; k < ma; ++k) den = den * (Cx<double>(1) + z * z);
                        return num / den;
                    };
                    Cx<double> total;
                    for (int t = 0; t < nodes; ++t) {
                        const double th = -pi / 2 + (t + 0.5) * pi / nodes, x = std::tan(th);
                        const double g = std::pow(x, kb) / std::pow(1 + x * x, mb);
                        total += oracle_pi_plus<double>(fa, x, 32) * Cx<double>(g * (1 + x * x) * pi / nodes);
                    }
                    const Cx<double> want = to_cx<double>(profile_integral(ka, -ma, kb, -mb)) * pi;
                    CHECK(cx_abs(total - want) < 1e-6);
                }
}

TEST_CASE("contour quadrature agrees with the principal part") {
    const RX f = RX::profile(0, -2);
    const std::function<Cx<double>(const Cx<double> &)> fn = [](const Cx<double> &z) {
        const Cx<double> d = Cx<double>(1) + z * z;
        return Cx<double>(1) / (d * d);
    };
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
        const auto num = oracle_pi_plus<double>(fn, x, 32);
        const auto sym = eval(rx_pi_plus(f), x);
        CHECK(std::abs(num.re - sym.re) < 1e-10);
        CHECK(std::abs(num.im - sym.im) < 1e-10);
    }
}
