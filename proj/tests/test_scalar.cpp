#include <random>

#include <doctest.h>

#include "wres/scalar.hpp"

using namespace wres;

namespace {

Scalar random_scalar(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> idx(1, 4), num(-7, 7), den(1, 5), len(0, 3), terms(1, 4);
    Scalar s;
    const int t = terms(rng);
    for (int k = 0; k < t; ++k) {
        Scalar m(GaussQ(Q(num(rng), den(rng)), Q(num(rng) % 2, 1)));
        const int l = len(rng);
        for (int j = 0; j < l; ++j) {
            switch (idx(rng)) {
                case 1: m = m * Scalar::atom(atom::a(idx(rng), idx(rng))); break;
                case 2: m = m * Scalar::atom(atom::hprime()); break;
                case 3: m = m * Scalar::atom(atom::vc(idx(rng))); break;
                default: m = m * Scalar::pi(1); break;
            }
        }
        s += m;
    }
    return s;
}

}  // namespace

TEST_CASE("gaussian rationals") {
    GaussQ z(Q(3, 4), Q(-2, 5));
    CHECK(z * z.inverse() == GaussQ(1));
    CHECK(GaussQ::i() * GaussQ::i() == GaussQ(-1));
    CHECK(GaussQ::frac(2, 4) == GaussQ::frac(1, 2));
    CHECK((z - z).is_zero());
}

TEST_CASE("ring axioms on random scalars") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * Scalar(1) == a);
        CHECK((a * Scalar()).is_zero());
    }
}

TEST_CASE("accumulator agrees with repeated addition") {
    std::mt19937_64 rng(7);
    Scalar sum;
    ScalarAcc acc;
    for (int k = 0; k < 100; ++k) {
        const Scalar s = random_scalar(rng);
        sum += s;
        acc.add(s);
    }
    CHECK(acc.to_scalar() == sum);
}

TEST_CASE("numeric evaluation is a ring homomorphism") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    Assignment<double> asg;
    for (int l = 1; l <= 4; ++l) {
        asg[atom::vc(l)] = Cx<double>(u(rng));
        for (int p = 1; p <= 4; ++p) asg[atom::a(l, p)] = Cx<double>(u(rng));
    }
    asg[atom::hprime()] = Cx<double>(u(rng));
    const double pi = real_pi<double>();
    for (int trial = 0; trial < 50; ++trial) {
        const Scalar a = random_scalar(rng), b = random_scalar(rng);
        const auto ea = scalar_eval_numeric(a, asg, pi), eb = scalar_eval_numeric(b, asg, pi);
        const auto prod = scalar_eval_numeric(a * b, asg, pi), want = ea * eb;
        CHECK(prod.re == doctest::Approx(want.re).epsilon(1e-12));
        CHECK(prod.im == doctest::Approx(want.im).epsilon(1e-12));
    }
}

TEST_CASE("atom names round-trip") {
    std::vector<Atom> atoms{atom::hprime(), atom::a(3, 4), atom::da(1, 2, 3), atom::vc(5), atom::nabj(1, 6, 2),
                            atom::gpair(vec::jx(2), vec::nj(3, 1)), atom::curv(1, 2, 3, 4), atom::scal_s(),
                            atom::vnormsq()};
    for (Atom a : atoms) CHECK(atom::parse(atom::to_string(a)) == a);
    CHECK_THROWS_AS(atom::parse("bogus[1]"), std::invalid_argument);
}

TEST_CASE("pi powers and constants") {
    const Scalar s = Scalar::pi(2) * GaussQ::frac(8, 15) + Scalar(GaussQ::frac(-1, 3));
    CHECK(s.constant(2) == GaussQ::frac(8, 15));
    CHECK(s.constant(0) == GaussQ::frac(-1, 3));
    CHECK(s.constant(1).is_zero());
    CHECK(s.is_real());
}
