#include <algorithm>

#include <doctest.h>

#include "wres/boundary_engine.hpp"
#include "wres/fixtures.hpp"
#include "wres/numeric_oracle.hpp"

using namespace wres;

namespace {

GaussQ minus_i_pow(int k) {
    GaussQ r(1);
    for (int t = 0; t < k; ++t) r = r * (-GaussQ::i());
    return r;
}

long fact(int k) { return k <= 1 ? 1 : k * fact(k - 1); }

CaseSpec by_label(int n, const std::string &label) {
    for (const auto &c : enumerate_cases(n))
        if (c.label == label) return c;
    throw std::out_of_range(label);
}

const BoundaryEngine &engine4() {
    static const BoundaryEngine e(4);
    return e;
}

}  // namespace

TEST_CASE("case enumeration") {
    for (int n : {4, 6}) {
        const auto cases = enumerate_cases(n);
        REQUIRE(cases.size() == 5);
        std::vector<std::string> labels;
        for (const auto &c : cases) {
            labels.push_back(c.label);
            CHECK(c.r + c.l - c.k - c.j - c.alpha - 1 == -n);
            CHECK(c.prefactor == minus_i_pow(c.alpha + c.j + c.k + 1) *
                                     GaussQ(Q(1, fact(c.alpha) * fact(c.j + c.k + 1))));
        }
        std::sort(labels.begin(), labels.end());
        CHECK(labels == std::vector<std::string>{"a1", "a2", "a3", "b", "c"});
        CHECK(by_label(n, "a1").alpha == 1);
        CHECK(by_label(n, "a2").j == 1);
        CHECK(by_label(n, "a3").k == 1);
    }
    // the lowered factor: b lowers the first factor at n = 4 and the second at n = 6
    CHECK(by_label(4, "b").r == -2);
    CHECK(by_label(4, "c").l == -2);
    CHECK(by_label(6, "b").l == -4);
    CHECK(by_label(6, "c").r == -2);
}

TEST_CASE("dimension four: lowered cases cancel") {
    const Scalar b = engine4().case_raw(by_label(4, "b")), c = engine4().case_raw(by_label(4, "c"));
    CHECK(!b.is_zero());
    CHECK((b + c).is_zero());
}

TEST_CASE("dimension four: tables are real and the total is case a") {
    CoefficientTable a;
    a.dim = 4;
    for (const auto &c : enumerate_cases(4)) {
        CaseStats st;
        const CoefficientTable t = engine4().compute_case(c, &st);
        CHECK(t.is_real());
        CHECK(st.words > 0);
        if (c.label[0] == 'a') a += t;
    }
    const CoefficientTable total = engine4().total_boundary();
    CHECK(compare_tables(total, a).empty());
}

TEST_CASE("odd tangential moments are discarded") {
    CaseStats st;
    engine4().case_raw(by_label(4, "b"), &st);
    CHECK(st.odd_discarded > 0);
}

TEST_CASE("raw and normalized forms round-trip") {
    const Scalar raw = engine4().case_raw(by_label(4, "a1"));
    const CoefficientTable t = CoefficientTable::from_raw(raw, 4, "x");
    CHECK(t.to_raw() == raw);
    CHECK(t.volume() == Scalar::pi(1) * GaussQ(4));
    CHECK(t.trace_factor() == 16);
}

TEST_CASE("table diff reports each kind of difference") {
    const CoefficientTable t = engine4().total_boundary();
    REQUIRE(t.entries.size() >= 2);
    CHECK(compare_tables(t, t).matches == t.entries.size());

    CoefficientTable perturbed = t;
    auto it = perturbed.entries.begin();
    it->second += Scalar::pi(1);
    const Monomial dropped = std::next(it)->first;
    perturbed.entries.erase(std::next(it));
    Monomial extra = Monomial::of(atom::vc(1));
    perturbed.entries.emplace(extra, Scalar(GaussQ(1)));

    const TableDiff d = compare_tables(t, perturbed);
    CHECK(d.matches == t.entries.size() - 2);
    REQUIRE(d.mismatches.size() == 1);
    CHECK(d.mismatches[0].mono == t.entries.begin()->first);
    REQUIRE(d.only_computed.size() == 1);
    CHECK(d.only_computed[0].first == dropped);
    REQUIRE(d.only_expected.size() == 1);
    CHECK(d.only_expected[0].first == extra);
}

TEST_CASE("dimension four cases agree with the oracle") {
    for (const auto &c : enumerate_cases(4))
        for (std::uint64_t seed : {21, 22}) {
            const VerificationRecord r = verify_case(engine4(), c, seed);
            CAPTURE(c.label);
            CAPTURE(r.rel_err);
            CHECK(r.pass);
        }
}

TEST_CASE("unsupported dimensions are rejected") { CHECK_THROWS_AS(BoundaryEngine(5), std::invalid_argument); }
