// One line per acceptance criterion. Exit status is the number of failed criteria.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "wres/boundary_engine.hpp"
#include "wres/cli.hpp"
#include "wres/clifford_abstract.hpp"
#include "wres/clifford_frame.hpp"
#include "wres/fixtures.hpp"
#include "wres/interior_engine.hpp"
#include "wres/numeric_oracle.hpp"
#include "wres/sphere_moments.hpp"
#include "wres/symbol_calculus.hpp"
#include "wres/xi_rational.hpp"

using namespace wres;

namespace {

// Pinned tolerances.
constexpr double kMatrixTraceTol = 1e-12;  // relative to tr[id], n = 6
constexpr double kMcSigmas = 3.0;
constexpr std::uint64_t kMcSamples = 400000;
const std::vector<std::uint64_t> kAdjudicationSeeds{1, 2, 3};
const std::vector<std::uint64_t> kEndToEndSeeds{1, 2, 3, 4, 5};
// Oracle agreement (1e-6 relative, 1e-9 absolute below 1e-3) lives in oracle_agrees.

int failures = 0;
std::map<int, std::string> lines;

void report(int id, const std::string &name, bool ok, const std::string &detail) {
    char head[96];
    std::snprintf(head, sizeof head, "[%s] %2d %s: ", ok ? "PASS" : "FAIL", id, name.c_str());
    lines[id] = head + detail;
    if (!ok) ++failures;
}

int delta(int a, int b) { return a == b ? 1 : 0; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 ----

std::vector<std::pair<AbstractWord, long>> trace_identities(int x, int y, int z, int w) {
    using vec::e;
    return {
        {{letter_c(e(x)), letter_cbar(e(y))}, 0},
        {{letter_c(e(x)), letter_c(e(y))}, -delta(x, y)},
        {{letter_cbar(e(x)), letter_cbar(e(y)), letter_c(e(z)), letter_c(e(w))}, -delta(x, y) * delta(z, w)},
        {{letter_c(e(x)), letter_c(e(y)), letter_c(e(z)), letter_c(e(w))},
         delta(x, w) * delta(y, z) - delta(x, z) * delta(y, w) + delta(x, y) * delta(z, w)},
    };
}

Eigen::MatrixXcd word_matrix(const AbstractWord &w, int n) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1L << n, 1L << n);
    for (Letter l : w) m = m * generator_matrix(n, {letter_is_bar(l), vec::arg0(letter_vec(l))});
    return m;
}

void criterion_traces() {
    long checked = 0, bad = 0;
    auto check = [&](const AbstractWord &w, long k, int n, bool matrix) {
        const Scalar want(k << n);
        ++checked;
        if (wick_trace(w, n) != want || cw_trace(word_to_frame(w, n)) != want) ++bad;
        if (matrix && word_matrix(w, n).trace().real() != double(k << n)) ++bad;
    };
    for (int x = 1; x <= 4; ++x)
        for (int y = 1; y <= 4; ++y)
            for (int z = 1; z <= 4; ++z)
                for (int w = 1; w <= 4; ++w)
                    for (const auto &[word, k] : trace_identities(x, y, z, w)) check(word, k, 4, true);

    std::mt19937_64 rng(606);
    std::uniform_int_distribution<int> idx(1, 6);
    for (int t = 0; t < 1000; ++t) {
        const int x = idx(rng), y = idx(rng), z = idx(rng), w = idx(rng);
        for (const auto &[word, k] : trace_identities(x, y, z, w)) check(word, k, 6, false);
    }

    // random real vectors at n = 6 through the matrix representation
    std::uniform_real_distribution<double> u(-1, 1);
    std::array<Eigen::MatrixXcd, 7> c, b;
    for (int h = 1; h <= 6; ++h) {
        c[h] = generator_matrix(6, {false, h});
        b[h] = generator_matrix(6, {true, h});
    }
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        std::array<Eigen::VectorXd, 4> v;
        std::array<Eigen::MatrixXcd, 4> cv, bv;
        for (int k = 0; k < 4; ++k) {
            v[k] = Eigen::VectorXd(6);
            cv[k] = bv[k] = Eigen::MatrixXcd::Zero(64, 64);
            for (int h = 0; h < 6; ++h) {
                v[k][h] = u(rng);
                cv[k] += v[k][h] * c[h + 1];
                bv[k] += v[k][h] * b[h + 1];
            }
        }
        auto g = [&](int p, int q) { return v[p].dot(v[q]); };
        worst = std::max({worst, std::abs((cv[0] * bv[1]).trace().real()),
                          std::abs((cv[0] * cv[1]).trace().real() + 64 * g(0, 1)),
                          std::abs((bv[0] * bv[1] * cv[2] * cv[3]).trace().real() + 64 * g(0, 1) * g(2, 3)),
                          std::abs((cv[0] * cv[1] * cv[2] * cv[3]).trace().real() -
                                   64 * (g(0, 3) * g(1, 2) - g(0, 2) * g(1, 3) + g(0, 1) * g(2, 3)))});
    }

    // combinatorial versus matrix trace on random words
    long word_bad = 0;
    double word_worst = 0;
    std::uniform_int_distribution<int> bit(0, 1), len(0, 6);
    for (int n : {2, 3, 4, 6})
        for (int t = 0; t < 200; ++t) {
            std::uniform_int_distribution<int> pick(1, n);
            AbstractWord w;
            const int l = len(rng);
            for (int k = 0; k < l; ++k) w.push_back(bit(rng) ? letter_cbar(vec::e(pick(rng))) : letter_c(vec::e(pick(rng))));
            const double comb = cw_trace(word_to_frame(w, n)).constant().re.get_d();
            const double mat = word_matrix(w, n).trace().real();
            if (n <= 4 && comb != mat) ++word_bad;
            if (n == 6) word_worst = std::max(word_worst, std::abs(comb - mat) / 64);
        }
    const bool ok = bad == 0 && worst < kMatrixTraceTol * 64 && word_bad == 0 && word_worst < kMatrixTraceTol;
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%ld identity instances exact (%ld failures); n=6 random vectors max dev %.1e; word traces: %ld "
                  "inexact at n<=4, max rel dev %.1e at n=6",
                  checked, bad, worst / 64, word_bad, word_worst);
    report(1, "trace identities", ok, buf);
}

// ---- 2 ----

void criterion_projections() {
    using RX = RationalXiQ;
    auto gq = [](long rn, long rd, long in, long id) { return GaussQ(Q(rn, rd), Q(in, id)); };
    const std::vector<std::pair<RX, RX>> cases{
        {rx_pi_plus(RX::profile(0, -2)), RX::from_fraction({gq(-1, 2, 0, 1), gq(0, 1, -1, 4)}, 2, 0)},
        {rx_pi_plus(RX::profile(1, -2)), RX::from_fraction({gq(0, 1, -1, 4)}, 2, 0)},
        {rx_pi_plus(RX::profile(2, -2)), RX::from_fraction({gq(0, 1, 0, 1), gq(0, 1, -1, 4)}, 2, 0)},
        {rx_pi_plus(RX::profile(0, -1)), RX::from_fraction({gq(0, 1, -1, 2)}, 1, 0)},
        {rx_pi_plus(RX::profile(1, -1)), RX::from_fraction({gq(1, 2, 0, 1)}, 1, 0)},
        {rx_pi_plus(rx_deriv(RX::profile(0, -1).scaled(GaussQ::i()))), RX::from_fraction({gq(-1, 2, 0, 1)}, 2, 0)},
        {rx_pi_plus(rx_deriv(RX::profile(1, -1).scaled(GaussQ::i()))), RX::from_fraction({gq(0, 1, -1, 2)}, 2, 0)},
    };
    int good = 0;
    for (const auto &[got, want] : cases) good += got == want;
    report(2, "pi+ worked examples", good == static_cast<int>(cases.size()),
           std::to_string(good) + "/" + std::to_string(cases.size()) + " projections equal in canonical form");
}

// ---- 3 ----

SymbolExpr closed_form(int n, int m) {
    const Operator op = m == 1 ? Operator::D : Operator::D3;
    const SymbolExpr c = SymbolExpr::c_jxi(n), ns = SymbolExpr::normsq(n, 1);
    SymbolExpr s = c * build_sigma(op, m == 1 ? 0 : 2, n) * c * SymbolExpr::normsq(n, -2 * m);
    SymbolExpr sum(n);
    for (int j = 1; j <= n; ++j) {
        const SymbolExpr cj = SymbolExpr::letter(n, letter_c(vec::jx(j)));
        const SymbolExpr left = m == 1 ? cj : cj * ns + SymbolExpr::xi(n, j) * c * Scalar(2);
        sum += left * (symbol_deriv(c, Var::x(j)) * ns - c * symbol_deriv(ns, Var::x(j)) * Scalar(m));
    }
    return s + c * SymbolExpr::normsq(n, m == 1 ? -3 : -5) * sum;
}

void criterion_inversion() {
    const Scalar i(GaussQ::i());
    std::string detail;
    bool ok = true;
    for (int n : {4, 6}) {
        const auto q = invert_symbol({build_sigma(Operator::D, 1, n), build_sigma(Operator::D, 0, n)}, 2);
        const auto q3 = invert_symbol({build_sigma(Operator::D3, 3, n), build_sigma(Operator::D3, 2, n)}, 2);
        const bool a = q[0] == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, -1) * i;
        const bool b = q[1] == closed_form(n, 1);
        const bool c = q3[0] == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, -2) * i;
        const bool d = q3[1] == closed_form(n, 2);
        ok = ok && a && b && c && d;
        detail += (detail.empty() ? "" : "; ") + std::string("n=") + std::to_string(n) + " q-1 " + (a ? "exact" : "differs") +
                  ", q-2 " + (b ? "exact" : "differs") + ", q-3 " + (c ? "exact" : "differs") + ", q-4 " +
                  (d ? "exact" : "differs");
    }
    report(3, "symbol inversion", ok, detail);
}

// ---- 4 to 8 ----

std::string counts(const DisplayCheck &d) {
    return std::to_string(d.matches) + " exact, " + std::to_string(d.mismatches) + " differ, " +
           std::to_string(d.only_computed) + " engine-only, " + std::to_string(d.only_expected) + " stored-only, " +
           d.status;
}

const DisplayCheck &display(const VerifyResult &r, const std::string &name) {
    for (const auto &d : r.displays)
        if (d.display == name) return d;
    throw std::out_of_range(name);
}

void criterion_dim4(const VerifyResult &r) {
    const DisplayCheck &a = display(r, "dim4-case-a");
    report(4, "dim-4 case (a) exact", a.status == "match", counts(a));
    const DisplayCheck &t = display(r, "dim4-total");
    report(5, "dim-4 cancellation and total", r.cancellation_holds && t.status == "match",
           std::string("b + c = 0 ") + (r.cancellation_holds ? "holds" : "fails") + "; total: " + counts(t));
}

void criterion_interior4() {
    const InteriorFixture f = load_interior_fixture(default_fixture_dir() / "dim4-interior.json");
    const InteriorDisplay d = interior_display(4);
    const bool pre = d.display_prefactor == Scalar::pi(2) * GaussQ(8);
    const bool bracket = d.bracket == f.bracket;
    report(6, "dim-4 interior", pre && bracket,
           std::string("overall ") + d.display_prefactor.to_string() + (pre ? " as displayed" : " differs") +
               ", bracket " + (bracket ? "identical" : "differs") + " (" + std::to_string(d.bracket.size()) + " terms)");
}

void criterion_dim6(const VerifyResult &r) {
    const DisplayCheck &a = display(r, "dim6-case-a");
    const bool ok7 = a.status == "match" || (a.ok() && a.adjudication.size() >= kAdjudicationSeeds.size());
    report(7, "dim-6 case (a)", ok7, counts(a));
    bool ok = true;
    std::string detail;
    for (const std::string name : {"dim6-case-b", "dim6-case-c", "dim6-total"}) {
        const DisplayCheck &d = display(r, name);
        const bool seeds_ok = d.status == "match" || d.adjudication.size() >= kAdjudicationSeeds.size();
        ok = ok && d.ok() && seeds_ok;
        detail += (detail.empty() ? "" : "; ") + name + ": " + counts(d);
    }
    report(8, "dim-6 tables", ok, detail);
}

// ---- 9 ----

void criterion_sphere() {
    bool exact = true;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            MonomialExponents m(5, 0);
            ++m[i];
            ++m[j];
            exact = exact && sphere_moment(m, 5) == (i == j ? Scalar::pi(2) * GaussQ::frac(8, 15) : Scalar());
        }
    int odd = 0, odd_bad = 0;
    std::function<void(MonomialExponents &, int, int)> rec = [&](MonomialExponents &m, int k, int left) {
        if (k == 5) {
            int deg = 0;
            for (int e : m) deg += e;
            if (deg % 2 == 1) {
                ++odd;
                if (!sphere_moment(m, 5).is_zero()) ++odd_bad;
            }
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[k] = e;
            rec(m, k + 1, left - e);
        }
    };
    MonomialExponents m(5, 0);
    rec(m, 0, 5);
    double worst = 0;
    std::uint64_t seed = 90;
    for (const auto &e : std::vector<MonomialExponents>{{2, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {2, 2, 0, 0, 0}, {4, 0, 0, 0, 0}, {1, 0, 0, 0, 0}}) {
        const auto [est, se] = mc_sphere_moment(e, 5, kMcSamples, seed++);
        const double exact_v = scalar_eval_numeric(sphere_moment(e, 5), Assignment<double>{}, real_pi<double>()).re;
        worst = std::max(worst, std::abs(est - exact_v) / se);
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "quadratic moments %s; %d odd moments of degree <= 5, %d nonzero; MC worst %.2f sigma",
                  exact ? "exact" : "differ", odd, odd_bad, worst);
    report(9, "sphere moments", exact && odd_bad == 0 && worst <= kMcSigmas, buf);
}

// ---- 10 ----

void criterion_oracle(const std::vector<const SymbolicRun *> &runs, OracleCache &cache) {
    int total = 0, good = 0;
    double worst = 0;
    OracleOptions opt;
    for (const SymbolicRun *run : runs)
        for (const auto &c : run->cases)
            for (auto seed : kEndToEndSeeds) {
                const NumericAssignment a = make_assignment(run->dim, seed);
                const Cx<double> sym = scalar_eval_numeric(run->raw.at(c.label), a.as<double>(), real_pi<double>());
                const Cx<double> num = cached_oracle(*run, c.label, seed, opt, &cache);
                double rel = 0;
                ++total;
                good += oracle_agrees(sym.re, sym.im, num.re, num.im, &rel);
                worst = std::max(worst, rel);
            }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d/%d case-seed pairs agree, worst relative error %.2e", good, total, worst);
    report(10, "oracle end-to-end", good == total, buf);
}

// ---- 11 ----

void criterion_determinism(const VerifyResult &v4, const VerifyResult &v6, const SymbolicRun &run6, OracleCache &cache) {
    const auto dir = default_fixture_dir();
    OracleOptions opt;
    // dimension 4 from scratch, oracle included
    const SymbolicRun again4(4);
    const VerifyResult w4 = run_verify(again4, kAdjudicationSeeds, dir, opt);
    const bool same4 = w4.to_markdown() == v4.to_markdown() && w4.to_json().dump() == v4.to_json().dump();
    // dimension 6: fresh symbolic run, oracle values reused; one oracle value recomputed bit for bit
    const SymbolicRun again6(6);
    const VerifyResult w6 = run_verify(again6, kAdjudicationSeeds, dir, opt, &cache);
    const bool same6 = w6.to_markdown() == v6.to_markdown() && w6.to_json().dump() == v6.to_json().dump();
    const Cx<double> fresh = cached_oracle(run6, "a2", 1, opt, nullptr);
    const Cx<double> kept = cache.at({6, "a2", 1});
    const bool same_oracle = fresh.re == kept.re && fresh.im == kept.im;
    report(11, "determinism", same4 && same6 && same_oracle,
           std::string("dim-4 reports ") + (same4 ? "identical" : "differ") + ", dim-6 reports " +
               (same6 ? "identical" : "differ") + ", recomputed oracle value " + (same_oracle ? "identical" : "differs"));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto dir = default_fixture_dir();
    OracleOptions opt;
    OracleCache cache;

    criterion_traces();
    criterion_projections();
    criterion_inversion();

    const SymbolicRun run4(4);
    const VerifyResult v4 = run_verify(run4, kAdjudicationSeeds, dir, opt, &cache);
    criterion_dim4(v4);
    criterion_interior4();

    const SymbolicRun run6(6);
    // the end-to-end pass fills the cache that adjudication then reuses
    criterion_sphere();
    criterion_oracle({&run4, &run6}, cache);
    const VerifyResult v6 = run_verify(run6, kAdjudicationSeeds, dir, opt, &cache);
    criterion_dim6(v6);

    criterion_determinism(v4, v6, run6, cache);

    for (const auto &[id, line] : lines) std::printf("%s\n", line.c_str());
    std::printf("%d of 11 criteria failed (%.0f s)\n", failures, seconds_since(t0));
    return failures;
}
