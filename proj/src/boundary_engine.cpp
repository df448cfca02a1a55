#include "wres/boundary_engine.hpp"

#include <stdexcept>
#include <tuple>

#include "wres/sphere_moments.hpp"
#include "wres/xi_rational.hpp"

namespace wres {

namespace {

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

GaussQ minus_i_pow(int e) {
    GaussQ r(1);
    for (int k = 0; k < e; ++k) r *= -GaussQ::i();
    return r;
}

// Splits a single-term pi-multiple q * pi^k.
std::pair<GaussQ, int> split_pi_monomial(const Scalar &s) {
    if (s.is_zero()) return {GaussQ(0), 0};
    if (s.size() != 1 || s.terms()[0].first.n != 0) throw std::logic_error("expected a pure pi monomial");
    return {s.terms()[0].second, s.terms()[0].first.pi};
}

}  // namespace

std::vector<CaseSpec> enumerate_cases(int n, int r_lead, int l_lead) {
    std::vector<CaseSpec> out;
    for (int r = r_lead; r >= -n; --r)
        for (int l = l_lead; l >= -n; --l) {
            const int s = r + l - 1 + n;  // k + j + |alpha|
            if (s < 0) continue;
            for (int a = s; a >= 0; --a)
                for (int j = s - a; j >= 0; --j) {
                    const int k = s - a - j;
                    CaseSpec c;
                    c.r = r;
                    c.l = l;
                    c.k = k;
                    c.j = j;
                    c.alpha = a;
                    c.prefactor = minus_i_pow(a + j + k + 1) *
                                  GaussQ(Q(1, factorial(a) * factorial(j + k + 1)));
                    if (r == r_lead && l == l_lead && s == 1)
                        c.label = a == 1 ? "a1" : j == 1 ? "a2" : "a3";
                    else if (s == 0 && r == r_lead - 1 && l == l_lead)
                        c.label = n == 4 ? "b" : "c";
                    else if (s == 0 && r == r_lead && l == l_lead - 1)
                        c.label = n == 4 ? "c" : "b";
                    else
                        c.label = "r" + std::to_string(r) + "l" + std::to_string(l) + "k" + std::to_string(k) + "j" +
                                  std::to_string(j) + "a" + std::to_string(a);
                    out.push_back(c);
                }
        }
    return out;
}

std::vector<CaseSpec> enumerate_cases(int n) {
    if (n == 4) return enumerate_cases(4, -1, -1);
    if (n == 6) return enumerate_cases(6, -1, -3);
    throw std::invalid_argument("only dimensions 4 and 6 are configured");
}

// ---- tables ----

Scalar CoefficientTable::volume() const { return sphere_volume(dim - 1); }

CoefficientTable CoefficientTable::from_raw(const Scalar &raw, int dim, const std::string &label) {
    CoefficientTable t;
    t.dim = dim;
    t.label = label;
    auto [vq, vpi] = split_pi_monomial(sphere_volume(dim - 1));
    const GaussQ inv = (vq * GaussQ(t.trace_factor())).inverse();
    for (const auto &[m, c] : raw.terms()) {
        if (m.pi < vpi) throw std::logic_error("raw value not divisible by the sphere volume");
        Monomial key = m;
        key.pi = 0;
        Scalar v = Scalar::monomial(Monomial::pi_pow(m.pi - vpi), c * inv);
        auto it = t.entries.find(key);
        if (it == t.entries.end())
            t.entries.emplace(key, v);
        else {
            it->second += v;
            if (it->second.is_zero()) t.entries.erase(it);
        }
    }
    return t;
}

Scalar CoefficientTable::normalized_sum() const {
    Scalar s;
    for (const auto &[m, c] : entries) s += c * Scalar::monomial(m, GaussQ(1));
    return s;
}

Scalar CoefficientTable::to_raw() const { return normalized_sum() * volume() * GaussQ(trace_factor()); }

CoefficientTable &CoefficientTable::operator+=(const CoefficientTable &o) {
    if (o.dim != dim) throw std::invalid_argument("table dimension mismatch");
    for (const auto &[m, c] : o.entries) {
        auto it = entries.find(m);
        if (it == entries.end())
            entries.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) entries.erase(it);
        }
    }
    return *this;
}

bool CoefficientTable::is_real() const {
    for (const auto &[m, c] : entries)
        if (!c.is_real()) return false;
    return true;
}

TableDiff compare_tables(const CoefficientTable &computed, const CoefficientTable &expected) {
    if (computed.dim != expected.dim) throw std::invalid_argument("compare_tables: dimension mismatch");
    TableDiff d;
    auto a = computed.entries.begin(), b = expected.entries.begin();
    while (a != computed.entries.end() || b != expected.entries.end()) {
        if (b == expected.entries.end() || (a != computed.entries.end() && a->first < b->first)) {
            d.only_computed.emplace_back(a->first, a->second);
            ++a;
        } else if (a == computed.entries.end() || b->first < a->first) {
            d.only_expected.emplace_back(b->first, b->second);
            ++b;
        } else {
            if (a->second == b->second)
                ++d.matches;
            else
                d.mismatches.push_back({a->first, a->second, b->second});
            ++a;
            ++b;
        }
    }
    return d;
}

// ---- engine ----

GaussQ profile_integral(int ka, int ma, int kb, int mb) {
    static std::map<std::tuple<int, int, int, int>, GaussQ> cache;
    auto key = std::make_tuple(ka, ma, kb, mb);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto f = rx_pi_plus(RationalXiQ::profile(ka, ma)) * RationalXiQ::profile(kb, mb);
    auto [q, p] = split_pi_monomial(rx_integrate_line(f));
    if (p != 1 && !q.is_zero()) throw std::logic_error("line integral is not a multiple of pi");
    cache.emplace(key, q);
    return q;
}

BoundaryEngine::BoundaryEngine(int n, Sigma0Form form) : n_(n) {
    if (n == 4) {
        r_lead_ = -1;
        l_lead_ = -1;
        qr_ = invert_symbol({build_sigma(Operator::D, 1, n, form), build_sigma(Operator::D, 0, n, form)}, 2);
        ql_ = qr_;
    } else if (n == 6) {
        r_lead_ = -1;
        l_lead_ = -3;
        qr_ = invert_symbol({build_sigma(Operator::D, 1, n, form), build_sigma(Operator::D, 0, n, form)}, 2);
        ql_ = invert_symbol({build_sigma(Operator::D3, 3, n, form), build_sigma(Operator::D3, 2, n, form)}, 2);
    } else {
        throw std::invalid_argument("only dimensions 4 and 6 are configured");
    }
}

const SymbolExpr &BoundaryEngine::q_for(const std::vector<SymbolExpr> &qs, int lead, int order) const {
    const int idx = lead - order;
    if (idx < 0 || idx >= static_cast<int>(qs.size())) throw std::out_of_range("symbol order not available");
    return qs[idx];
}

SymbolExpr BoundaryEngine::factor_a(const CaseSpec &c, int dir) const {
    SymbolExpr s = q_for(qr_, r_lead_, c.r);
    for (int t = 0; t < c.j; ++t) s = symbol_deriv(s, Var::x(n_));
    if (c.alpha) s = symbol_deriv(s, Var::xi(dir));
    for (int t = 0; t < c.k; ++t) s = symbol_deriv(s, Var::xi_n());
    return s;
}

SymbolExpr BoundaryEngine::factor_b(const CaseSpec &c, int dir) const {
    SymbolExpr s = q_for(ql_, l_lead_, c.l);
    if (c.alpha) s = symbol_deriv(s, Var::x(dir));
    for (int t = 0; t < c.k; ++t) s = symbol_deriv(s, Var::x(n_));
    for (int t = 0; t <= c.j; ++t) s = symbol_deriv(s, Var::xi_n());
    return s;
}

Scalar BoundaryEngine::case_raw(const CaseSpec &c, CaseStats *stats) const {
    if (c.alpha > 1) throw std::invalid_argument("multi-indices with |alpha| > 1 are not configured");
    CaseStats st;
    std::map<AbstractWord, ScalarAcc> weights;
    std::map<std::array<std::uint8_t, 15>, std::pair<GaussQ, int>> moments;
    const int dirs = c.alpha ? n_ - 1 : 1;
    for (int dir = 1; dir <= dirs; ++dir) {
        SymbolExpr fa = factor_a(c, dir);
        SymbolExpr fb = factor_b(c, dir);
        st.a_terms += fa.size();
        st.b_terms += fb.size();
        for (const auto &[ka, ca] : fa.terms())
            for (const auto &[kb, cb] : fb.terms()) {
                ++st.pairs;
                std::array<std::uint8_t, 15> xe{};
                bool odd = false;
                for (int i = 0; i < 15; ++i) {
                    xe[i] = static_cast<std::uint8_t>(ka.xe[i] + kb.xe[i]);
                    odd = odd || (xe[i] & 1);
                }
                if (odd) {
                    ++st.odd_discarded;
                    continue;
                }
                auto mit = moments.find(xe);
                if (mit == moments.end()) {
                    MonomialExponents m(xe.begin(), xe.begin() + (n_ - 1));
                    mit = moments.emplace(xe, split_pi_monomial(sphere_moment(m, n_ - 1))).first;
                }
                GaussQ li = profile_integral(ka.xin, ka.m, kb.xin, kb.m);
                if (li.is_zero()) continue;
                AbstractWord w = ka.word;
                w.insert(w.end(), kb.word.begin(), kb.word.end());
                weights[w].add_product(ca * cb, Monomial::pi_pow(1 + mit->second.second), li * mit->second.first);
            }
    }
    ScalarAcc total;
    for (const auto &[w, acc] : weights) {
        Scalar tr = expand_gpairs(wick_trace(w, n_), n_);
        if (tr.is_zero()) continue;
        ++st.words;
        Scalar wt = acc.to_scalar();
        if (wt.is_zero()) continue;
        for (const auto &[m, c2] : tr.terms()) total.add_product(wt, m, c2);
    }
    if (stats) *stats = st;
    return total.to_scalar() * c.prefactor;
}

CoefficientTable BoundaryEngine::compute_case(const CaseSpec &c, CaseStats *stats) const {
    return CoefficientTable::from_raw(case_raw(c, stats), n_, c.label);
}

CoefficientTable BoundaryEngine::total_boundary() const {
    CoefficientTable t;
    t.dim = n_;
    t.label = "total";
    for (const auto &c : enumerate_cases(n_)) t += compute_case(c);
    return t;
}

}  // namespace wres
