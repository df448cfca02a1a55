#include "wres/clifford_abstract.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace wres {

std::string letter_name(Letter l) {
    return (letter_is_bar(l) ? "cbar(" : "c(") + vec::name(letter_vec(l)) + ")";
}

std::string word_name(const AbstractWord &w) {
    if (w.empty()) return "1";
    std::string s;
    for (Letter l : w) s += letter_name(l);
    return s;
}

std::optional<Scalar> vec_component(VecId u, int h, int n) {
    const int x = vec::arg0(u), y = vec::arg1(u);
    switch (vec::kind(u)) {
    case VecKind::E: return Scalar(x == h ? 1 : 0);
    case VecKind::JX: return Scalar::atom(atom::a(h, x));
    case VecKind::JXt: return h < n ? Scalar::atom(atom::a(h, x)) : Scalar();
    case VecKind::JT: return Scalar::atom(atom::a(x, h));
    case VecKind::DJX: return Scalar::atom(atom::da(x, h, y));
    case VecKind::V: return Scalar::atom(atom::vc(h));
    case VecKind::NJ: return Scalar::atom(atom::nabj(x, y, h));
    case VecKind::D2J:
    case VecKind::DV: return std::nullopt;
    }
    return std::nullopt;
}

Scalar pair_value(VecId u, VecId v, int n) {
    const bool ue = vec::kind(u) == VecKind::E;
    const bool ve = vec::kind(v) == VecKind::E;
    if (ue && ve) return Scalar(vec::arg0(u) == vec::arg0(v) ? 1 : 0);
    if (ue || ve) {
        VecId e = ue ? u : v;
        VecId w = ue ? v : u;
        if (auto c = vec_component(w, vec::arg0(e), n)) return *c;
    }
    return Scalar::atom(atom::gpair(u, v));
}

namespace {

// Sum over perfect matchings of items; pairing item 0 with item k carries (-1)^(k-1).
void matchings(std::vector<VecId> &items, int n, const GaussQ &per_pair, const Scalar &acc, Scalar &out) {
    if (items.empty()) {
        out += acc;
        return;
    }
    const VecId first = items[0];
    for (std::size_t k = 1; k < items.size(); ++k) {
        Scalar g = pair_value(first, items[k], n);
        if (g.is_zero()) continue;
        std::vector<VecId> rest;
        rest.reserve(items.size() - 2);
        for (std::size_t m = 1; m < items.size(); ++m)
            if (m != k) rest.push_back(items[m]);
        GaussQ f = per_pair;
        if ((k - 1) & 1) f = -f;
        matchings(rest, n, per_pair, acc * g * f, out);
    }
}

Scalar pairing_trace(const AbstractWord &w, int n) {
    std::vector<VecId> bars, plains;
    int swaps = 0;
    for (Letter l : w) {
        if (letter_is_bar(l)) {
            bars.push_back(letter_vec(l));
            swaps += static_cast<int>(plains.size());
        } else {
            plains.push_back(letter_vec(l));
        }
    }
    if ((bars.size() & 1) || (plains.size() & 1)) return Scalar();
    Scalar bar_part, plain_part;
    matchings(bars, n, GaussQ(1), Scalar(1), bar_part);
    if (bar_part.is_zero()) return Scalar();
    matchings(plains, n, GaussQ(-1), Scalar(1), plain_part);
    GaussQ f(1L << n);
    if (swaps & 1) f = -f;
    return bar_part * plain_part * f;
}

// The sign convention must reproduce the two four-letter identities; checked once per dimension.
void check_pairing_convention(int n) {
    const VecId x = vec::jx(1), y = vec::nj(1, 2), z = vec::v(), u = vec::d2j(2, 1);
    const GaussQ tr(1L << n);
    auto g = [n](VecId a, VecId b) { return pair_value(a, b, n); };
    const Scalar mixed = pairing_trace({letter_cbar(x), letter_cbar(y), letter_c(z), letter_c(u)}, n);
    const Scalar plain = pairing_trace({letter_c(x), letter_c(y), letter_c(z), letter_c(u)}, n);
    if (mixed != -(g(x, y) * g(z, u)) * tr || plain != (g(x, u) * g(y, z) - g(x, z) * g(y, u) + g(x, y) * g(z, u)) * tr)
        throw std::logic_error("pairing convention violates the four-letter trace identities");
}

}  // namespace

Scalar wick_trace(const AbstractWord &w, int n) {
    static std::once_flag checked[16];
    if (n < 1 || n > 15) throw std::invalid_argument("dimension out of range");
    std::call_once(checked[n], check_pairing_convention, n);
    return pairing_trace(w, n);
}

Scalar expand_gpairs(const Scalar &s, int n) {
    return s.substitute([n](Atom a) -> Scalar {
        if (atom::kind(a) != AtomKind::GPair) return Scalar::atom(a);
        auto [u, v] = atom::gpair_args(a);
        Scalar sum;
        for (int h = 1; h <= n; ++h) {
            auto cu = vec_component(u, h, n);
            auto cv = vec_component(v, h, n);
            if (!cu || !cv) return Scalar::atom(a);
            sum += *cu * *cv;
        }
        return sum;
    });
}

CliffordElement word_to_frame(const AbstractWord &w, int n) {
    CliffordElement acc = CliffordElement::scalar(n, Scalar(1));
    for (Letter l : w) {
        CliffordElement v(n);
        for (int h = 1; h <= n; ++h) {
            auto c = vec_component(letter_vec(l), h, n);
            if (!c) throw std::invalid_argument("opaque vector in frame expansion: " + letter_name(l));
            if (c->is_zero()) continue;
            v += (letter_is_bar(l) ? CliffordElement::cbar(n, h) : CliffordElement::c(n, h)) * *c;
        }
        acc = acc * v;
    }
    return acc;
}

}  // namespace wres
