#include "wres/clifford_frame.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace wres {

namespace {

// Sign of concatenating two ascending index sets into ascending order.
int merge_sign(std::uint16_t x, std::uint16_t y) {
    int swaps = 0;
    for (std::uint16_t r = y; r; r &= r - 1) {
        int b = std::countr_zero(r);
        swaps += std::popcount(static_cast<std::uint16_t>(x >> (b + 1)));
    }
    return (swaps & 1) ? -1 : 1;
}

}  // namespace

std::string CliffordWord::to_string() const {
    if (empty()) return "1";
    std::string s;
    for (int k = 0; k < 16; ++k)
        if (bar >> k & 1) s += "cbar(" + std::to_string(k + 1) + ")";
    for (int k = 0; k < 16; ++k)
        if (plain >> k & 1) s += "c(" + std::to_string(k + 1) + ")";
    return s;
}

int word_product(const CliffordWord &a, const CliffordWord &b, CliffordWord &out) {
    int sign = 1;
    // move b.bar left across a.plain: cross families anticommute
    if ((std::popcount(a.plain) * std::popcount(b.bar)) & 1) sign = -sign;
    sign *= merge_sign(a.bar, b.bar);  // cbar^2 = +1
    sign *= merge_sign(a.plain, b.plain);
    if (std::popcount(static_cast<std::uint16_t>(a.plain & b.plain)) & 1) sign = -sign;  // c^2 = -1
    out.bar = a.bar ^ b.bar;
    out.plain = a.plain ^ b.plain;
    return sign;
}

int normalize_sequence(std::vector<Generator> seq, CliffordWord &out) {
    // rank: bars first, then index
    auto rank = [](const Generator &g) { return (g.bar ? 0 : 100) + g.index; };
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            const Generator &x = seq[k];
            const Generator &y = seq[k + 1];
            if (rank(x) == rank(y)) {
                if (!x.bar) sign = -sign;
                seq.erase(seq.begin() + static_cast<long>(k), seq.begin() + static_cast<long>(k) + 2);
                changed = true;
                break;
            }
            if (rank(x) > rank(y)) {
                std::swap(seq[k], seq[k + 1]);
                sign = -sign;
                changed = true;
            }
        }
    }
    out = CliffordWord{};
    for (const auto &g : seq) {
        if (g.index < 1 || g.index > 16) throw std::out_of_range("generator index");
        (g.bar ? out.bar : out.plain) |= static_cast<std::uint16_t>(1u << (g.index - 1));
    }
    return sign;
}

CliffordElement CliffordElement::scalar(int n, const Scalar &s) { return word(n, CliffordWord{}, s); }

CliffordElement CliffordElement::c(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("frame index out of range");
    return word(n, CliffordWord{0, static_cast<std::uint16_t>(1u << (i - 1))});
}

CliffordElement CliffordElement::cbar(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("frame index out of range");
    return word(n, CliffordWord{static_cast<std::uint16_t>(1u << (i - 1)), 0});
}

CliffordElement CliffordElement::word(int n, const CliffordWord &w, const Scalar &coef) {
    CliffordElement e(n);
    e.add(w, coef);
    return e;
}

void CliffordElement::add(const CliffordWord &w, const Scalar &s) {
    if (s.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero()) terms_.erase(it);
}

CliffordElement &CliffordElement::operator+=(const CliffordElement &o) {
    if (o.n_ != n_) throw std::invalid_argument("Clifford dimension mismatch");
    for (const auto &[w, s] : o.terms_) add(w, s);
    return *this;
}

CliffordElement operator-(CliffordElement a, const CliffordElement &b) {
    return a += b * Scalar(-1);
}

CliffordElement operator*(const CliffordElement &a, const Scalar &s) {
    CliffordElement r(a.n_);
    for (const auto &[w, c] : a.terms_) r.add(w, c * s);
    return r;
}

bool operator==(const CliffordElement &a, const CliffordElement &b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::string CliffordElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[w, s] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << s.to_string() << ")*" << w.to_string();
    }
    return os.str();
}

CliffordElement cw_mul(const CliffordElement &a, const CliffordElement &b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("Clifford dimension mismatch");
    CliffordElement r(a.dim());
    for (const auto &[wa, sa] : a.terms())
        for (const auto &[wb, sb] : b.terms()) {
            CliffordWord w;
            int sign = word_product(wa, wb, w);
            r.add(w, sa * sb * GaussQ(sign));
        }
    return r;
}

Scalar cw_trace(const CliffordElement &a) {
    auto it = a.terms().find(CliffordWord{});
    if (it == a.terms().end()) return Scalar();
    return it->second * GaussQ(1L << a.dim());
}

Eigen::MatrixXcd generator_matrix(int n, const Generator &g) {
    const int dim = 1 << n;
    const int j = g.index - 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (int s = 0; s < dim; ++s) {
        int below = std::popcount(static_cast<unsigned>(s & ((1 << j) - 1)));
        double sign = (below & 1) ? -1.0 : 1.0;
        if (s >> j & 1) {
            // interior multiplication; c = eps - iota, cbar = eps + iota
            m(s ^ (1 << j), s) = g.bar ? sign : -sign;
        } else {
            m(s | (1 << j), s) = sign;
        }
    }
    return m;
}

Eigen::MatrixXcd cw_matrix_rep(const CliffordElement &a, const Assignment<double> &asg) {
    const int n = a.dim();
    const int dim = 1 << n;
    std::vector<Eigen::MatrixXcd> gc, gb;
    for (int i = 1; i <= n; ++i) {
        gc.push_back(generator_matrix(n, {false, i}));
        gb.push_back(generator_matrix(n, {true, i}));
    }
    Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &[w, s] : a.terms()) {
        Cx<double> v = scalar_eval_numeric<double>(s, asg, real_pi<double>());
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
        for (int k = 0; k < n; ++k)
            if (w.bar >> k & 1) m = m * gb[k];
        for (int k = 0; k < n; ++k)
            if (w.plain >> k & 1) m = m * gc[k];
        total += std::complex<double>(v.re, v.im) * m;
    }
    return total;
}

}  // namespace wres
