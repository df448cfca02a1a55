#include "wres/symbol_calculus.hpp"

#include <sstream>
#include <tuple>

namespace wres {

int SymKey::homogeneity() const {
    int d = xin + 2 * m;
    for (auto e : xe) d += e;
    return d;
}

bool operator<(const SymKey &a, const SymKey &b) {
    return std::tie(a.xe, a.xin, a.m, a.word) < std::tie(b.xe, b.xin, b.m, b.word);
}

bool operator==(const SymKey &a, const SymKey &b) {
    return a.xe == b.xe && a.xin == b.xin && a.m == b.m && a.word == b.word;
}

SymbolExpr SymbolExpr::constant(int n, const Scalar &s) {
    SymbolExpr e(n);
    e.add(SymKey{}, s);
    return e;
}

SymbolExpr SymbolExpr::xi(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("xi index");
    SymKey k;
    if (i == n)
        k.xin = 1;
    else
        k.xe[i - 1] = 1;
    SymbolExpr e(n);
    e.add(k, Scalar(1));
    return e;
}

SymbolExpr SymbolExpr::normsq(int n, int m) {
    SymKey k;
    k.m = m;
    SymbolExpr e(n);
    e.add(k, Scalar(1));
    return e;
}

SymbolExpr SymbolExpr::letter(int n, Letter l) {
    SymKey k;
    k.word = {l};
    SymbolExpr e(n);
    e.add(k, Scalar(1));
    return e;
}

SymbolExpr SymbolExpr::c_jxi(int n) {
    SymbolExpr e(n);
    for (int p = 1; p <= n; ++p) e += xi(n, p) * letter(n, letter_c(vec::jx(p)));
    return e;
}

std::optional<int> SymbolExpr::degree() const {
    if (terms_.empty()) return std::nullopt;
    const int d = terms_.begin()->first.homogeneity();
    for (const auto &[k, c] : terms_)
        if (k.homogeneity() != d) return std::nullopt;
    return d;
}

void SymbolExpr::add(const SymKey &k, const Scalar &c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

SymbolExpr &SymbolExpr::operator+=(const SymbolExpr &o) {
    if (o.n_ != n_) throw std::invalid_argument("symbol dimension mismatch");
    x_derivable_ = x_derivable_ && o.x_derivable_;
    for (const auto &[k, c] : o.terms_) add(k, c);
    return *this;
}

SymbolExpr operator*(const SymbolExpr &a, const SymbolExpr &b) {
    if (a.n_ != b.n_) throw std::invalid_argument("symbol dimension mismatch");
    SymbolExpr r(a.n_);
    r.x_derivable_ = a.x_derivable_ && b.x_derivable_;
    std::map<SymKey, ScalarAcc> acc;
    for (const auto &[ka, ca] : a.terms_)
        for (const auto &[kb, cb] : b.terms_) {
            SymKey k;
            for (std::size_t i = 0; i < k.xe.size(); ++i) k.xe[i] = static_cast<std::uint8_t>(ka.xe[i] + kb.xe[i]);
            k.xin = ka.xin + kb.xin;
            k.m = ka.m + kb.m;
            k.word = ka.word;
            k.word.insert(k.word.end(), kb.word.begin(), kb.word.end());
            acc[k].add(ca * cb);
        }
    for (auto &[k, s] : acc) r.add(k, s.to_scalar());
    return r;
}

SymbolExpr operator*(const SymbolExpr &a, const Scalar &s) {
    SymbolExpr r(a.n_);
    r.x_derivable_ = a.x_derivable_;
    for (const auto &[k, c] : a.terms_) r.add(k, c * s);
    return r;
}

std::string SymbolExpr::to_string() const {
    if (terms_.empty()) return "0\n";
    std::ostringstream os;
    for (const auto &[k, c] : terms_) {
        os << "(" << c.to_string() << ")";
        for (std::size_t i = 0; i < k.xe.size(); ++i)
            if (k.xe[i]) os << " * xi(" << i + 1 << ")^" << int(k.xe[i]);
        if (k.xin) os << " * xin^" << k.xin;
        if (k.m) os << " * normsq^" << k.m;
        if (!k.word.empty()) os << " * " << word_name(k.word);
        os << "\n";
    }
    return os.str();
}

// ---- derivatives ----

namespace {

Scalar half_hprime() { return Scalar::atom(atom::hprime()) * GaussQ::frac(1, 2); }

Scalar atom_deriv_x(Atom a, int j) {
    switch (atom::kind(a)) {
    case AtomKind::A: return Scalar::atom(atom::da(j, atom::idx(a, 0), atom::idx(a, 1)));
    default: throw DerivativeError("no x-derivative rule for atom " + atom::to_string(a));
    }
}

// d/dx_j of a single letter: list of (factor, replacement letter).
std::vector<std::pair<Scalar, Letter>> letter_deriv_x(Letter l, int j, int n) {
    const VecId u = letter_vec(l);
    const bool bar = letter_is_bar(l);
    auto mk = [bar](VecId v) { return bar ? letter_cbar(v) : letter_c(v); };
    std::vector<std::pair<Scalar, Letter>> out;
    switch (vec::kind(u)) {
    case VecKind::E:
        // c(dx_h) scales like h(x_n)^{1/2} for tangential h
        if (j == n && vec::arg0(u) < n) out.emplace_back(half_hprime(), l);
        return out;
    case VecKind::JX:
        out.emplace_back(Scalar(1), mk(vec::djx(j, vec::arg0(u))));
        if (j == n) out.emplace_back(half_hprime(), mk(vec::jxt(vec::arg0(u))));
        return out;
    default: throw DerivativeError("no x-derivative rule for letter " + letter_name(l));
    }
}

}  // namespace

Scalar scalar_deriv_x(const Scalar &s, int j) {
    ScalarAcc acc;
    for (const auto &[m, c] : s.terms()) {
        for (int k = 0; k < m.n; ++k) {
            Monomial rest = Monomial::pi_pow(m.pi);
            for (int q = 0; q < m.n; ++q)
                if (q != k) rest.mul_atom(m.at[q]);
            acc.add_product(atom_deriv_x(m.at[k], j), rest, c);
        }
    }
    return acc.to_scalar();
}

SymbolExpr symbol_deriv(const SymbolExpr &s, Var v) {
    const int n = s.dim();
    SymbolExpr r(n);
    if (!s.x_derivable()) r.freeze();
    switch (v.kind) {
    case VarKind::XiN:
        for (const auto &[k, c] : s.terms()) {
            if (k.xin > 0) {
                SymKey q = k;
                q.xin -= 1;
                r.add(q, c * GaussQ(k.xin));
            }
            if (k.m != 0) {
                SymKey q = k;
                q.xin += 1;
                q.m -= 1;
                r.add(q, c * GaussQ(2L * k.m));
            }
        }
        return r;
    case VarKind::XiT: {
        if (v.index < 1 || v.index >= n) throw std::out_of_range("tangential xi index");
        const int i = v.index - 1;
        r.freeze();
        for (const auto &[k, c] : s.terms()) {
            if (k.xe[i] > 0) {
                SymKey q = k;
                q.xe[i] -= 1;
                r.add(q, c * GaussQ(static_cast<long>(k.xe[i])));
            }
            if (k.m != 0) {
                SymKey q = k;
                q.xe[i] += 1;
                q.m -= 1;
                r.add(q, c * GaussQ(2L * k.m));
            }
        }
        return r;
    }
    case VarKind::X: {
        const int j = v.index;
        if (j < 1 || j > n) throw std::out_of_range("x index");
        if (!s.x_derivable()) throw DerivativeError("x-derivative of a symbol frozen at x_0");
        const Scalar hp = Scalar::atom(atom::hprime());
        for (const auto &[k, c] : s.terms()) {
            if (!c.is_zero()) {
                Scalar dc = scalar_deriv_x(c, j);
                if (!dc.is_zero()) r.add(k, dc);
            }
            for (std::size_t pos = 0; pos < k.word.size(); ++pos) {
                for (const auto &[f, nl] : letter_deriv_x(k.word[pos], j, n)) {
                    SymKey q = k;
                    q.word[pos] = nl;
                    r.add(q, c * f);
                }
            }
            if (j == n && k.m != 0) {
                // d/dx_n |xi|^2 = h'(0) |xi'|^2 at x_0
                for (int i = 0; i < n - 1; ++i) {
                    SymKey q = k;
                    q.m -= 1;
                    q.xe[i] += 2;
                    r.add(q, c * hp * GaussQ(k.m));
                }
            }
        }
        return r;
    }
    }
    return r;
}

// ---- builders ----

namespace {

SymbolExpr sigma0_at_x0(int n, Sigma0Form form) {
    SymbolExpr s(n);
    const Scalar q = Scalar::atom(atom::hprime()) * GaussQ::frac(1, 4);
    for (int nu = 1; nu < n; ++nu) {
        VecId jv = form == Sigma0Form::Printed ? vec::jt(nu) : vec::jx(nu);
        SymbolExpr cj = SymbolExpr::letter(n, letter_c(jv));
        s += cj * SymbolExpr::letter(n, letter_cbar(vec::e(n))) * SymbolExpr::letter(n, letter_cbar(vec::e(nu))) * q;
        s += cj * SymbolExpr::letter(n, letter_c(vec::e(n))) * SymbolExpr::letter(n, letter_c(vec::e(nu))) * (-q);
    }
    s += SymbolExpr::letter(n, letter_cbar(vec::v()));
    s.freeze();
    return s;
}

SymbolExpr sigma2_cube_at_x0(int n, Sigma0Form form) {
    const Scalar hp = Scalar::atom(atom::hprime());
    SymbolExpr cj = SymbolExpr::c_jxi(n);
    SymbolExpr tang(n);  // |xi'|^2
    for (int i = 1; i < n; ++i) tang += SymbolExpr::xi(n, i) * SymbolExpr::xi(n, i);

    // c[J(dx_l)] d_l(g^{ij}) xi_i xi_j
    SymbolExpr s = SymbolExpr::letter(n, letter_c(vec::jx(n))) * tang * hp;

    // c[J(xi)] (4 sigma^k + 4 a^k - 2 Gamma^k) xi_k
    SymbolExpr conn(n);
    for (int k = 1; k < n; ++k) {
        SymbolExpr x = SymbolExpr::xi(n, k);
        conn += x * SymbolExpr::letter(n, letter_c(vec::e(n))) * SymbolExpr::letter(n, letter_c(vec::e(k))) * (-hp);
        conn += x * SymbolExpr::letter(n, letter_cbar(vec::e(n))) * SymbolExpr::letter(n, letter_cbar(vec::e(k))) * hp;
    }
    conn += SymbolExpr::xi(n, n) * (hp * GaussQ(-(n - 1)));
    s += cj * conn;

    // -2 sum_alpha c[J(xi)] c[J(e_alpha)] c[(nabla_alpha J) xi*]
    for (int al = 1; al <= n; ++al)
        for (int la = 1; la <= n; ++la)
            s += SymbolExpr::xi(n, la) * cj * SymbolExpr::letter(n, letter_c(vec::jx(al))) *
                 SymbolExpr::letter(n, letter_c(vec::nj(al, la))) * Scalar(-2);

    s += SymbolExpr::normsq(n, 1) * sigma0_at_x0(n, form);
    s.freeze();
    return s;
}

}  // namespace

SymbolExpr build_sigma(Operator op, int order, int n, Sigma0Form form) {
    if (n < 2 || n > 15) throw std::invalid_argument("dimension out of range");
    const Scalar i = Scalar(GaussQ::i());
    if (op == Operator::D && order == 1) return SymbolExpr::c_jxi(n) * i;
    if (op == Operator::D && order == 0) return sigma0_at_x0(n, form);
    if (op == Operator::D3 && order == 3) return SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, 1) * i;
    if (op == Operator::D3 && order == 2) return sigma2_cube_at_x0(n, form);
    throw std::invalid_argument("unsupported (operator, order) pair");
}

// ---- inversion ----

std::vector<SymbolExpr> invert_symbol(const std::vector<SymbolExpr> &p, int depth) {
    if (p.empty() || depth < 1 || depth > 2 || static_cast<int>(p.size()) < depth)
        throw std::invalid_argument("invert_symbol: need depth in {1,2} and that many symbols");
    const SymbolExpr &lead = p[0];
    const int n = lead.dim();
    // leading symbol must be i c[J(xi)] |xi|^{2m}
    auto d = lead.degree();
    if (!d || *d < 1 || (*d - 1) % 2 != 0) throw std::domain_error("non-invertible leading symbol");
    const int m = (*d - 1) / 2;
    const Scalar i = Scalar(GaussQ::i());
    if (!(lead == SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, m) * i))
        throw std::domain_error("non-invertible leading symbol");
    // (i c)(i c) = -c^2 = |xi|^2 under the isometry relation
    SymbolExpr q_lead = SymbolExpr::c_jxi(n) * SymbolExpr::normsq(n, -m - 1) * i;
    std::vector<SymbolExpr> out{q_lead};
    if (depth == 1) return out;

    // q_next = -q_lead [p_next q_lead + sum_j d_{xi_j} p_lead (-i) d_{x_j} q_lead]
    SymbolExpr inner = p[1] * q_lead;
    const Scalar minus_i = Scalar(-GaussQ::i());
    for (int j = 1; j <= n; ++j) {
        SymbolExpr dq = symbol_deriv(q_lead, Var::x(j));
        if (dq.is_zero()) continue;
        SymbolExpr dp = symbol_deriv(lead, j == n ? Var::xi_n() : Var::xi(j));
        inner += dp * dq * minus_i;
    }
    SymbolExpr q_next = q_lead * inner * Scalar(-1);
    q_next.freeze();
    out.push_back(q_next);
    return out;
}

BoundaryForm evaluate_boundary(const SymbolExpr &s) {
    BoundaryForm out;
    for (const auto &[k, c] : s.terms()) {
        BoundaryKey bk{k.xe, k.word};
        RationalXi<Scalar> term = RationalXi<Scalar>::profile(k.xin, k.m).times(c);
        auto it = out.find(bk);
        if (it == out.end())
            out.emplace(bk, term);
        else
            it->second += term;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : ++it;
    return out;
}

}  // namespace wres
