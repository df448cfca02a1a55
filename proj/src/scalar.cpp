#include "wres/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace wres {

GaussQ &GaussQ::operator*=(const GaussQ &o) {
    Q r = re * o.re - im * o.im;
    Q i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

GaussQ GaussQ::inverse() const {
    Q d = re * re + im * im;
    if (sgn(d) == 0) throw std::domain_error("GaussQ: division by zero");
    return GaussQ(re / d, -im / d);
}

std::string GaussQ::to_string() const {
    if (sgn(im) == 0) return re.get_str();
    if (sgn(re) == 0) return im.get_str() + "*i";
    return "(" + re.get_str() + (sgn(im) > 0 ? "+" : "") + im.get_str() + "*i)";
}

// ---- vector symbols ----

namespace vec {

VecId make(VecKind k, int x, int y) {
    if (x < 0 || x > 15 || y < 0 || y > 15) throw std::out_of_range("vector index out of range");
    return static_cast<VecId>((static_cast<unsigned>(k) << 8) | (x << 4) | y);
}
VecKind kind(VecId v) { return static_cast<VecKind>(v >> 8); }
int arg0(VecId v) { return (v >> 4) & 0xF; }
int arg1(VecId v) { return v & 0xF; }

std::string name(VecId v) {
    auto b = [](int i) { return "[" + std::to_string(i) + "]"; };
    switch (kind(v)) {
    case VecKind::E: return "e" + b(arg0(v));
    case VecKind::JX: return "jx" + b(arg0(v));
    case VecKind::JXt: return "jxt" + b(arg0(v));
    case VecKind::JT: return "jt" + b(arg0(v));
    case VecKind::DJX: return "djx" + b(arg0(v)) + b(arg1(v));
    case VecKind::V: return "V";
    case VecKind::NJ: return "nj" + b(arg0(v)) + b(arg1(v));
    case VecKind::D2J: return "d2j" + b(arg0(v)) + b(arg1(v));
    case VecKind::DV: return "dv" + b(arg0(v));
    }
    return "?";
}

}  // namespace vec

// ---- atoms ----

namespace atom {
namespace {
Atom pack(AtomKind k, std::initializer_list<int> idx) {
    Atom a = static_cast<Atom>(k) << 28;
    int shift = 24;
    for (int v : idx) {
        if (v < 0 || v > 15) throw std::out_of_range("atom index out of range");
        a |= static_cast<Atom>(v) << shift;
        shift -= 4;
    }
    return a;
}
}  // namespace

Atom hprime() { return pack(AtomKind::HPrime, {}); }
Atom a(int l, int p) { return pack(AtomKind::A, {l, p}); }
Atom da(int j, int h, int p) { return pack(AtomKind::DA, {j, h, p}); }
Atom vc(int k) { return pack(AtomKind::Vc, {k}); }
Atom nabj(int al, int be, int ga) { return pack(AtomKind::NabJ, {al, be, ga}); }
Atom gpair(VecId u, VecId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<Atom>(AtomKind::GPair) << 28) | (static_cast<Atom>(u) << 12) | v;
}
Atom curv(int i, int j, int k, int l) { return pack(AtomKind::CurvR, {i, j, k, l}); }
Atom scal_s() { return pack(AtomKind::ScalS, {}); }
Atom vnormsq() { return pack(AtomKind::VNormSq, {}); }

AtomKind kind(Atom a) { return static_cast<AtomKind>(a >> 28); }
int idx(Atom a, int slot) { return (a >> (24 - 4 * slot)) & 0xF; }
std::pair<VecId, VecId> gpair_args(Atom a) {
    return {static_cast<VecId>((a >> 12) & 0xFFF), static_cast<VecId>(a & 0xFFF)};
}

std::string to_string(Atom x) {
    auto b = [&](int s) { return "[" + std::to_string(idx(x, s)) + "]"; };
    switch (kind(x)) {
    case AtomKind::HPrime: return "hp";
    case AtomKind::A: return "a" + b(0) + b(1);
    case AtomKind::DA: return "da" + b(0) + b(1) + b(2);
    case AtomKind::Vc: return "V" + b(0);
    case AtomKind::NabJ: return "nabj" + b(0) + b(1) + b(2);
    case AtomKind::GPair: {
        auto [u, v] = gpair_args(x);
        return "g(" + vec::name(u) + "," + vec::name(v) + ")";
    }
    case AtomKind::CurvR: return "R" + b(0) + b(1) + b(2) + b(3);
    case AtomKind::ScalS: return "s";
    case AtomKind::VNormSq: return "Vsq";
    }
    return "?";
}

namespace {
std::vector<int> brackets(const std::string &s, std::size_t from) {
    std::vector<int> out;
    std::size_t i = from;
    while (i < s.size()) {
        if (s[i] != '[') throw std::invalid_argument("bad atom: " + s);
        auto j = s.find(']', i);
        if (j == std::string::npos) throw std::invalid_argument("bad atom: " + s);
        out.push_back(std::stoi(s.substr(i + 1, j - i - 1)));
        i = j + 1;
    }
    return out;
}

VecId parse_vec(const std::string &s) {
    if (s == "V") return vec::v();
    auto p = s.find('[');
    if (p == std::string::npos) throw std::invalid_argument("bad vector: " + s);
    std::string head = s.substr(0, p);
    auto ix = brackets(s, p);
    auto need = [&](std::size_t k) {
        if (ix.size() != k) throw std::invalid_argument("bad vector arity: " + s);
    };
    if (head == "e") { need(1); return vec::e(ix[0]); }
    if (head == "jx") { need(1); return vec::jx(ix[0]); }
    if (head == "jxt") { need(1); return vec::jxt(ix[0]); }
    if (head == "jt") { need(1); return vec::jt(ix[0]); }
    if (head == "djx") { need(2); return vec::djx(ix[0], ix[1]); }
    if (head == "nj") { need(2); return vec::nj(ix[0], ix[1]); }
    if (head == "d2j") { need(2); return vec::d2j(ix[0], ix[1]); }
    if (head == "dv") { need(1); return vec::dv(ix[0]); }
    throw std::invalid_argument("unknown vector: " + s);
}
}  // namespace

Atom parse(const std::string &s) {
    if (s == "hp") return hprime();
    if (s == "s") return scal_s();
    if (s == "Vsq") return vnormsq();
    if (s.rfind("g(", 0) == 0 && s.back() == ')') {
        auto comma = s.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("bad pair: " + s);
        return gpair(parse_vec(s.substr(2, comma - 2)), parse_vec(s.substr(comma + 1, s.size() - comma - 2)));
    }
    auto p = s.find('[');
    if (p == std::string::npos) throw std::invalid_argument("bad atom: " + s);
    std::string head = s.substr(0, p);
    auto ix = brackets(s, p);
    auto need = [&](std::size_t k) {
        if (ix.size() != k) throw std::invalid_argument("bad atom arity: " + s);
    };
    if (head == "a") { need(2); return a(ix[0], ix[1]); }
    if (head == "da") { need(3); return da(ix[0], ix[1], ix[2]); }
    if (head == "V") { need(1); return vc(ix[0]); }
    if (head == "nabj") { need(3); return nabj(ix[0], ix[1], ix[2]); }
    if (head == "R") { need(4); return curv(ix[0], ix[1], ix[2], ix[3]); }
    throw std::invalid_argument("unknown atom: " + s);
}

}  // namespace atom

// ---- monomials ----

void Monomial::mul_atom(Atom a) {
    if (n >= kCap) throw std::length_error("monomial capacity exceeded");
    int k = n;
    while (k > 0 && at[k - 1] > a) {
        at[k] = at[k - 1];
        --k;
    }
    at[k] = a;
    ++n;
}

Monomial operator*(const Monomial &x, const Monomial &y) {
    if (x.n + y.n > Monomial::kCap) throw std::length_error("monomial capacity exceeded");
    Monomial r;
    r.pi = static_cast<std::uint8_t>(x.pi + y.pi);
    std::merge(x.at.begin(), x.at.begin() + x.n, y.at.begin(), y.at.begin() + y.n, r.at.begin());
    r.n = static_cast<std::uint8_t>(x.n + y.n);
    return r;
}

bool operator==(const Monomial &x, const Monomial &y) {
    return x.pi == y.pi && x.n == y.n && std::equal(x.at.begin(), x.at.begin() + x.n, y.at.begin());
}

bool operator<(const Monomial &x, const Monomial &y) {
    if (x.n != y.n) return x.n < y.n;
    for (int k = 0; k < x.n; ++k)
        if (x.at[k] != y.at[k]) return x.at[k] < y.at[k];
    return x.pi < y.pi;
}

std::size_t Monomial::hash() const {
    std::uint64_t h = 1469598103934665603ull ^ pi;
    for (int k = 0; k < n; ++k) {
        h ^= at[k];
        h *= 1099511628211ull;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::string Monomial::to_string() const {
    std::string s;
    for (int k = 0; k < n; ++k) {
        if (k) s += "*";
        s += atom::to_string(at[k]);
    }
    return s;
}

// ---- scalars ----

Scalar::Scalar(const GaussQ &c) {
    if (!c.is_zero()) terms_.emplace_back(Monomial(), c);
}

Scalar Scalar::atom(Atom a) { return monomial(Monomial::of(a), GaussQ(1)); }

Scalar Scalar::monomial(const Monomial &m, const GaussQ &c) {
    Scalar s;
    if (!c.is_zero()) s.terms_.emplace_back(m, c);
    return s;
}

Scalar Scalar::pi(int k) { return monomial(Monomial::pi_pow(k), GaussQ(1)); }

Scalar Scalar::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return a.first < b.first; });
    Scalar s;
    for (auto &t : terms) {
        if (!s.terms_.empty() && s.terms_.back().first == t.first) {
            s.terms_.back().second += t.second;
            if (s.terms_.back().second.is_zero()) s.terms_.pop_back();
        } else if (!t.second.is_zero()) {
            s.terms_.push_back(std::move(t));
        }
    }
    return s;
}

bool Scalar::is_real() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term &t) { return t.second.is_real(); });
}

Scalar &Scalar::operator+=(const Scalar &o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
        if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
            out.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->first < i->first) {
            out.push_back(*j++);
        } else {
            GaussQ c = i->second + j->second;
            if (!c.is_zero()) out.emplace_back(i->first, std::move(c));
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o) { return *this += -o; }

Scalar &Scalar::operator*=(const GaussQ &c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) t.second *= c;
    return *this;
}

Scalar operator*(const Scalar &a, const Scalar &b) {
    if (a.terms_.size() * b.terms_.size() > 64) {
        ScalarAcc acc;
        for (const auto &[m, c] : b.terms_) acc.add_product(a, m, c);
        return acc.to_scalar();
    }
    std::vector<Scalar::Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto &x : a.terms_)
        for (const auto &y : b.terms_) out.emplace_back(x.first * y.first, x.second * y.second);
    return Scalar::from_terms(std::move(out));
}

Scalar Scalar::operator-() const {
    Scalar s = *this;
    for (auto &t : s.terms_) t.second = -t.second;
    return s;
}

bool operator==(const Scalar &a, const Scalar &b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
        if (!(a.terms_[k].first == b.terms_[k].first) || a.terms_[k].second != b.terms_[k].second) return false;
    return true;
}

GaussQ Scalar::constant(int pi_power) const {
    for (const auto &[m, c] : terms_)
        if (m.n == 0 && m.pi == pi_power) return c;
    return GaussQ(0);
}

Scalar Scalar::substitute(const std::function<Scalar(Atom)> &f) const {
    std::unordered_map<Atom, Scalar> cache;
    ScalarAcc acc;
    for (const auto &[m, c] : terms_) {
        Scalar t = Scalar::monomial(Monomial::pi_pow(m.pi), c);
        for (int k = 0; k < m.n && !t.is_zero(); ++k) {
            auto it = cache.find(m.at[k]);
            if (it == cache.end()) it = cache.emplace(m.at[k], f(m.at[k])).first;
            t = t * it->second;
        }
        acc.add(t);
    }
    return acc.to_scalar();
}

std::string Scalar::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.to_string();
        if (m.pi == 1) os << "*pi";
        if (m.pi > 1) os << "*pi^" << int(m.pi);
        if (m.n) os << "*" << m.to_string();
    }
    return os.str();
}

Scalar scalar_add(const Scalar &a, const Scalar &b) { return a + b; }
Scalar scalar_mul(const Scalar &a, const Scalar &b) { return a * b; }

// ---- accumulator ----

void ScalarAcc::add(const Monomial &m, const GaussQ &c) {
    if (c.is_zero()) return;
    auto [it, fresh] = map_.try_emplace(m, c);
    if (!fresh) it->second += c;
}

void ScalarAcc::add(const Scalar &s) {
    for (const auto &[m, c] : s.terms()) add(m, c);
}

void ScalarAcc::add_product(const Scalar &s, const Monomial &m, const GaussQ &c) {
    for (const auto &[sm, sc] : s.terms()) add(sm * m, sc * c);
}

Scalar ScalarAcc::to_scalar() const {
    std::vector<Scalar::Term> v;
    v.reserve(map_.size());
    for (const auto &[m, c] : map_)
        if (!c.is_zero()) v.emplace_back(m, c);
    return Scalar::from_terms(std::move(v));
}

}  // namespace wres
