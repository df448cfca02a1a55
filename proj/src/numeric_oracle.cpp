#include "wres/numeric_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

namespace wres {

NumericAssignment make_assignment(int n, std::uint64_t seed) {
    NumericAssignment a;
    a.seed = seed;
    a.dim = n;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    auto draw = [&](Atom at) { a.values[at] = u(rng); };
    draw(atom::hprime());
    for (int l = 1; l <= n; ++l)
        for (int p = 1; p <= n; ++p) draw(atom::a(l, p));
    for (int j = 1; j <= n; ++j)
        for (int h = 1; h <= n; ++h)
            for (int p = 1; p <= n; ++p) draw(atom::da(j, h, p));
    for (int k = 1; k <= n; ++k) draw(atom::vc(k));
    for (int al = 1; al <= n; ++al)
        for (int be = 1; be <= n; ++be)
            for (int ga = 1; ga <= n; ++ga) draw(atom::nabj(al, be, ga));
    return a;
}

namespace {

// ---- small real-type helpers ----

template <class R>
R rsqrt(const R &x) {
    using std::sqrt;
    return sqrt(x);
}
template <class R>
R rsin(const R &x) {
    using std::sin;
    return sin(x);
}
template <class R>
R rcos(const R &x) {
    using std::cos;
    return cos(x);
}
template <class R>
R rtan(const R &x) {
    using std::tan;
    return tan(x);
}
template <class R>
R rabs(const R &x) {
    using std::abs;
    return abs(x);
}

template <class R>
Cx<R> cis(const R &phi) {
    return Cx<R>(rcos(phi), rsin(phi));
}

template <class R>
R fd_step(unsigned digits) {
    // balances a fourth-order truncation error against cancellation
    R h(1);
    const int e = std::max(3, static_cast<int>(digits) / 5);
    for (int k = 0; k < e; ++k) h /= 10;
    return h;
}

// Gamma at x = twice_x / 2 for positive half-integers and integers.
template <class R>
R gamma_half(int twice_x) {
    if (twice_x % 2 == 0) {
        R r(1);
        for (int k = 2; k < twice_x / 2; ++k) r *= k;
        return r;
    }
    R r = rsqrt(real_pi<R>());
    for (int t = 1; t < twice_x; t += 2) r *= R(t) / 2;
    return r;
}

// ---- dense matrices over Cx<R> and Clifford generators ----

template <class R>
struct Mat {
    int D = 0;
    std::vector<Cx<R>> a;
    Mat() = default;
    explicit Mat(int d) : D(d), a(static_cast<std::size_t>(d) * d) {}
    static Mat identity(int d) {
        Mat m(d);
        for (int i = 0; i < d; ++i) m(i, i) = Cx<R>(R(1));
        return m;
    }
    Cx<R> &operator()(int r, int c) { return a[static_cast<std::size_t>(r) * D + c]; }
    const Cx<R> &operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * D + c]; }
    Mat &operator+=(const Mat &o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += o.a[k];
        return *this;
    }
    void axpy(const Cx<R> &s, const Mat &o) {
        for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * o.a[k];
    }
    Mat scaled(const Cx<R> &s) const {
        Mat m(D);
        for (std::size_t k = 0; k < a.size(); ++k) m.a[k] = s * a[k];
        return m;
    }
};

template <class R>
Cx<R> trace_prod(const Mat<R> &x, const Mat<R> &y) {
    Cx<R> t;
    for (int r = 0; r < x.D; ++r)
        for (int c = 0; c < x.D; ++c) t += x(r, c) * y(c, r);
    return t;
}

template <class R>
Cx<R> trace(const Mat<R> &x) {
    Cx<R> t;
    for (int r = 0; r < x.D; ++r) t += x(r, r);
    return t;
}

// Generator g < n is c(e_{g+1}) = eps - iota; g >= n is cbar(e_{g-n+1}) = eps + iota.
// On the subset basis the matrix has a single entry per column: Gamma[s ^ bit][s] = val[s].
template <class R>
struct Generators {
    int n = 0, D = 0;
    std::vector<std::vector<R>> val;
    std::vector<int> bit;
    explicit Generators(int n_) : n(n_), D(1 << n_) {
        for (int g = 0; g < 2 * n; ++g) {
            const int j = g % n;
            const bool bar = g >= n;
            bit.push_back(1 << j);
            std::vector<R> v(D);
            for (int s = 0; s < D; ++s) {
                const int below = std::popcount(static_cast<unsigned>(s & ((1 << j) - 1)));
                const int sg = (below & 1) ? -1 : 1;
                v[s] = R((s >> j & 1) ? (bar ? sg : -sg) : sg);
            }
            val.push_back(std::move(v));
        }
    }
};

// Linear combination of generators: u[g] for g in [0, 2n).
template <class R>
using CVec = std::vector<Cx<R>>;

template <class R>
Mat<R> left_mul(const Generators<R> &G, const CVec<R> &v, const Mat<R> &m) {
    Mat<R> out(G.D);
    for (int g = 0; g < 2 * G.n; ++g) {
        if (v[g].re == 0 && v[g].im == 0) continue;
        const int b = G.bit[g];
        for (int r = 0; r < G.D; ++r) {
            const int s = r ^ b;
            const Cx<R> f = v[g] * G.val[g][s];
            const Cx<R> *src = &m.a[static_cast<std::size_t>(s) * G.D];
            Cx<R> *dst = &out.a[static_cast<std::size_t>(r) * G.D];
            for (int c = 0; c < G.D; ++c) dst[c] += f * src[c];
        }
    }
    return out;
}

template <class R>
Mat<R> right_mul(const Generators<R> &G, const Mat<R> &m, const CVec<R> &v) {
    Mat<R> out(G.D);
    for (int g = 0; g < 2 * G.n; ++g) {
        if (v[g].re == 0 && v[g].im == 0) continue;
        const int b = G.bit[g];
        std::vector<Cx<R>> f(G.D);
        for (int c = 0; c < G.D; ++c) f[c] = v[g] * G.val[g][c];
        for (int r = 0; r < G.D; ++r) {
            const Cx<R> *src = &m.a[static_cast<std::size_t>(r) * G.D];
            Cx<R> *dst = &out.a[static_cast<std::size_t>(r) * G.D];
            for (int c = 0; c < G.D; ++c) dst[c] += src[c ^ b] * f[c];
        }
    }
    return out;
}

template <class R>
Mat<R> dense(const Generators<R> &G, const CVec<R> &v) {
    Mat<R> out(G.D);
    for (int g = 0; g < 2 * G.n; ++g) {
        if (v[g].re == 0 && v[g].im == 0) continue;
        for (int s = 0; s < G.D; ++s) out(s ^ G.bit[g], s) += v[g] * G.val[g][s];
    }
    return out;
}

template <class R>
CVec<R> unit(int n, int g, const Cx<R> &s = Cx<R>(R(1))) {
    CVec<R> v(2 * n);
    v[g] = s;
    return v;
}

template <class R>
void add_scaled(CVec<R> &acc, const R &w, const CVec<R> &v) {
    for (std::size_t g = 0; g < acc.size(); ++g) acc[g] += v[g] * w;
}

// ---- finite-difference stencils ----

struct Axis {
    int id;     // 0..n-1: x_{id+1}; n..2n-2: tangential xi; 2n-1: xi_n (real)
    int order;  // 1 or 2
};

template <class R>
struct StencilPoint {
    std::vector<int> offs;  // per axis, multiples of h
    R weight;
};

template <class R>
std::vector<StencilPoint<R>> stencil(const std::vector<Axis> &axes, const R &h) {
    std::vector<StencilPoint<R>> pts{{{}, R(1)}};
    for (const auto &ax : axes) {
        std::vector<std::pair<int, R>> w;
        if (ax.order == 1)
            w = {{-2, R(1) / (12 * h)}, {-1, R(-8) / (12 * h)}, {1, R(8) / (12 * h)}, {2, R(-1) / (12 * h)}};
        else if (ax.order == 2)
            w = {{-2, R(-1) / (12 * h * h)},
                 {-1, R(16) / (12 * h * h)},
                 {0, R(-30) / (12 * h * h)},
                 {1, R(16) / (12 * h * h)},
                 {2, R(-1) / (12 * h * h)}};
        else
            throw std::invalid_argument("stencil order");
        std::vector<StencilPoint<R>> next;
        for (const auto &p : pts)
            for (const auto &[o, wt] : w) {
                StencilPoint<R> q = p;
                q.offs.push_back(o);
                q.weight = p.weight * wt;
                next.push_back(std::move(q));
            }
        pts = std::move(next);
    }
    return pts;
}

// ---- the numeric model at and around x_0 ----

template <class R>
class Model {
public:
    Model(int n, const NumericAssignment &asg, Sigma0Form form) : n_(n), G_(n) {
        auto get = [&](Atom at) {
            auto it = asg.values.find(at);
            if (it == asg.values.end()) throw MissingAtom(at);
            return R(it->second);
        };
        hp_ = get(atom::hprime());
        A_.assign(n * n, R(0));
        DA_.assign(n * n * n, R(0));
        for (int h = 0; h < n; ++h)
            for (int p = 0; p < n; ++p) A_[h * n + p] = get(atom::a(h + 1, p + 1));
        for (int j = 0; j < n; ++j)
            for (int h = 0; h < n; ++h)
                for (int p = 0; p < n; ++p) DA_[(j * n + h) * n + p] = get(atom::da(j + 1, h + 1, p + 1));
        // sigma_0 at x_0
        sigma0_ = Mat<R>(G_.D);
        const Cx<R> q(hp_ / 4);
        for (int nu = 0; nu < n - 1; ++nu) {
            CVec<R> cj(2 * n);
            for (int h = 0; h < n; ++h)
                cj[h] = Cx<R>(form == Sigma0Form::Printed ? A_[nu * n + h] : A_[h * n + nu]);
            Mat<R> bb = left_mul(G_, cj, left_mul(G_, unit<R>(n, n + n - 1), dense(G_, unit<R>(n, n + nu))));
            Mat<R> cc = left_mul(G_, cj, left_mul(G_, unit<R>(n, n - 1), dense(G_, unit<R>(n, nu))));
            sigma0_.axpy(q, bb);
            sigma0_.axpy(-q, cc);
        }
        CVec<R> v(2 * n);
        for (int k = 0; k < n; ++k) v[n + k] = Cx<R>(get(atom::vc(k + 1)));
        sigma0_ += dense(G_, v);
        // pieces of sigma_2 of the cube
        for (int k = 0; k < n - 1; ++k) {
            Mat<R> t = left_mul(G_, unit<R>(n, n - 1), dense(G_, unit<R>(n, k))).scaled(Cx<R>(-hp_));
            t.axpy(Cx<R>(hp_), left_mul(G_, unit<R>(n, 2 * n - 1), dense(G_, unit<R>(n, n + k))));
            T_.push_back(std::move(t));
        }
        for (int la = 0; la < n; ++la) {
            Mat<R> s(G_.D);
            for (int al = 0; al < n; ++al) {
                CVec<R> nj(2 * n);
                for (int h = 0; h < n; ++h) nj[h] = Cx<R>(get(atom::nabj(al + 1, la + 1, h + 1)));
                s += left_mul(G_, jx0(al), dense(G_, nj));
            }
            S_.push_back(std::move(s));
        }
    }

    int n() const { return n_; }
    const Generators<R> &gens() const { return G_; }

    // c[J(dx_p)] at x_0
    CVec<R> jx0(int p) const {
        CVec<R> v(2 * n_);
        for (int h = 0; h < n_; ++h) v[h] = Cx<R>(A_[h * n_ + p]);
        return v;
    }

    R hx(const std::vector<R> &x) const { return R(1) + hp_ * x[n_ - 1]; }

    // c[J(xi)](x): a(x) linear in x, c(dx_h) scaled by sqrt(h(x_n)) for tangential h
    CVec<R> cjxi(const std::vector<R> &x, const std::vector<R> &xt, const Cx<R> &xn) const {
        CVec<R> v(2 * n_);
        const R s = rsqrt(hx(x));
        for (int h = 0; h < n_; ++h) {
            Cx<R> acc;
            for (int p = 0; p < n_; ++p) {
                R a = A_[h * n_ + p];
                for (int j = 0; j < n_; ++j) a += x[j] * DA_[(j * n_ + h) * n_ + p];
                acc += (p < n_ - 1 ? Cx<R>(xt[p]) : xn) * a;
            }
            v[h] = h < n_ - 1 ? acc * s : acc;
        }
        return v;
    }

    Cx<R> normsq(const std::vector<R> &x, const std::vector<R> &xt, const Cx<R> &xn) const {
        R t(0);
        for (const auto &e : xt) t += e * e;
        return Cx<R>(hx(x) * t) + xn * xn;
    }

    // leading inverse symbol: i c[J(xi)] / |xi|^{2 pw}, pw = 1 for D and 2 for D^3
    CVec<R> q_lead(Operator op, const std::vector<R> &x, const std::vector<R> &xt, const Cx<R> &xn) const {
        CVec<R> v = cjxi(x, xt, xn);
        Cx<R> ns = normsq(x, xt, xn);
        Cx<R> den = op == Operator::D ? ns : ns * ns;
        Cx<R> f = Cx<R>(R(0), R(1)) / den;
        for (auto &e : v) e = e * f;
        return v;
    }

    // d/dx_j of the leading inverse symbol at x_0
    CVec<R> dx_q_lead(Operator op, int j, const std::vector<R> &xt, const Cx<R> &xn, const R &h) const {
        CVec<R> out(2 * n_);
        for (const auto &p : stencil<R>({{j, 1}}, h)) {
            std::vector<R> x(n_, R(0));
            x[j] = h * p.offs[0];
            CVec<R> q = q_lead(op, x, xt, xn);
            for (int g = 0; g < 2 * n_; ++g) out[g] += q[g] * p.weight;
        }
        return out;
    }

    // d/dxi_j of the leading symbol at x_0 (j = n-1 is xi_n)
    CVec<R> dxi_p_lead(Operator op, int j, const std::vector<R> &xt, const Cx<R> &xn) const {
        CVec<R> cj = jx0(j);
        const Cx<R> i(R(0), R(1));
        if (op == Operator::D) {
            for (auto &e : cj) e = e * i;
            return cj;
        }
        std::vector<R> x0(n_, R(0));
        Cx<R> ns = normsq(x0, xt, xn);
        Cx<R> xj = j < n_ - 1 ? Cx<R>(xt[j]) : xn;
        CVec<R> cx = cjxi(x0, xt, xn);
        for (int g = 0; g < 2 * n_; ++g) cj[g] = i * (cj[g] * ns + cx[g] * xj * R(2));
        return cj;
    }

    Mat<R> sigma2_cube(const std::vector<R> &xt, const Cx<R> &xn) const {
        std::vector<R> x0(n_, R(0));
        R tang(0);
        for (const auto &e : xt) tang += e * e;
        CVec<R> t1 = jx0(n_ - 1);
        for (auto &e : t1) e = e * (hp_ * tang);
        Mat<R> inner = Mat<R>::identity(G_.D).scaled(xn * (-hp_ * (n_ - 1)));
        for (int k = 0; k < n_ - 1; ++k) inner.axpy(Cx<R>(xt[k]), T_[k]);
        for (int la = 0; la < n_; ++la) {
            Cx<R> xl = la < n_ - 1 ? Cx<R>(xt[la]) : xn;
            inner.axpy(xl * R(-2), S_[la]);
        }
        Mat<R> s = left_mul(G_, cjxi(x0, xt, xn), inner);
        s += dense(G_, t1);
        s.axpy(normsq(x0, xt, xn), sigma0_);
        return s;
    }

    // second inverse symbol from the composition recursion at x_0
    Mat<R> q_next(Operator op, const std::vector<R> &xt, const Cx<R> &xn, const R &h) const {
        std::vector<R> x0(n_, R(0));
        CVec<R> ql = q_lead(op, x0, xt, xn);
        Mat<R> p = op == Operator::D ? sigma0_ : sigma2_cube(xt, xn);
        Mat<R> inner = right_mul(G_, p, ql);
        const Cx<R> mi(R(0), R(-1));
        for (int j = 0; j < n_; ++j) {
            CVec<R> dq = dx_q_lead(op, j, xt, xn, h);
            CVec<R> dp = dxi_p_lead(op, j, xt, xn);
            inner.axpy(mi, left_mul(G_, dp, dense(G_, dq)));
        }
        return left_mul(G_, ql, inner).scaled(Cx<R>(R(-1)));
    }

private:
    int n_;
    Generators<R> G_;
    R hp_;
    std::vector<R> A_, DA_;
    Mat<R> sigma0_;
    std::vector<Mat<R>> T_, S_;
};

template <class R>
Cx<R> gauss_to_cx(const GaussQ &q) {
    return Cx<R>(q_to_real<R>(q.re), q_to_real<R>(q.im));
}

// Gauss nodes and weights for (1 - t^2)^{lambda - 1/2} on [-1, 1]; lambda = twice_lambda / 2.
template <class R>
std::vector<std::pair<R, R>> gauss_gegenbauer(int twice_lambda, int m) {
    const R lam = R(twice_lambda) / 2;
    // mu_0 = sqrt(pi) Gamma(lambda + 1/2) / Gamma(lambda + 1)
    const R mu0 = rsqrt(real_pi<R>()) * gamma_half<R>(twice_lambda + 1) / gamma_half<R>(twice_lambda + 2);
    std::vector<R> b(m + 1, R(0));
    for (int k = 1; k <= m; ++k)
        b[k] = rsqrt(R(k) * (R(k) + 2 * lam - 1) / (4 * (R(k) + lam) * (R(k) + lam - 1)));
    auto eval = [&](const R &t, std::vector<R> *all) {
        R pm(0), p = R(1) / rsqrt(mu0);
        if (all) all->assign(1, p);
        for (int k = 0; k < m; ++k) {
            R pn = (t * p - b[k] * pm) / b[k + 1];
            pm = p;
            p = pn;
            if (all && k + 1 < m) all->push_back(p);
        }
        return p;
    };
    // bracket the roots on a grid, then bisect
    std::vector<std::pair<R, R>> out;
    const int grid = 4000;
    R prev_t(-1), prev_v = eval(prev_t, nullptr);
    for (int g = 1; g <= grid; ++g) {
        R t = R(-1) + R(2 * g) / grid;
        R v = eval(t, nullptr);
        if ((prev_v < 0) != (v < 0)) {
            R lo = prev_t, hi = t, vlo = prev_v;
            for (int it = 0; it < 400; ++it) {
                R mid = (lo + hi) / 2;
                R vm = eval(mid, nullptr);
                if (vm == 0) {
                    lo = hi = mid;
                    break;
                }
                if ((vm < 0) == (vlo < 0)) {
                    lo = mid;
                    vlo = vm;
                } else {
                    hi = mid;
                }
                if (hi - lo < rabs(mid) * R(1e-300) + R(1e-300)) break;
            }
            R root = (lo + hi) / 2;
            std::vector<R> ps;
            eval(root, &ps);
            R s(0);
            for (const auto &p : ps) s += p * p;
            out.emplace_back(root, R(1) / s);
        }
        prev_t = t;
        prev_v = v;
    }
    if (static_cast<int>(out.size()) != m) throw std::runtime_error("Gauss-Gegenbauer root bracketing failed");
    return out;
}

}  // namespace

template <class R>
std::vector<std::pair<std::vector<R>, R>> sphere_rule(int d, int order) {
    if (d < 2) throw std::invalid_argument("sphere_rule: d >= 2");
    std::vector<std::pair<std::vector<R>, R>> out;
    if (d == 2) {
        const int m = 2 * order;
        const R two_pi = 2 * real_pi<R>();
        for (int k = 0; k < m; ++k) {
            R phi = two_pi * (R(k) + R(1) / 2) / m;
            out.push_back({{rcos(phi), rsin(phi)}, two_pi / m});
        }
        return out;
    }
    auto sub = sphere_rule<R>(d - 1, order);
    for (const auto &[t, w] : gauss_gegenbauer<R>(d - 2, order)) {
        const R s = rsqrt(R(1) - t * t);
        for (const auto &[eta, we] : sub) {
            std::vector<R> node{t};
            for (const auto &e : eta) node.push_back(s * e);
            out.push_back({std::move(node), w * we});
        }
    }
    return out;
}

std::pair<double, double> mc_sphere_moment(const std::vector<int> &exps, int d, std::uint64_t samples,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> x(d);
    double sum = 0, sum2 = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        double r2 = 0;
        for (int k = 0; k < d; ++k) {
            x[k] = nd(rng);
            r2 += x[k] * x[k];
        }
        const double inv = 1.0 / std::sqrt(r2);
        double v = 1;
        for (std::size_t k = 0; k < exps.size(); ++k)
            for (int e = 0; e < exps[k]; ++e) v *= x[k] * inv;
        sum += v;
        sum2 += v * v;
    }
    const double vol = 2 * std::pow(M_PI, d / 2.0) / std::tgamma(d / 2.0);
    const double mean = sum / samples;
    const double var = std::max(0.0, sum2 / samples - mean * mean);
    return {vol * mean, vol * std::sqrt(var / samples)};
}

template <class R>
Cx<R> oracle_pi_plus(const std::function<Cx<R>(const Cx<R> &)> &f, const R &xi, int points) {
    const R rho = R(1) / 4;
    const R two_pi = 2 * real_pi<R>();
    Cx<R> acc;
    for (int t = 0; t < points; ++t) {
        const Cx<R> e = cis<R>(two_pi * t / points);
        const Cx<R> w = Cx<R>(R(0), R(1)) + e * rho;
        const Cx<R> dw = Cx<R>(R(0), R(1)) * e * (rho * two_pi / points);
        acc += f(w) * dw / (Cx<R>(xi) - w);
    }
    return acc / Cx<R>(R(0), two_pi);
}

template <class R>
Cx<R> oracle_trace(const AbstractWord &w, int n, const NumericAssignment &a) {
    Generators<R> G(n);
    Assignment<R> asg = a.as<R>();
    Mat<R> m = Mat<R>::identity(G.D);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        CVec<R> v(2 * n);
        for (int h = 1; h <= n; ++h) {
            auto c = vec_component(letter_vec(*it), h, n);
            if (!c) throw std::invalid_argument("opaque vector symbol in oracle trace");
            v[(letter_is_bar(*it) ? n : 0) + h - 1] = scalar_eval_numeric<R>(*c, asg, real_pi<R>());
        }
        m = left_mul(G, v, m);
    }
    return trace(m);
}

template <class R>
Cx<R> oracle_trace(const CliffordElement &e, const NumericAssignment &a) {
    const int n = e.dim();
    Generators<R> G(n);
    Assignment<R> asg = a.as<R>();
    Cx<R> total;
    for (const auto &[w, s] : e.terms()) {
        Mat<R> m = Mat<R>::identity(G.D);
        for (int k = n - 1; k >= 0; --k)
            if (w.plain >> k & 1) m = left_mul(G, unit<R>(n, k), m);
        for (int k = n - 1; k >= 0; --k)
            if (w.bar >> k & 1) m = left_mul(G, unit<R>(n, n + k), m);
        total += scalar_eval_numeric<R>(s, asg, real_pi<R>()) * trace(m);
    }
    return total;
}

template <class R>
Cx<R> oracle_case(const CaseSpec &c, int n, const NumericAssignment &a, const OracleOptions &opt,
                  Sigma0Form form) {
    if (n != 4 && n != 6) throw std::invalid_argument("oracle: dimension must be 4 or 6");
    if (c.alpha > 1 || c.j > 1 || c.k > 1) throw std::invalid_argument("oracle: unsupported derivative orders");
    Model<R> model(n, a, form);
    const auto &G = model.gens();
    const Operator op_l = n == 4 ? Operator::D : Operator::D3;
    const int lead_l = n == 4 ? -1 : -3;
    if (!(c.r == -1 || c.r == -2) || !(c.l == lead_l || c.l == lead_l - 1))
        throw std::invalid_argument("oracle: symbol order not available");
    const R h = fd_step<R>(opt.digits);
    const R pi = real_pi<R>();
    const R rho = R(1) / 4;
    const int N = opt.contour_points, M = opt.xi_points;
    const Cx<R> I(R(0), R(1));

    // contour nodes and kernel factors
    std::vector<Cx<R>> wn(N), dw(N);
    for (int t = 0; t < N; ++t) {
        const Cx<R> e = cis<R>(2 * pi * t / N);
        wn[t] = I + e * rho;
        dw[t] = I * e * (rho * 2 * pi / N);
    }
    std::vector<R> xs(M), jac(M);
    for (int q = 0; q < M; ++q) {
        const R th = -pi / 2 + (R(q) + R(1) / 2) * pi / M;
        xs[q] = rtan(th);
        jac[q] = (R(1) + xs[q] * xs[q]) * pi / M;
    }
    // kernel K[q][t] = (1/2 pi i) d^k/dxi (xi - w)^{-1} dw
    std::vector<std::vector<Cx<R>>> K(M, std::vector<Cx<R>>(N));
    for (int q = 0; q < M; ++q)
        for (int t = 0; t < N; ++t) {
            Cx<R> d = Cx<R>(xs[q]) - wn[t];
            Cx<R> v = dw[t] / d;
            if (c.k == 1) v = -(v / d);
            K[q][t] = v / Cx<R>(R(0), 2 * pi);
        }

    auto rule = sphere_rule<R>(n - 1, opt.sphere_order);
    const int dirs = c.alpha ? n - 1 : 1;
    Cx<R> total;
    for (const auto &[xt0, ws] : rule) {
        for (int dir = 0; dir < dirs; ++dir) {
            // A on the contour: d^j_{x_n} d^alpha_{xi'} q_r
            std::vector<Axis> ax_a;
            if (c.j) ax_a.push_back({n - 1, 1});
            if (c.alpha) ax_a.push_back({n + dir, 1});
            auto st_a = stencil<R>(ax_a, h);
            std::vector<Mat<R>> Aw(N, Mat<R>(G.D));
            for (int t = 0; t < N; ++t) {
                CVec<R> lead(2 * n);
                for (const auto &p : st_a) {
                    std::vector<R> x(n, R(0)), xt = xt0;
                    for (std::size_t k = 0; k < ax_a.size(); ++k) {
                        const int id = ax_a[k].id;
                        if (id < n)
                            x[id] += h * p.offs[k];
                        else
                            xt[id - n] += h * p.offs[k];
                    }
                    if (c.r == -1)
                        add_scaled(lead, p.weight, model.q_lead(Operator::D, x, xt, wn[t]));
                    else
                        Aw[t].axpy(Cx<R>(p.weight), model.q_next(Operator::D, xt, wn[t], h));
                }
                if (c.r == -1) Aw[t] = dense(G, lead);
            }
            // B on the real line: d^alpha_{x'} d^k_{x_n} d^{j+1}_{xi_n} q_l
            std::vector<Axis> ax_b;
            if (c.alpha) ax_b.push_back({dir, 1});
            if (c.k) ax_b.push_back({n - 1, 1});
            ax_b.push_back({2 * n - 1, c.j + 1});
            for (int q = 0; q < M; ++q) {
                const R hx = h * (R(1) + rabs(xs[q]));  // relative step in xi_n
                Mat<R> B(G.D);
                CVec<R> lead(2 * n);
                for (const auto &p : stencil<R>(ax_b, h)) {
                    std::vector<R> x(n, R(0));
                    R xn = xs[q];
                    R wt = p.weight;
                    for (std::size_t k = 0; k < ax_b.size(); ++k) {
                        const int id = ax_b[k].id;
                        if (id < n) {
                            x[id] += h * p.offs[k];
                        } else {
                            xn += hx * p.offs[k];
                            // rescale the xi_n stencil weight from h to hx
                            for (int o = 0; o < ax_b[k].order; ++o) wt = wt * h / hx;
                        }
                    }
                    if (c.l == lead_l)
                        add_scaled(lead, wt, model.q_lead(op_l, x, xt0, Cx<R>(xn)));
                    else
                        B.axpy(Cx<R>(wt), model.q_next(op_l, xt0, Cx<R>(xn), h));
                }
                if (c.l == lead_l) B = dense(G, lead);
                Mat<R> PA(G.D);
                for (int t = 0; t < N; ++t) PA.axpy(K[q][t], Aw[t]);
                total += trace_prod(PA, B) * (ws * jac[q]);
            }
        }
    }
    return total * gauss_to_cx<R>(c.prefactor);
}

template <class R>
Cx<R> oracle_symbol_trace(const SymbolExpr &s, const NumericAssignment &a, const std::vector<R> &xi_t,
                          const Cx<R> &xi_n, const AbstractWord &probe) {
    const int n = s.dim();
    Generators<R> G(n);
    Assignment<R> asg = a.as<R>();
    auto letter_vec_num = [&](Letter l) {
        CVec<R> v(2 * n);
        for (int h = 1; h <= n; ++h) {
            auto c = vec_component(letter_vec(l), h, n);
            if (!c) throw std::invalid_argument("opaque vector symbol");
            v[(letter_is_bar(l) ? n : 0) + h - 1] = scalar_eval_numeric<R>(*c, asg, real_pi<R>());
        }
        return v;
    };
    Mat<R> pm = Mat<R>::identity(G.D);
    for (auto it = probe.rbegin(); it != probe.rend(); ++it) pm = left_mul(G, letter_vec_num(*it), pm);
    R tang(0);
    for (const auto &e : xi_t) tang += e * e;
    const Cx<R> ns = Cx<R>(tang) + xi_n * xi_n;
    Cx<R> total;
    for (const auto &[k, coef] : s.terms()) {
        Cx<R> f = scalar_eval_numeric<R>(coef, asg, real_pi<R>());
        for (int i = 0; i < n - 1; ++i)
            for (int e = 0; e < k.xe[i]; ++e) f = f * Cx<R>(xi_t[i]);
        for (int e = 0; e < k.xin; ++e) f = f * xi_n;
        for (int e = 0; e < std::abs(k.m); ++e) f = k.m > 0 ? f * ns : f / ns;
        Mat<R> m = pm;
        for (Letter l : k.word) m = right_mul(G, m, letter_vec_num(l));
        total += f * trace(m);
    }
    return total;
}

bool oracle_agrees(double sr, double si, double nr, double ni, double *rel) {
    const double diff = std::hypot(sr - nr, si - ni);
    const double mag = std::hypot(sr, si);
    const double r = mag > 0 ? diff / mag : diff;
    if (rel) *rel = r;
    if (mag < 1e-3) return diff < 1e-9;
    return r < 1e-6;
}

VerificationRecord verify_case(const BoundaryEngine &engine, const CaseSpec &c, std::uint64_t seed,
                               const OracleOptions &opt) {
    return verify_case(engine.case_raw(c), engine.dim(), c, seed, opt);
}

VerificationRecord verify_case(const Scalar &raw, int n, const CaseSpec &c, std::uint64_t seed,
                               const OracleOptions &opt) {
    NumericAssignment a = make_assignment(n, seed);
    VerificationRecord rec;
    rec.case_label = c.label;
    rec.dim = n;
    rec.seed = seed;
    if (opt.digits <= 16) {
        Cx<double> s = scalar_eval_numeric<double>(raw, a.as<double>(), real_pi<double>());
        Cx<double> v = oracle_case<double>(c, n, a, opt);
        rec.symbolic_re = s.re;
        rec.symbolic_im = s.im;
        rec.numeric_re = v.re;
        rec.numeric_im = v.im;
    } else {
        set_big_digits(opt.digits);
        Cx<BigFloat> s = scalar_eval_numeric<BigFloat>(raw, a.as<BigFloat>(), real_pi<BigFloat>());
        Cx<BigFloat> v = oracle_case<BigFloat>(c, n, a, opt);
        rec.symbolic_re = to_double(s.re);
        rec.symbolic_im = to_double(s.im);
        rec.numeric_re = to_double(v.re);
        rec.numeric_im = to_double(v.im);
    }
    rec.pass = oracle_agrees(rec.symbolic_re, rec.symbolic_im, rec.numeric_re, rec.numeric_im, &rec.rel_err);
    return rec;
}

#define WRES_INSTANTIATE(R)                                                                                  \
    template std::vector<std::pair<std::vector<R>, R>> sphere_rule<R>(int, int);                             \
    template Cx<R> oracle_pi_plus<R>(const std::function<Cx<R>(const Cx<R> &)> &, const R &, int);           \
    template Cx<R> oracle_trace<R>(const AbstractWord &, int, const NumericAssignment &);                    \
    template Cx<R> oracle_trace<R>(const CliffordElement &, const NumericAssignment &);                      \
    template Cx<R> oracle_case<R>(const CaseSpec &, int, const NumericAssignment &, const OracleOptions &,   \
                                  Sigma0Form);                                                               \
    template Cx<R> oracle_symbol_trace<R>(const SymbolExpr &, const NumericAssignment &, const std::vector<R> &, \
                                          const Cx<R> &, const AbstractWord &);

WRES_INSTANTIATE(double)
WRES_INSTANTIATE(BigFloat)

}  // namespace wres
