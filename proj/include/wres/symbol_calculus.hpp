#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wres/clifford_abstract.hpp"
#include "wres/scalar.hpp"
#include "wres/sphere_moments.hpp"
#include "wres/xi_rational.hpp"

namespace wres {

struct DerivativeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// xi'^xe * xi_n^xin * |xi|^{2m} * word
struct SymKey {
    std::array<std::uint8_t, 15> xe{};  // xe[k] is the exponent of xi_{k+1}, k < n-1
    int xin = 0;
    int m = 0;
    AbstractWord word;

    int homogeneity() const;
    friend bool operator<(const SymKey &a, const SymKey &b);
    friend bool operator==(const SymKey &a, const SymKey &b);
};

class SymbolExpr {
public:
    explicit SymbolExpr(int n = 4) : n_(n) {}

    static SymbolExpr constant(int n, const Scalar &s);
    static SymbolExpr xi(int n, int i);  // xi_i, i = n gives xi_n
    static SymbolExpr normsq(int n, int m = 1);
    static SymbolExpr letter(int n, Letter l);
    // c[J(xi)] = sum_p xi_p c(J(dx_p))
    static SymbolExpr c_jxi(int n);

    int dim() const { return n_; }
    const std::map<SymKey, Scalar> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // False once a tangential xi-derivative or a frozen x_0 transcription is involved.
    bool x_derivable() const { return x_derivable_; }
    void freeze() { x_derivable_ = false; }

    // Common homogeneity degree of all terms; nullopt if empty or mixed.
    std::optional<int> degree() const;

    void add(const SymKey &k, const Scalar &c);
    SymbolExpr &operator+=(const SymbolExpr &o);
    friend SymbolExpr operator+(SymbolExpr a, const SymbolExpr &b) { return a += b; }
    friend SymbolExpr operator-(SymbolExpr a, const SymbolExpr &b) { return a += b * Scalar(-1); }
    friend SymbolExpr operator*(const SymbolExpr &a, const SymbolExpr &b);
    friend SymbolExpr operator*(const SymbolExpr &a, const Scalar &s);
    friend bool operator==(const SymbolExpr &a, const SymbolExpr &b) { return a.terms_ == b.terms_; }

    // One term per line: coef * xi(i)^k * xin^p * normsq^m * word
    std::string to_string() const;

private:
    int n_;
    bool x_derivable_ = true;
    std::map<SymKey, Scalar> terms_;
};

enum class VarKind { XiN, XiT, X };
struct Var {
    VarKind kind;
    int index = 0;  // tangential xi index or x index
    static Var xi_n() { return {VarKind::XiN, 0}; }
    static Var xi(int i) { return {VarKind::XiT, i}; }
    static Var x(int j) { return {VarKind::X, j}; }
};

// d/dx_j of a scalar coefficient at x_0.
Scalar scalar_deriv_x(const Scalar &s, int j);

SymbolExpr symbol_deriv(const SymbolExpr &s, Var v);

enum class Operator { D, D3 };

// Index convention of the c[J(.)] factor in the spin-connection term of sigma_0.
//   Printed: sum_eta a_nu^eta c(dx_eta)   (as displayed at x_0)
//   Derived: c[J(dx_nu)] = sum_h a_h^nu c(dx_h)
enum class Sigma0Form { Printed, Derived };

SymbolExpr build_sigma(Operator op, int order, int n, Sigma0Form form = Sigma0Form::Printed);

// q-symbols, leading first; depth is the number returned (1 or 2).
std::vector<SymbolExpr> invert_symbol(const std::vector<SymbolExpr> &p, int depth);

// Restriction to |xi'| = 1: |xi|^2 becomes 1 + xi_n^2.
struct BoundaryKey {
    std::array<std::uint8_t, 15> xe{};
    AbstractWord word;
    friend bool operator<(const BoundaryKey &a, const BoundaryKey &b) {
        return a.xe != b.xe ? a.xe < b.xe : a.word < b.word;
    }
};
using BoundaryForm = std::map<BoundaryKey, RationalXi<Scalar>>;

BoundaryForm evaluate_boundary(const SymbolExpr &s);

}  // namespace wres
