#pragma once

#include <map>
#include <string>
#include <vector>

#include "wres/scalar.hpp"
#include "wres/symbol_calculus.hpp"

namespace wres {

struct CaseSpec {
    std::string label;  // a1, a2, a3, b, c
    int r = -1, l = -1, k = 0, j = 0, alpha = 0;
    GaussQ prefactor;  // (-i)^{|alpha|+j+k+1} / (alpha! (j+k+1)!)
};

// Orders of the two leading inverse symbols: (-1,-1) for n=4, (-1,-3) for n=6.
std::vector<CaseSpec> enumerate_cases(int n, int r_lead, int l_lead);
std::vector<CaseSpec> enumerate_cases(int n);

// Atom-monomial -> pi-polynomial, normalized by tr[id] and the sphere volume.
struct CoefficientTable {
    int dim = 4;
    std::string label;
    std::map<Monomial, Scalar> entries;

    long trace_factor() const { return 1L << dim; }
    Scalar volume() const;

    // raw = tr[id] * Vol(S^{n-2}) * sum entries
    static CoefficientTable from_raw(const Scalar &raw, int dim, const std::string &label);
    Scalar to_raw() const;
    Scalar normalized_sum() const;

    CoefficientTable &operator+=(const CoefficientTable &o);
    bool is_real() const;
    bool empty() const { return entries.empty(); }
};

struct TableDiff {
    struct Mismatch {
        Monomial mono;
        Scalar computed, expected;
    };
    std::size_t matches = 0;
    std::vector<Mismatch> mismatches;
    std::vector<std::pair<Monomial, Scalar>> only_computed, only_expected;
    bool empty() const { return mismatches.empty() && only_computed.empty() && only_expected.empty(); }
};

TableDiff compare_tables(const CoefficientTable &computed, const CoefficientTable &expected);

struct CaseStats {
    std::size_t a_terms = 0, b_terms = 0, pairs = 0, odd_discarded = 0, words = 0;
};

class BoundaryEngine {
public:
    explicit BoundaryEngine(int n, Sigma0Form form = Sigma0Form::Printed);

    int dim() const { return n_; }
    // q-symbols of the two factors: qr[0] order r_lead, qr[1] one lower; same for ql.
    const std::vector<SymbolExpr> &qr() const { return qr_; }
    const std::vector<SymbolExpr> &ql() const { return ql_; }

    // The two symbol factors of a case before pi+ / evaluation, for a fixed tangential alpha.
    SymbolExpr factor_a(const CaseSpec &c, int alpha_dir) const;
    SymbolExpr factor_b(const CaseSpec &c, int alpha_dir) const;

    // Raw value: prefactor * int tr[...] dxi_n sigma(xi'); the dx' is implicit.
    Scalar case_raw(const CaseSpec &c, CaseStats *stats = nullptr) const;
    CoefficientTable compute_case(const CaseSpec &c, CaseStats *stats = nullptr) const;
    CoefficientTable total_boundary() const;

private:
    int n_;
    std::vector<SymbolExpr> qr_, ql_;
    int r_lead_, l_lead_;
    const SymbolExpr &q_for(const std::vector<SymbolExpr> &qs, int lead, int order) const;
};

// Integral over the real line of pi+[xi^ka (1+xi^2)^ma] * xi^kb (1+xi^2)^mb, as a multiple of pi.
GaussQ profile_integral(int ka, int ma, int kb, int mb);

}  // namespace wres
