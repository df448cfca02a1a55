#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "wres/boundary_engine.hpp"
#include "wres/clifford_abstract.hpp"
#include "wres/numeric.hpp"
#include "wres/scalar.hpp"
#include "wres/symbol_calculus.hpp"

namespace wres {

// Geometric atoms drawn uniformly from [-1, 1] with mt19937_64, in a fixed order.
struct NumericAssignment {
    std::uint64_t seed = 0;
    int dim = 4;
    std::map<Atom, double> values;

    template <class R>
    Assignment<R> as() const {
        Assignment<R> a;
        for (const auto &[k, v] : values) a.emplace(k, Cx<R>(R(v)));
        return a;
    }
};

NumericAssignment make_assignment(int n, std::uint64_t seed);

struct OracleOptions {
    int contour_points = 32;  // trapezoid nodes on |w - i| = 1/4
    int xi_points = 16;       // midpoint nodes in theta, xi_n = tan(theta)
    int sphere_order = 4;     // Gauss nodes per polar angle
    unsigned digits = 16;     // 16 selects double, anything larger mpfr
};

// Product Gauss-Gegenbauer rule on S^{d-1} in R^d: (node, weight) pairs.
template <class R>
std::vector<std::pair<std::vector<R>, R>> sphere_rule(int d, int order);

// Monte Carlo estimate of a sphere moment: (estimate, standard error).
std::pair<double, double> mc_sphere_moment(const std::vector<int> &exps, int d, std::uint64_t samples,
                                           std::uint64_t seed);

// pi+ of f at real xi by a trapezoid contour around +i.
template <class R>
Cx<R> oracle_pi_plus(const std::function<Cx<R>(const Cx<R> &)> &f, const R &xi, int points);

// Trace of the matrix representation of an abstract word with frame components from the assignment.
template <class R>
Cx<R> oracle_trace(const AbstractWord &w, int n, const NumericAssignment &a);

// Trace of the explicit matrix of a frame element.
template <class R>
Cx<R> oracle_trace(const CliffordElement &e, const NumericAssignment &a);

// Numeric value of one boundary case at x_0 (the dx' density).
template <class R>
Cx<R> oracle_case(const CaseSpec &c, int n, const NumericAssignment &a, const OracleOptions &opt = {},
                  Sigma0Form form = Sigma0Form::Printed);

// Matrix-valued evaluation of a symbol at x_0 and the given covariable (for derivative checks).
template <class R>
Cx<R> oracle_symbol_trace(const SymbolExpr &s, const NumericAssignment &a, const std::vector<R> &xi_t,
                          const Cx<R> &xi_n, const AbstractWord &probe);

struct VerificationRecord {
    std::string case_label;
    int dim = 4;
    std::uint64_t seed = 0;
    double symbolic_re = 0, symbolic_im = 0, numeric_re = 0, numeric_im = 0, rel_err = 0;
    bool pass = false;
};

// Relative error rule: 1e-6 relative, or 1e-9 absolute below 1e-3.
bool oracle_agrees(double sym_re, double sym_im, double num_re, double num_im, double *rel = nullptr);

// Symbolic case value at the assignment vs the oracle.
VerificationRecord verify_case(const BoundaryEngine &engine, const CaseSpec &c, std::uint64_t seed,
                               const OracleOptions &opt = {});
// Same, with the symbolic case value already computed (raw = engine.case_raw(c)).
VerificationRecord verify_case(const Scalar &raw, int n, const CaseSpec &c, std::uint64_t seed,
                               const OracleOptions &opt = {});

}  // namespace wres
