#pragma once

#include <map>
#include <string>
#include <vector>

#include "wres/clifford_abstract.hpp"
#include "wres/scalar.hpp"

namespace wres {

// Linear combination of abstract Clifford words with scalar coefficients.
struct EndomorphismExpr {
    int dim = 4;
    std::vector<std::pair<AbstractWord, Scalar>> terms;
    std::map<std::string, int> group_sizes;  // group name -> number of words
};

// E at x_0 for the deformed operator, one group per displayed summand.
EndomorphismExpr build_endomorphism(int n);

// R(Je_i, Je_j, e_k, e_l) vanishes when i = j or k = l.
Scalar reduce_curvature_symmetries(const Scalar &s);

// tr(-s/6 + E): 2^n times the bracketed integrand, in GPair / ScalS / VNormSq atoms.
Scalar interior_integrand(int n);

struct WresInterior {
    Scalar prefactor;  // (n-2) pi^{n/2} / (n/2 - 1)!
    Scalar integrand;  // interior_integrand(n)
    Scalar assembled() const { return prefactor * integrand; }
};

WresInterior wres_without_boundary(int n);

// Uses g(J e_a, J e_b) = delta_ab, the only identity needed to reach the displayed group form.
Scalar apply_j_isometry(const Scalar &s);

}  // namespace wres
