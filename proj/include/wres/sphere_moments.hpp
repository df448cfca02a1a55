#pragma once

#include <vector>

#include "wres/scalar.hpp"

namespace wres {

// exps[k] is the exponent of xi_{k+1}; only tangential variables.
using MonomialExponents = std::vector<int>;

// Vol(S^{d-1}) as an exact rational multiple of a power of pi.
Scalar sphere_volume(int d);

// Integral of the monomial over the unit sphere in R^d.
Scalar sphere_moment(const MonomialExponents &m, int d);

}  // namespace wres
