#include "wres/sphere_moments.hpp"

#include <stdexcept>

namespace wres {

Scalar sphere_volume(int d) {
    if (d < 2) throw std::invalid_argument("sphere_volume: d must be >= 2");
    // 2 pi^{d/2} / Gamma(d/2)
    if (d % 2 == 0) {
        mpz_class fact = 1;
        for (int k = 2; k < d / 2; ++k) fact *= k;
        return Scalar::monomial(Monomial::pi_pow(d / 2), GaussQ(Q(2, fact)));
    }
    // Gamma(d/2) = (d-2)!! sqrt(pi) / 2^{(d-1)/2}
    mpz_class dfact = 1;
    for (int k = d - 2; k > 1; k -= 2) dfact *= k;
    mpz_class pow2 = mpz_class(1) << ((d - 1) / 2);
    Q c(2 * pow2, dfact);
    c.canonicalize();
    return Scalar::monomial(Monomial::pi_pow((d - 1) / 2), GaussQ(c));
}

Scalar sphere_moment(const MonomialExponents &m, int d) {
    if (static_cast<int>(m.size()) > d) throw std::invalid_argument("sphere_moment: exponent index exceeds d");
    int total = 0;
    mpz_class num = 1;
    for (int e : m) {
        if (e < 0) throw std::invalid_argument("sphere_moment: negative exponent");
        if (e & 1) return Scalar();
        for (int k = e - 1; k > 1; k -= 2) num *= k;
        total += e;
    }
    mpz_class den = 1;
    for (int k = 1; k <= total / 2; ++k) den *= d + 2 * k - 2;
    Q c(num, den);
    c.canonicalize();
    return sphere_volume(d) * GaussQ(c);
}

}  // namespace wres
