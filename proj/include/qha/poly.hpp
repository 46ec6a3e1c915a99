/* Univariate polynomial helpers backing the module splitter: gcd machinery
 * and enough root finding to break a minimal polynomial into pairwise
 * coprime pieces. */
#pragma once

#include <cstdint>
#include <vector>

#include "qha/field.hpp"
#include "qha/matrix.hpp"

namespace qha {

/* Coefficients low degree first; normalized so the leading coefficient is
 * nonzero (empty vector = zero polynomial). */
using Poly = std::vector<Scalar>;

Poly poly_trim(const Field& f, Poly p);
int poly_deg(const Poly& p);  // -1 for zero
Poly poly_monic(const Field& f, const Poly& p);
Poly poly_add(const Field& f, const Poly& a, const Poly& b);
Poly poly_sub(const Field& f, const Poly& a, const Poly& b);
Poly poly_mul(const Field& f, const Poly& a, const Poly& b);
/* quotient-remainder by a nonzero divisor */
std::pair<Poly, Poly> poly_divmod(const Field& f, const Poly& a, const Poly& b);
Poly poly_gcd(const Field& f, Poly a, Poly b);  // monic gcd
Poly poly_derivative(const Field& f, const Poly& p);
Scalar poly_eval(const Field& f, const Poly& p, const Scalar& x);
/* x^e mod m */
Poly poly_powmod_x(const Field& f, std::uint64_t e, const Poly& m);

/* Minimal polynomial of the square matrix op (monic). */
Poly minimal_polynomial(const Matrix& op);

struct PolySplit {
    /* pairwise coprime monic factors whose product is the input */
    std::vector<Poly> factors;
    /* true when the input is (x - lambda)^e */
    bool primary_linear = false;
    Scalar lambda;
    /* true when some factor could not be separated further but is known to
     * be a power of a single irreducible of degree > 1 or could not be
     * analyzed at all (signals "field too small" to callers that need a
     * full split into primary-linear pieces) */
    bool incomplete = false;
};

/* Breaks p into pairwise coprime factors, separating distinct eigenvalues.
 * Uses only deterministic steps plus a seeded search for small fields. */
PolySplit poly_coprime_split(const Field& f, const Poly& p, std::uint64_t seed);

}  // namespace qha
