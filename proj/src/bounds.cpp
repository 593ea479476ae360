#include "fjf/bounds.hpp"

#include <string>

#include "fjf/errors.hpp"

namespace fjf {

namespace {

// Enclosures used by the directed-rounding evaluation.  Three decimals are
// enough for every consumer of the bound; pi and sqrt(3) only ever appear
// with positive exponent, so lower enclosures suffice.
const Rational PI_LO = rational(3141, 1000);
const Rational SQRT3_LO = rational(1732, 1000);

// Round a positive value down to the fixed output grid.  Keeps the bound
// certified while avoiding the huge denominators bisection produces, and
// preserves monotonicity under refinement.
Rational round_down(const Rational& x) {
    const long grid = 1000000;
    return rational(floor_rational(x * grid), Integer(grid));
}

// Rational x^{1/n} enclosure by bisection; x >= 1.  `lower` selects which end
// of the bracket is returned.  Pure directed rounding: more steps tighten the
// bracket monotonically.
Rational nth_root(const Rational& x, unsigned long n, bool lower, int steps) {
    Rational lo(1), hi = x < 1 ? Rational(1) : x;
    if (x < 1)
        throw Error("nth_root expects x >= 1");
    for (int i = 0; i < steps; ++i) {
        Rational mid = (lo + hi) / 2;
        if (pow_rational(mid, n) <= x)
            lo = mid;
        else
            hi = mid;
    }
    return lower ? lo : hi;
}

} // namespace

Rational eichler_blichfeldt(int genus, int root_steps) {
    if (genus < 1)
        throw Error("genus must be positive");
    unsigned long g = static_cast<unsigned long>(genus);
    if (genus % 2 == 0) {
        // Gamma(2 + g/2) = (g/2 + 1)! is an integer F; the bound is
        // (sqrt3 pi^3 / 2) / (F^2)^{1/h} with h = g/2.
        unsigned long h = g / 2;
        Integer f = factorial(h + 1);
        Rational f_pow = Rational(f * f);
        Rational root_hi = nth_root(f_pow, h, false, root_steps);
        return round_down(SQRT3_LO * pow_rational(PI_LO, 3) / (2 * root_hi));
    }
    // Odd g: Gamma(2 + g/2) = c sqrt(pi) with c = (2n)! / (4^n n!) for
    // n = (g + 3) / 2, so the bound is (sqrt3 / 2) (c^4)^{-1/g} pi^{(3g-2)/g}.
    unsigned long n = (g + 3) / 2;
    Integer four_pow_n;
    mpz_ui_pow_ui(four_pow_n.get_mpz_t(), 4, n);
    Rational c = rational(factorial(2 * n), four_pow_n * factorial(n));
    Rational c4 = pow_rational(c, 4);
    Rational c_root_hi = nth_root(c4 < 1 ? 1 / c4 : c4, g, c4 < 1, root_steps);
    // If c4 < 1 we computed (1/c4)^{1/g} from below, whose reciprocal is an
    // upper bound for c4^{1/g}; fold both cases into `denom_hi`.
    Rational denom_hi = c4 < 1 ? 1 / c_root_hi : c_root_hi;
    Rational pi_pow_lo = nth_root(pow_rational(PI_LO, 3 * g - 2), g, true, root_steps);
    return round_down(SQRT3_LO * pi_pow_lo / (2 * denom_hi));
}

SlopeValue slope(int genus) {
    if (genus < 1)
        throw Error("genus must be positive");
    SlopeValue s;
    s.genus = genus;
    switch (genus) {
    case 1: s.exact = Rational(12); break;
    case 2: s.exact = Rational(10); break;
    case 3: s.exact = Rational(9); break;
    case 4: s.exact = Rational(8); break;
    case 5: s.exact = rational(54, 7); break;
    default: break; // only the Eichler-Blichfeldt bound is known
    }
    s.lower_bound = eichler_blichfeldt(genus);
    return s;
}

long truncation_precision(int weight, int genus) {
    if (weight < 0)
        throw Error("weight must be nonnegative");
    SlopeValue s = slope(genus);
    Rational rho = s.exact ? *s.exact : s.lower_bound;
    Rational threshold = Rational(4 * weight) / (3 * rho);
    Integer b = floor_rational(threshold);
    if (!b.fits_slong_p())
        throw Error("truncation precision out of range");
    return b.get_si();
}

} // namespace fjf
