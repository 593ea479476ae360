#ifndef FJF_BOUNDS_HPP
#define FJF_BOUNDS_HPP

#include <optional>

#include "fjf/rational.hpp"

namespace fjf {

// Minimal slope of nonzero scalar Siegel modular forms of genus g, i.e. the
// infimum of weight / vanishing order.  Exact values are known for g <= 5;
// beyond that only the certified lower bound is available.
struct SlopeValue {
    int genus = 1;
    std::optional<Rational> exact;
    Rational lower_bound;
};

SlopeValue slope(int genus);

// Certified rational lower bound for (sqrt(3) pi^3 / 2) Gamma(2 + g/2)^{-4/g},
// the Eichler-Blichfeldt slope bound.  Gamma at half-integers is expanded in
// closed form (factorials and powers of sqrt(pi)), so only pi, sqrt(3) and
// integer roots need directed-rounding enclosures.  `root_steps` controls the
// bisection depth of the root enclosures; more steps can only raise the bound.
Rational eichler_blichfeldt(int genus, int root_steps = 64);

// Smallest B such that every index m > B kills the relevant space of Jacobi
// forms with maximal vanishing (m > 4k / (3 rho_g)), making the projection of
// symmetric series to precision-B polynomials injective.  Uses the exact
// slope when known, otherwise the certified lower bound, which can only
// enlarge B.
long truncation_precision(int weight, int genus);

} // namespace fjf

#endif
