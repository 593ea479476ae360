#ifndef FJF_QEXP_HPP
#define FJF_QEXP_HPP

#include <map>
#include <vector>

#include "fjf/rational.hpp"

namespace fjf {

// Truncated q-expansion with exact rational coefficients.  Exponents live on
// the grid (1/scale) Z: a stored key e means the monomial q^{e/scale}.  The
// default scale 1 covers elliptic modular forms; theta decomposition
// components use scale 4m.  `trunc` is the largest storable key, so nothing
// beyond q^{trunc/scale} is represented and products truncate to the smaller
// bound.  Weight is metadata only.
struct QExpansion {
    int weight = 0;
    long scale = 1;
    long trunc = 0;
    std::map<long, Rational> coeff; // nonzero entries only

    QExpansion() = default;
    QExpansion(int weight_, long scale_, long trunc_) : weight(weight_), scale(scale_), trunc(trunc_) {}

    bool is_zero() const { return coeff.empty(); }

    // Coefficient of q^{key/scale}; zero if absent, PrecisionExceeded beyond trunc.
    Rational at(long key) const;

    void set(long key, const Rational& value);
    void add_to(long key, const Rational& value);

    friend bool operator==(const QExpansion&, const QExpansion&) = default;
};

QExpansion operator+(const QExpansion& f, const QExpansion& g);
QExpansion operator-(const QExpansion& f, const QExpansion& g);
QExpansion operator*(const QExpansion& f, const QExpansion& g); // Cauchy product, weights add
QExpansion operator*(const Rational& c, const QExpansion& f);

// Multiplicative inverse of a series with nonzero constant term, to f.trunc.
QExpansion inverse(const QExpansion& f);

QExpansion pow(const QExpansion& f, unsigned long e);

// Normalized Eisenstein series E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n.
// Only k = 4 and k = 6 are provided; throws UnsupportedWeight otherwise.
QExpansion eisenstein(int k, long trunc);

// Discriminant cusp form Delta = q prod (1 - q^n)^24, weight 12.
QExpansion delta(long trunc);

// Basis of the weight-k modular forms for SL2(Z): monomials E4^a E6^b Delta^c
// with b in {0, 1}, ordered by ascending Delta-exponent, which puts the list
// in echelon form with respect to the q-valuation.  Empty for odd, negative
// or weight-2 input.
std::vector<QExpansion> mk_basis(int k, long trunc);

} // namespace fjf

#endif
