#ifndef FJF_JACOBI_HPP
#define FJF_JACOBI_HPP

#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "fjf/qexp.hpp"
#include "fjf/rational.hpp"

namespace fjf {

// Truncated Fourier expansion of a genus-1 Jacobi form of weight k and index
// m, with exact rational coefficients c(n, r).
//
// Coefficients are stored by elliptic-law class: c(n, r) of an index-m form
// depends only on D = 4nm - r^2 and on r mod 2m, so the canonical key is
// (D, rho) with rho the representative of r mod 2m in (-m, m].  Raw (n, r)
// lookups route through this law, which makes the coefficient-law invariant
// structural rather than something to re-check.  Index-0 expansions (elliptic
// modular forms viewed as Jacobi forms constant in z) are keyed (n, 0).
//
// Exponents live on the grid (1/scale) Z exactly as in QExpansion; scale is 1
// except for theta series, which live on the q^{1/4m} grid.  `trunc` bounds
// the scaled exponent key.  A class is representable iff its smallest
// exponent key is within trunc; queries beyond that throw PrecisionExceeded.
struct JacobiClassKey {
    long d = 0;   // discriminant 4nm - r^2 (the exponent itself when index = 0)
    long rho = 0; // residue representative in (-m, m]; 0 when index = 0

    friend auto operator<=>(const JacobiClassKey&, const JacobiClassKey&) = default;
};

struct JacobiExpansion {
    int weight = 0;
    long index = 0;
    long scale = 1;
    long trunc = 0;
    bool holomorphic = true;
    std::map<JacobiClassKey, Rational> coeff; // nonzero classes only

    JacobiExpansion() = default;
    JacobiExpansion(int weight_, long index_, long scale_, long trunc_, bool holomorphic_)
        : weight(weight_), index(index_), scale(scale_), trunc(trunc_), holomorphic(holomorphic_) {}

    bool is_zero() const { return coeff.empty(); }

    // Residue of r mod 2m in (-m, m].
    long normalize_residue(long r) const;

    // Smallest scaled exponent key of a nonnegative-exponent member of the
    // class, or -1 if the class has none.
    long class_min_key(const JacobiClassKey& key) const;

    JacobiClassKey class_of(long nhat, long r) const;

    // Coefficient by class; zero if absent.
    Rational coeff_class(const JacobiClassKey& key) const;

    // Coefficient c(nhat, r) through the elliptic law.  Throws
    // PrecisionExceeded if the class is not representable within trunc.
    Rational coeff_raw(long nhat, long r) const;

    // All members (nhat, r, value) of stored classes with nhat <= bound,
    // sorted by (nhat, r).  This is the dense table the canonical storage
    // compresses.
    std::vector<std::tuple<long, long, Rational>> raw_support(long bound) const;

    friend bool operator==(const JacobiExpansion&, const JacobiExpansion&) = default;
};

// Build from a complete raw coefficient table over 0 <= nhat <= trunc
// (absent keys are zero).  Verifies the elliptic coefficient law across each
// class, throwing CoefficientLawViolation on mismatch, and checks the weak
// support bound D >= -m^2.  If holomorphic is requested, classes with D < 0
// must vanish.
JacobiExpansion jacobi_from_raw(int weight, long index, long scale, long trunc, bool holomorphic,
                                const std::map<std::pair<long, long>, Rational>& raw);

// Lift an elliptic q-expansion to an index-0 Jacobi expansion and back.
JacobiExpansion jacobi_from_qexp(const QExpansion& f);
QExpansion qexp_from_jacobi(const JacobiExpansion& phi); // requires index 0

JacobiExpansion operator+(const JacobiExpansion& f, const JacobiExpansion& g);
JacobiExpansion operator*(const Rational& c, const JacobiExpansion& f);

// Product of Jacobi forms: weights add, indices add, truncation is the
// smaller of the two.
JacobiExpansion jacobi_mul(const JacobiExpansion& f, const JacobiExpansion& g);
inline JacobiExpansion operator*(const JacobiExpansion& f, const JacobiExpansion& g) {
    return jacobi_mul(f, g);
}

// The weak generators phi_{-2,1} and phi_{0,1} of the weak Jacobi forms over
// M_*: phi_{-2,1} from the triple-product formula for theta_1(tau,z)^2 /
// eta(tau)^6, phi_{0,1} from the sum of the three even theta quotients.
std::pair<JacobiExpansion, JacobiExpansion> weak_generators(long trunc);

// Basis of the holomorphic Jacobi forms J_{k,m}, echelonized by leading
// coefficient.  Constructed as the span of E4^a E6^b Delta^c phi_{-2,1}^i
// phi_{0,1}^j with i + j = m and 4a + 6b + 12c - 2i = k, cut down by the
// finitely many linear conditions c(n, r) = 0 at negative discriminants.
// Odd weights return the empty list.
std::vector<JacobiExpansion> jacobi_basis(int k, long m, long trunc);

// Theta series theta_{m,mu}(tau, z) = sum_{s = mu mod 2m} q^{s^2/4m} zeta^s,
// stored on the q^{1/4m} grid.  Carries analytic weight 1/2, which the
// integer weight field cannot hold; the field is set to 0 and is metadata
// only.
struct ThetaComponentIndex {
    long m = 1;  // positive index
    long mu = 0; // residue class in [0, 2m)
};

JacobiExpansion theta_component(const ThetaComponentIndex& idx, long trunc);

// Components h_mu of the theta decomposition phi = sum_mu h_mu theta_{m,mu}:
// h_mu collects c(phi; n, r) with r = mu mod 2m at exponent (4nm - r^2)/4m,
// so each component is supported on exponents = -mu^2 mod 4m.
struct ThetaDecomposition {
    long index = 1;
    std::vector<QExpansion> components; // 2m components, scale 4m
};

ThetaDecomposition theta_decompose(const JacobiExpansion& phi);

// Inverse of theta_decompose; throws GradingViolation if a component has
// support off its residue class.
JacobiExpansion theta_recompose(const ThetaDecomposition& dec, int weight, long trunc);

} // namespace fjf

#endif
