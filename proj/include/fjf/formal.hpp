#ifndef FJF_FORMAL_HPP
#define FJF_FORMAL_HPP

#include <optional>
#include <vector>

#include "fjf/forms.hpp"
#include "fjf/jacobi.hpp"
#include "fjf/qexp.hpp"

namespace fjf {

// One failing instance of the coefficient symmetry c(f; t) = det(u)^k c(f; u^T t u).
struct SymmetryWitness {
    HalfIntMatrix t;
    Unimodular u;
    Rational lhs;
    Rational rhs;
};

struct SymmetryReport {
    bool passed = true;
    std::vector<SymmetryWitness> witnesses;
};

// Truncated symmetric-candidate series of genus 2, cogenus 1: a family
// (phi_0, ..., phi_B) of Jacobi expansions of common weight k, truncation N
// and index(phi_m) = m.  The coefficient at t = [[n, r/2], [r/2, m]] is
// c(phi_m; n, r).  N >= B is required so that every coefficient the swap
// symmetry ties together is stored.
class FourierJacobiPolynomial {
public:
    // Validates the component family; throws ComponentMismatch on wrong
    // index, weight or truncation, and propagates the component checks.
    static FourierJacobiPolynomial construct(int weight, long precision,
                                             std::vector<JacobiExpansion> components);

    static FourierJacobiPolynomial zero(int weight, long precision, long trunc);

    int weight() const { return weight_; }
    long precision() const { return precision_; }
    long trunc() const { return trunc_; }
    const std::vector<JacobiExpansion>& components() const { return components_; }
    const JacobiExpansion& component(long m) const { return components_.at(static_cast<size_t>(m)); }

    bool is_zero() const;

    // c(f; t); routes through the elliptic law of the component.  Throws
    // NotPositiveSemidefinite, and PrecisionExceeded when the bottom-right
    // entry exceeds the precision or the normalized exponent exceeds the
    // truncation.
    Rational coefficient(const HalfIntMatrix& t) const;

    // Checks c(f; t) = det(u)^k c(f; u^T t u) for the swap and sign-flip
    // generators of GL2(Z) over all t = (n, r, m) with 0 <= n <= m <= B and
    // r^2 <= 4nm.  Together with the component-level elliptic law this covers
    // every u whose images stay within the truncation box.  Failures are
    // collected exhaustively, never thrown.
    SymmetryReport check_symmetry() const;

    // Index-0 component as an elliptic q-expansion (the boundary restriction).
    QExpansion phi() const;

    // Minimum over supporting t of the smallest integer represented by t;
    // nullopt encodes +infinity for the zero polynomial.
    std::optional<Rational> vanishing_order() const;

    friend bool operator==(const FourierJacobiPolynomial&, const FourierJacobiPolynomial&) = default;

private:
    FourierJacobiPolynomial() = default;

    int weight_ = 0;
    long precision_ = 0;
    long trunc_ = 0;
    std::vector<JacobiExpansion> components_;
};

FourierJacobiPolynomial operator+(const FourierJacobiPolynomial& f, const FourierJacobiPolynomial& g);
FourierJacobiPolynomial operator*(const Rational& c, const FourierJacobiPolynomial& f);

// Graded product: weight k_f + k_g, precision min(B_f, B_g), component m is
// the convolution sum of jacobi_mul(phi_{m1}, psi_{m2}) over m1 + m2 = m.
FourierJacobiPolynomial fj_mul(const FourierJacobiPolynomial& f, const FourierJacobiPolynomial& g);
inline FourierJacobiPolynomial operator*(const FourierJacobiPolynomial& f,
                                         const FourierJacobiPolynomial& g) {
    return fj_mul(f, g);
}

} // namespace fjf

#endif
