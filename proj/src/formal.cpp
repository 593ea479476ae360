#include "fjf/formal.hpp"

#include <algorithm>
#include <string>

#include "fjf/errors.hpp"

namespace fjf {

FourierJacobiPolynomial FourierJacobiPolynomial::construct(int weight, long precision,
                                                           std::vector<JacobiExpansion> components) {
    if (precision < 0)
        throw ComponentMismatch("precision must be nonnegative");
    if (components.size() != static_cast<size_t>(precision) + 1)
        throw ComponentMismatch("expected " + std::to_string(precision + 1) + " components, got " +
                                std::to_string(components.size()));
    long trunc = components.front().trunc;
    if (trunc < precision)
        throw ComponentMismatch("truncation " + std::to_string(trunc) +
                                " is below the precision " + std::to_string(precision));
    for (long m = 0; m <= precision; ++m) {
        const JacobiExpansion& phi = components[static_cast<size_t>(m)];
        if (phi.index != m)
            throw ComponentMismatch("component " + std::to_string(m) + " has index " +
                                    std::to_string(phi.index));
        if (phi.weight != weight)
            throw ComponentMismatch("component " + std::to_string(m) + " has weight " +
                                    std::to_string(phi.weight));
        if (phi.trunc != trunc)
            throw ComponentMismatch("component " + std::to_string(m) + " has truncation " +
                                    std::to_string(phi.trunc));
        if (phi.scale != 1)
            throw ComponentMismatch("component " + std::to_string(m) +
                                    " is not on the integer exponent grid");
        for (const auto& [key, value] : phi.coeff)
            if (key.d < 0)
                throw ComponentMismatch("component " + std::to_string(m) +
                                        " is not holomorphic: nonzero coefficient at discriminant " +
                                        std::to_string(key.d));
    }
    FourierJacobiPolynomial f;
    f.weight_ = weight;
    f.precision_ = precision;
    f.trunc_ = trunc;
    f.components_ = std::move(components);
    for (JacobiExpansion& phi : f.components_)
        phi.holomorphic = true;
    return f;
}

FourierJacobiPolynomial FourierJacobiPolynomial::zero(int weight, long precision, long trunc) {
    std::vector<JacobiExpansion> comps;
    for (long m = 0; m <= precision; ++m)
        comps.emplace_back(weight, m, 1, trunc, true);
    return construct(weight, precision, std::move(comps));
}

bool FourierJacobiPolynomial::is_zero() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const JacobiExpansion& phi) { return phi.is_zero(); });
}

Rational FourierJacobiPolynomial::coefficient(const HalfIntMatrix& t) const {
    if (!is_positive_semidefinite(t))
        throw NotPositiveSemidefinite("Fourier index (" + std::to_string(t.n) + ", " +
                                      std::to_string(t.r) + ", " + std::to_string(t.m) +
                                      ") is not positive semidefinite");
    if (t.m > precision_)
        throw PrecisionExceeded("component index " + std::to_string(t.m) + " exceeds precision " +
                                std::to_string(precision_));
    return component(t.m).coeff_raw(t.n, t.r);
}

SymmetryReport FourierJacobiPolynomial::check_symmetry() const {
    SymmetryReport report;
    const Unimodular generators[] = {unimodular_swap(), unimodular_flip()};
    for (long m = 0; m <= precision_; ++m)
        for (long n = 0; n <= m; ++n) {
            long rmax = 0;
            while ((rmax + 1) * (rmax + 1) <= 4 * n * m)
                ++rmax;
            for (long r = -rmax; r <= rmax; ++r) {
                HalfIntMatrix t{n, r, m};
                Rational lhs = coefficient(t);
                for (const Unimodular& u : generators) {
                    Rational rhs = coefficient(act(u, t));
                    if (u.det() < 0 && weight_ % 2 != 0)
                        rhs = -rhs;
                    if (lhs != rhs) {
                        report.passed = false;
                        report.witnesses.push_back({t, u, lhs, rhs});
                    }
                }
            }
        }
    return report;
}

QExpansion FourierJacobiPolynomial::phi() const {
    return qexp_from_jacobi(components_.front());
}

std::optional<Rational> FourierJacobiPolynomial::vanishing_order() const {
    std::optional<Rational> best;
    for (long m = 0; m <= precision_; ++m) {
        const JacobiExpansion& phi = component(m);
        for (const auto& [key, value] : phi.coeff) {
            // min_represented is GL2(Z)-invariant and hence constant on an
            // elliptic class, so any member represents the class.  Components
            // are holomorphic, so the lambda = 0 member is valid.
            HalfIntMatrix t = (m == 0) ? HalfIntMatrix{key.d, 0, 0}
                                       : HalfIntMatrix{(key.d + key.rho * key.rho) / (4 * m),
                                                       key.rho, m};
            Rational value_at_t = min_represented(t);
            if (!best || value_at_t < *best)
                best = value_at_t;
        }
    }
    return best;
}

FourierJacobiPolynomial operator+(const FourierJacobiPolynomial& f, const FourierJacobiPolynomial& g) {
    if (f.weight() != g.weight())
        throw Error("cannot add Fourier-Jacobi polynomials of different weight");
    long precision = std::min(f.precision(), g.precision());
    std::vector<JacobiExpansion> comps;
    for (long m = 0; m <= precision; ++m)
        comps.push_back(f.component(m) + g.component(m));
    return FourierJacobiPolynomial::construct(f.weight(), precision, std::move(comps));
}

FourierJacobiPolynomial operator*(const Rational& c, const FourierJacobiPolynomial& f) {
    std::vector<JacobiExpansion> comps;
    for (long m = 0; m <= f.precision(); ++m)
        comps.push_back(c * f.component(m));
    return FourierJacobiPolynomial::construct(f.weight(), f.precision(), std::move(comps));
}

FourierJacobiPolynomial fj_mul(const FourierJacobiPolynomial& f, const FourierJacobiPolynomial& g) {
    long precision = std::min(f.precision(), g.precision());
    long trunc = std::min(f.trunc(), g.trunc());
    int weight = f.weight() + g.weight();
    std::vector<JacobiExpansion> comps;
    for (long m = 0; m <= precision; ++m) {
        JacobiExpansion acc(weight, m, 1, trunc, true);
        for (long m1 = 0; m1 <= m; ++m1) {
            const JacobiExpansion& a = f.component(m1);
            const JacobiExpansion& b = g.component(m - m1);
            if (a.is_zero() || b.is_zero())
                continue;
            acc = acc + a * b;
        }
        comps.push_back(std::move(acc));
    }
    return FourierJacobiPolynomial::construct(weight, precision, std::move(comps));
}

} // namespace fjf
