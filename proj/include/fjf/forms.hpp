#ifndef FJF_FORMS_HPP
#define FJF_FORMS_HPP

#include <utility>

#include "fjf/rational.hpp"

namespace fjf {

// Half-integral symmetric 2x2 matrix [[n, r/2], [r/2, m]], the index of a
// Fourier coefficient of a genus-2 form.  Equivalently the binary quadratic
// form n x^2 + r xy + m y^2.
struct HalfIntMatrix {
    long n = 0;
    long r = 0;
    long m = 0;

    friend bool operator==(const HalfIntMatrix&, const HalfIntMatrix&) = default;
};

// Element of GL2(Z): [[a, b], [c, d]] with ad - bc = +-1.
struct Unimodular {
    long a = 1;
    long b = 0;
    long c = 0;
    long d = 1;

    long det() const { return a * d - b * c; }

    friend bool operator==(const Unimodular&, const Unimodular&) = default;
};

inline Unimodular unimodular_identity() { return {1, 0, 0, 1}; }
inline Unimodular unimodular_swap() { return {0, 1, 1, 0}; }
inline Unimodular unimodular_flip() { return {1, 0, 0, -1}; }

Unimodular mul(const Unimodular& u1, const Unimodular& u2);

inline long discriminant(const HalfIntMatrix& t) { return 4 * t.n * t.m - t.r * t.r; }

inline bool is_positive_semidefinite(const HalfIntMatrix& t) {
    return t.n >= 0 && t.m >= 0 && discriminant(t) >= 0;
}

// Value of the quadratic form at an integer vector (x, y).
inline long evaluate(const HalfIntMatrix& t, long x, long y) {
    return t.n * x * x + t.r * x * y + t.m * y * y;
}

// u^T t u.  Discriminant and semidefiniteness are preserved.
HalfIntMatrix act(const Unimodular& u, const HalfIntMatrix& t);

// True iff t is a canonical GL2(Z)-orbit representative: 0 <= r <= n <= m for
// positive definite t, (0, 0, m) for degenerate t.
bool is_reduced(const HalfIntMatrix& t);

// Gauss reduction.  Returns (t_red, u) with t_red = u^T t u reduced.
// Throws NotPositiveSemidefinite for indefinite or negative input.
std::pair<HalfIntMatrix, Unimodular> reduce(const HalfIntMatrix& t);

// Minimum of the quadratic form over nonzero integer vectors; 0 for singular t.
Rational min_represented(const HalfIntMatrix& t);

} // namespace fjf

#endif
