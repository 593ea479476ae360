#include "fjf/forms.hpp"

#include <cstdlib>
#include <numeric>
#include <string>

#include "fjf/errors.hpp"

namespace fjf {

Unimodular mul(const Unimodular& u1, const Unimodular& u2) {
    return {u1.a * u2.a + u1.b * u2.c, u1.a * u2.b + u1.b * u2.d,
            u1.c * u2.a + u1.d * u2.c, u1.c * u2.b + u1.d * u2.d};
}

HalfIntMatrix act(const Unimodular& u, const HalfIntMatrix& t) {
    // [[a, c], [b, d]] [[n, r/2], [r/2, m]] [[a, b], [c, d]], kept integral in
    // the (n, r, m) coordinates.
    HalfIntMatrix s;
    s.n = u.a * u.a * t.n + u.a * u.c * t.r + u.c * u.c * t.m;
    s.r = 2 * u.a * u.b * t.n + (u.a * u.d + u.b * u.c) * t.r + 2 * u.c * u.d * t.m;
    s.m = u.b * u.b * t.n + u.b * u.d * t.r + u.d * u.d * t.m;
    return s;
}

bool is_reduced(const HalfIntMatrix& t) {
    if (discriminant(t) == 0)
        return t.n == 0 && t.r == 0 && t.m >= 0;
    return 0 <= t.r && t.r <= t.n && t.n <= t.m;
}

namespace {

std::string show(const HalfIntMatrix& t) {
    return "(" + std::to_string(t.n) + ", " + std::to_string(t.r) + ", " + std::to_string(t.m) + ")";
}

void require_psd(const HalfIntMatrix& t) {
    if (!is_positive_semidefinite(t))
        throw NotPositiveSemidefinite("matrix " + show(t) + " is not positive semidefinite");
}

// Reduce a degenerate form to (0, 0, m').  The kernel of a singular half
// integral form is a rational line, so it contains a primitive vector v; any
// completion of v to a basis evaluates to the same m'.
std::pair<HalfIntMatrix, Unimodular> reduce_degenerate(const HalfIntMatrix& t) {
    if (t.n == 0 && t.m == 0)
        return {HalfIntMatrix{0, 0, 0}, unimodular_identity()}; // r = 0 forced by D = 0

    long vx, vy;
    if (t.n != 0) {
        vx = -t.r;
        vy = 2 * t.n;
    } else {
        vx = 2 * t.m;
        vy = -t.r;
    }
    long g = std::gcd(std::abs(vx), std::abs(vy));
    vx /= g;
    vy /= g;
    if (vx < 0 || (vx == 0 && vy < 0)) {
        vx = -vx;
        vy = -vy;
    }

    // Extended gcd: find (x, y) with vx*y - vy*x = 1.
    long old_r = vx, rr = vy, old_s = 1, ss = 0, old_t = 0, tt = 1;
    while (rr != 0) {
        long q = old_r / rr;
        long tmp = old_r - q * rr; old_r = rr; rr = tmp;
        tmp = old_s - q * ss; old_s = ss; ss = tmp;
        tmp = old_t - q * tt; old_t = tt; tt = tmp;
    }
    // old_s*vx + old_t*vy = old_r = gcd = 1 (v primitive); take w = (-old_t, old_s).
    Unimodular u{vx, -old_t, vy, old_s};
    HalfIntMatrix red = act(u, t);
    // By construction red = (0, 0, m') with m' the primitive represented value.
    return {red, u};
}

} // namespace

namespace {

long floor_div(long a, long b) { // b > 0
    return (a >= 0) ? a / b : -((-a + b - 1) / b);
}

} // namespace

std::pair<HalfIntMatrix, Unimodular> reduce(const HalfIntMatrix& t) {
    require_psd(t);
    if (discriminant(t) == 0)
        return reduce_degenerate(t);

    // Positive definite, so n >= 1 and m >= 1 throughout.
    HalfIntMatrix cur = t;
    Unimodular u = unimodular_identity();
    auto apply = [&](const Unimodular& g) {
        cur = act(g, cur);
        u = mul(u, g);
    };

    while (true) {
        if (cur.n > cur.m)
            apply(unimodular_swap());
        if (std::abs(cur.r) <= cur.n)
            break;
        // Translate r into (-n, n] via [[1, lambda], [0, 1]].
        long lambda = floor_div(cur.n - cur.r, 2 * cur.n);
        apply(Unimodular{1, lambda, 0, 1});
    }
    if (cur.r < 0)
        apply(unimodular_flip());
    return {cur, u};
}

Rational min_represented(const HalfIntMatrix& t) {
    require_psd(t);
    if (discriminant(t) == 0)
        return Rational(0); // a nonzero kernel vector represents 0
    return Rational(reduce(t).first.n);
}

} // namespace fjf
