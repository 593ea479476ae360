#include "fjf/qexp.hpp"

#include <numeric>
#include <string>

#include "fjf/errors.hpp"

namespace fjf {

Rational QExpansion::at(long key) const {
    if (key > trunc)
        throw PrecisionExceeded("q-expansion coefficient at key " + std::to_string(key) +
                                " exceeds truncation " + std::to_string(trunc));
    if (key < 0)
        return Rational(0);
    auto it = coeff.find(key);
    return it == coeff.end() ? Rational(0) : it->second;
}

void QExpansion::set(long key, const Rational& value) {
    if (value == 0)
        coeff.erase(key);
    else
        coeff[key] = value;
}

void QExpansion::add_to(long key, const Rational& value) {
    auto it = coeff.find(key);
    if (it == coeff.end()) {
        if (value != 0)
            coeff.emplace(key, value);
        return;
    }
    it->second += value;
    if (it->second == 0)
        coeff.erase(it);
}

namespace {

// Bring f and g to a common exponent grid before pointwise/convolution ops.
void align_scales(QExpansion& f, QExpansion& g) {
    if (f.scale == g.scale)
        return;
    long s = std::lcm(f.scale, g.scale);
    for (QExpansion* h : {&f, &g}) {
        long factor = s / h->scale;
        if (factor == 1)
            continue;
        std::map<long, Rational> rescaled;
        for (const auto& [k, v] : h->coeff)
            rescaled.emplace(k * factor, v);
        h->coeff = std::move(rescaled);
        h->trunc *= factor;
        h->scale = s;
    }
}

} // namespace

QExpansion operator+(const QExpansion& f, const QExpansion& g) {
    QExpansion a = f, b = g;
    align_scales(a, b);
    QExpansion out(f.weight, a.scale, std::min(a.trunc, b.trunc));
    for (const auto& [k, v] : a.coeff)
        if (k <= out.trunc)
            out.add_to(k, v);
    for (const auto& [k, v] : b.coeff)
        if (k <= out.trunc)
            out.add_to(k, v);
    return out;
}

QExpansion operator-(const QExpansion& f, const QExpansion& g) {
    return f + Rational(-1) * g;
}

QExpansion operator*(const QExpansion& f, const QExpansion& g) {
    QExpansion a = f, b = g;
    align_scales(a, b);
    QExpansion out(f.weight + g.weight, a.scale, std::min(a.trunc, b.trunc));
    for (const auto& [k1, v1] : a.coeff) {
        if (k1 > out.trunc)
            break;
        for (const auto& [k2, v2] : b.coeff) {
            if (k1 + k2 > out.trunc)
                break;
            out.add_to(k1 + k2, v1 * v2);
        }
    }
    return out;
}

QExpansion operator*(const Rational& c, const QExpansion& f) {
    QExpansion out(f.weight, f.scale, f.trunc);
    if (c == 0)
        return out;
    for (const auto& [k, v] : f.coeff)
        out.coeff.emplace(k, c * v);
    return out;
}

QExpansion inverse(const QExpansion& f) {
    Rational c0 = f.coeff.count(0) ? f.coeff.at(0) : Rational(0);
    if (c0 == 0)
        throw Error("cannot invert a q-expansion with zero constant term");
    QExpansion out(-f.weight, f.scale, f.trunc);
    std::vector<Rational> inv(static_cast<size_t>(f.trunc) + 1, Rational(0));
    inv[0] = 1 / c0;
    for (long k = 1; k <= f.trunc; ++k) {
        Rational s(0);
        for (const auto& [j, v] : f.coeff) {
            if (j <= 0)
                continue;
            if (j > k)
                break;
            s += v * inv[static_cast<size_t>(k - j)];
        }
        inv[static_cast<size_t>(k)] = -s / c0;
    }
    for (long k = 0; k <= f.trunc; ++k)
        out.set(k, inv[static_cast<size_t>(k)]);
    return out;
}

QExpansion pow(const QExpansion& f, unsigned long e) {
    QExpansion out(0, f.scale, f.trunc);
    out.set(0, Rational(1));
    QExpansion base = f;
    while (e > 0) {
        if (e & 1)
            out = out * base;
        e >>= 1;
        if (e > 0)
            base = base * base;
    }
    return out;
}

namespace {

Integer divisor_sum(long n, int power) {
    Integer s(0);
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0)
            continue;
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(power));
        s += p;
    }
    return s;
}

} // namespace

QExpansion eisenstein(int k, long trunc) {
    if (k != 4 && k != 6)
        throw UnsupportedWeight("Eisenstein series implemented for weights 4 and 6 only, got " +
                                std::to_string(k));
    long factor = (k == 4) ? 240 : -504; // -2k/B_k for B_4 = -1/30, B_6 = 1/42
    QExpansion e(k, 1, trunc);
    e.set(0, Rational(1));
    for (long n = 1; n <= trunc; ++n)
        e.set(n, Rational(factor) * Rational(divisor_sum(n, k - 1)));
    return e;
}

QExpansion delta(long trunc) {
    QExpansion eta_product(0, 1, trunc); // prod (1 - q^n), truncated
    eta_product.set(0, Rational(1));
    for (long n = 1; n <= trunc; ++n) {
        QExpansion factor(0, 1, trunc);
        factor.set(0, Rational(1));
        if (n <= trunc)
            factor.set(n, Rational(-1));
        eta_product = eta_product * factor;
    }
    QExpansion p24 = pow(eta_product, 24);
    QExpansion out(12, 1, trunc);
    for (const auto& [k, v] : p24.coeff)
        if (k + 1 <= trunc)
            out.set(k + 1, v);
    return out;
}

std::vector<QExpansion> mk_basis(int k, long trunc) {
    std::vector<QExpansion> basis;
    if (k < 0 || k % 2 != 0)
        return basis;
    // M_* = C[E4, E6]; rewriting E6^2 = E4^3 - 1728 Delta leaves monomials
    // E4^a E6^b Delta^c with b in {0, 1}, and b is forced by k mod 4.
    int b = (k % 4 == 0) ? 0 : 1;
    if (k - 6 * b < 0)
        return basis;
    QExpansion e4 = eisenstein(4, trunc);
    QExpansion e6 = eisenstein(6, trunc);
    QExpansion d = delta(trunc);
    for (long c = 0; 6 * b + 12 * c <= k; ++c) {
        long rem = k - 6 * b - 12 * c;
        if (rem % 4 != 0)
            continue;
        long a = rem / 4;
        QExpansion mono = pow(e4, static_cast<unsigned long>(a));
        if (b)
            mono = mono * e6;
        mono = mono * pow(d, static_cast<unsigned long>(c));
        mono.weight = k;
        basis.push_back(std::move(mono));
    }
    return basis;
}

} // namespace fjf
