#include "fjf/jacobi.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>
#include <tuple>

#include "fjf/errors.hpp"
#include "fjf/linalg.hpp"

namespace fjf {

namespace {

long ceil_div(long a, long b) { // b > 0
    return (a >= 0) ? (a + b - 1) / b : -((-a) / b);
}

long isqrt(long x) {
    if (x <= 0)
        return 0;
    long r = static_cast<long>(std::sqrt(static_cast<double>(x)));
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

std::string show_pair(long a, long b) {
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ")";
}

} // namespace

long JacobiExpansion::normalize_residue(long r) const {
    if (index == 0)
        return 0;
    long two_m = 2 * index;
    long rho = ((r % two_m) + two_m) % two_m;
    if (rho > index)
        rho -= two_m;
    return rho;
}

JacobiClassKey JacobiExpansion::class_of(long nhat, long r) const {
    if (index == 0)
        return {nhat, 0};
    long num = 4 * index * nhat;
    assert(num % scale == 0);
    return {num / scale - r * r, normalize_residue(r)};
}

long JacobiExpansion::class_min_key(const JacobiClassKey& key) const {
    if (index == 0)
        return key.d >= 0 ? key.d : -1;
    long four_m = 4 * index;
    auto key_at = [&](long r) { return scale * (key.d + r * r) / four_m; };
    if (key.d + key.rho * key.rho >= 0)
        return key_at(key.rho);
    // Need r^2 >= -D with r = rho mod 2m; take the smallest such |r|.
    long bound = isqrt(-key.d);
    if (bound * bound < -key.d)
        ++bound;
    long two_m = 2 * index;
    long r_pos = key.rho + two_m * ceil_div(bound - key.rho, two_m);
    long r_neg = key.rho - two_m * ceil_div(key.rho + bound, two_m);
    long r2 = std::min(r_pos * r_pos, r_neg * r_neg);
    return scale * (key.d + r2) / four_m;
}

Rational JacobiExpansion::coeff_class(const JacobiClassKey& key) const {
    auto it = coeff.find(key);
    return it == coeff.end() ? Rational(0) : it->second;
}

Rational JacobiExpansion::coeff_raw(long nhat, long r) const {
    if (nhat < 0)
        return Rational(0);
    if (index == 0) {
        if (r != 0)
            return Rational(0);
        if (nhat > trunc)
            throw PrecisionExceeded("coefficient at exponent key " + std::to_string(nhat) +
                                    " exceeds truncation " + std::to_string(trunc));
        return coeff_class({nhat, 0});
    }
    JacobiClassKey key = class_of(nhat, r);
    long min_key = class_min_key(key);
    if (min_key > trunc)
        throw PrecisionExceeded("coefficient class of " + show_pair(nhat, r) +
                                " is outside truncation " + std::to_string(trunc));
    return coeff_class(key);
}

std::vector<std::tuple<long, long, Rational>> JacobiExpansion::raw_support(long bound) const {
    std::vector<std::tuple<long, long, Rational>> out;
    bound = std::min(bound, trunc);
    for (const auto& [key, value] : coeff) {
        if (index == 0) {
            if (key.d <= bound)
                out.emplace_back(key.d, 0, value);
            continue;
        }
        long four_m = 4 * index;
        long two_m = 2 * index;
        for (int dir : {+1, -1}) {
            for (long lam = (dir > 0) ? 0 : 1;; ++lam) {
                long r = key.rho + dir * two_m * lam;
                long num = key.d + r * r;
                if (num >= 0 && scale * num / four_m > bound)
                    break;
                if (num >= 0)
                    out.emplace_back(scale * num / four_m, r, value);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        return std::make_pair(std::get<0>(x), std::get<1>(x)) <
               std::make_pair(std::get<0>(y), std::get<1>(y));
    });
    return out;
}

JacobiExpansion jacobi_from_raw(int weight, long index, long scale, long trunc, bool holomorphic,
                                const std::map<std::pair<long, long>, Rational>& raw) {
    if (index < 0)
        throw Error("negative Jacobi index");
    if (index > 0 && scale != 1 && scale != 4 * index)
        throw Error("Jacobi exponent scale must be 1 or 4*index");
    JacobiExpansion phi(weight, index, scale, trunc, holomorphic);

    auto raw_at = [&](long nhat, long r) {
        auto it = raw.find({nhat, r});
        return it == raw.end() ? Rational(0) : it->second;
    };

    for (const auto& [nr, value] : raw) {
        if (value == 0)
            continue;
        auto [nhat, r] = nr;
        if (nhat < 0 || nhat > trunc)
            throw Error("raw coefficient key " + show_pair(nhat, r) + " outside [0, trunc]");
        if (index == 0 && r != 0)
            throw Error("an index-0 expansion is constant in the elliptic variable");
        JacobiClassKey key = phi.class_of(nhat, r);
        if (phi.coeff.count(key))
            continue; // class already recorded and verified
        if (index > 0 && key.d < -index * index)
            throw Error("coefficient " + show_pair(nhat, r) + " below the weak support bound");
        if (holomorphic && key.d < 0)
            throw ValidationError("nonzero coefficient at negative discriminant " +
                                  std::to_string(key.d) + " in holomorphic expansion");
        // The elliptic coefficient law: every member of the class within the
        // truncation must carry the same value.
        if (index > 0) {
            long four_m = 4 * index;
            long two_m = 2 * index;
            for (int dir : {+1, -1}) {
                for (long lam = (dir > 0) ? 0 : 1;; ++lam) {
                    long rr = key.rho + dir * two_m * lam;
                    long num = key.d + rr * rr;
                    if (num >= 0 && scale * num / four_m > trunc)
                        break;
                    if (num < 0)
                        continue;
                    if (raw_at(scale * num / four_m, rr) != value)
                        throw CoefficientLawViolation(
                            "coefficients at " + show_pair(nhat, r) + " and " +
                            show_pair(scale * num / four_m, rr) +
                            " disagree within one discriminant class");
                }
            }
        }
        phi.coeff.emplace(key, value);
    }
    return phi;
}

JacobiExpansion jacobi_from_qexp(const QExpansion& f) {
    JacobiExpansion phi(f.weight, 0, f.scale, f.trunc, true);
    for (const auto& [k, v] : f.coeff)
        phi.coeff.emplace(JacobiClassKey{k, 0}, v);
    return phi;
}

QExpansion qexp_from_jacobi(const JacobiExpansion& phi) {
    if (phi.index != 0)
        throw Error("only an index-0 Jacobi expansion is an elliptic q-expansion");
    QExpansion f(phi.weight, phi.scale, phi.trunc);
    for (const auto& [key, v] : phi.coeff)
        f.coeff.emplace(key.d, v);
    return f;
}

JacobiExpansion operator+(const JacobiExpansion& f, const JacobiExpansion& g) {
    if (f.index != g.index || f.scale != g.scale || f.weight != g.weight)
        throw Error("cannot add Jacobi expansions of different weight, index or scale");
    JacobiExpansion out(f.weight, f.index, f.scale, std::min(f.trunc, g.trunc),
                        f.holomorphic && g.holomorphic);
    for (const JacobiExpansion* h : {&f, &g})
        for (const auto& [key, v] : h->coeff) {
            if (out.class_min_key(key) > out.trunc)
                continue;
            auto it = out.coeff.find(key);
            if (it == out.coeff.end())
                out.coeff.emplace(key, v);
            else {
                it->second += v;
                if (it->second == 0)
                    out.coeff.erase(it);
            }
        }
    return out;
}

JacobiExpansion operator*(const Rational& c, const JacobiExpansion& f) {
    JacobiExpansion out(f.weight, f.index, f.scale, f.trunc, f.holomorphic);
    if (c == 0)
        return out;
    for (const auto& [key, v] : f.coeff)
        out.coeff.emplace(key, c * v);
    return out;
}

JacobiExpansion jacobi_mul(const JacobiExpansion& f, const JacobiExpansion& g) {
    if (f.scale != g.scale)
        throw Error("cannot multiply Jacobi expansions on different exponent grids");
    long trunc = std::min(f.trunc, g.trunc);
    auto sf = f.raw_support(trunc);
    auto sg = g.raw_support(trunc);
    std::map<std::pair<long, long>, Rational> raw;
    for (const auto& [n1, r1, v1] : sf)
        for (const auto& [n2, r2, v2] : sg) {
            if (n1 + n2 > trunc)
                continue;
            auto& slot = raw[{n1 + n2, r1 + r2}];
            slot += v1 * v2;
        }
    return jacobi_from_raw(f.weight + g.weight, f.index + g.index, f.scale, trunc,
                           f.holomorphic && g.holomorphic, raw);
}

// ---------------------------------------------------------------------------
// Weak generators

namespace {

// Dense bivariate builder used only while expanding product formulas; the
// canonical class storage takes over at the end.
struct BiSeries {
    long trunc = 0; // max q key
    std::map<std::pair<long, long>, Rational> c;

    void add(long n, long r, const Rational& v) {
        if (n > trunc || v == 0)
            return;
        auto& slot = c[{n, r}];
        slot += v;
        if (slot == 0)
            c.erase({n, r});
    }

    BiSeries mul(const BiSeries& other) const {
        BiSeries out;
        out.trunc = std::min(trunc, other.trunc);
        for (const auto& [k1, v1] : c)
            for (const auto& [k2, v2] : other.c) {
                if (k1.first + k2.first > out.trunc)
                    continue;
                out.add(k1.first + k2.first, k1.second + k2.second, v1 * v2);
            }
        return out;
    }

    BiSeries mul_univariate(const QExpansion& u) const {
        BiSeries out;
        out.trunc = std::min(trunc, u.trunc);
        for (const auto& [k1, v1] : c)
            for (const auto& [j, w] : u.coeff) {
                if (k1.first + j > out.trunc)
                    continue;
                out.add(k1.first + j, k1.second, v1 * w);
            }
        return out;
    }
};

// phi_{-2,1} = (zeta - 2 + 1/zeta) prod (1-q^n zeta)^2 (1-q^n/zeta)^2 (1-q^n)^-4,
// the triple-product formula for theta_1(tau,z)^2 / eta(tau)^6.
JacobiExpansion weak_weight_minus2(long trunc) {
    BiSeries p;
    p.trunc = trunc;
    p.add(0, -1, Rational(1));
    p.add(0, 0, Rational(-2));
    p.add(0, 1, Rational(1));
    for (long n = 1; n <= trunc; ++n) {
        for (long zdir : {+1, -1}) {
            BiSeries factor;
            factor.trunc = trunc;
            factor.add(0, 0, Rational(1));
            factor.add(n, zdir, Rational(-1));
            p = p.mul(factor).mul(factor);
        }
    }
    QExpansion eta_pow(0, 1, trunc);
    eta_pow.set(0, Rational(1));
    for (long n = 1; n <= trunc; ++n) {
        QExpansion factor(0, 1, trunc);
        factor.set(0, Rational(1));
        factor.set(n, Rational(-1));
        eta_pow = eta_pow * factor;
    }
    p = p.mul_univariate(inverse(pow(eta_pow, 4)));

    std::map<std::pair<long, long>, Rational> raw;
    for (const auto& [k, v] : p.c)
        raw.emplace(k, v);
    return jacobi_from_raw(-2, 1, 1, trunc, false, raw);
}

// One even theta quotient theta_i(tau,z)^2 / theta_i(tau,0)^2 on the q^{1/8}
// grid.  `kind` 2, 3, 4 selects the theta function.
BiSeries theta_quotient(int kind, long scaled_trunc) {
    BiSeries num;
    num.trunc = scaled_trunc + 2;
    QExpansion den(0, 8, scaled_trunc + 2);
    if (kind == 2) {
        // theta_2^2 = sum over odd a, b of q^{(a^2+b^2)/8} zeta^{(a+b)/2}
        long bound = isqrt(num.trunc) + 1;
        for (long a = -bound; a <= bound; a += 1) {
            if ((a % 2) == 0)
                continue;
            for (long b = -bound; b <= bound; b += 1) {
                if ((b % 2) == 0)
                    continue;
                long key = a * a + b * b;
                if (key > num.trunc)
                    continue;
                num.add(key, (a + b) / 2, Rational(1));
                den.add_to(key, Rational(1));
            }
        }
    } else {
        // theta_3^2 (kind 3) and theta_4^2 (kind 4) over integer c, d with
        // scaled key 4(c^2+d^2) and sign (-1)^{c+d} for theta_4.
        long bound = isqrt(num.trunc / 4) + 1;
        for (long cc = -bound; cc <= bound; ++cc)
            for (long dd = -bound; dd <= bound; ++dd) {
                long key = 4 * (cc * cc + dd * dd);
                if (key > num.trunc)
                    continue;
                Rational sign(kind == 4 && ((cc + dd) % 2 != 0) ? -1 : 1);
                num.add(key, cc + dd, sign);
                den.add_to(key, sign);
            }
    }
    // Divide by the valuation-shifted unit part of the denominator.
    long val = den.coeff.empty() ? 0 : den.coeff.begin()->first;
    QExpansion unit(0, 8, scaled_trunc);
    for (const auto& [k, v] : den.coeff)
        if (k - val <= unit.trunc)
            unit.set(k - val, v);
    BiSeries shifted;
    shifted.trunc = scaled_trunc;
    for (const auto& [k, v] : num.c)
        shifted.add(k.first - val, k.second, v);
    return shifted.mul_univariate(inverse(unit));
}

// phi_{0,1} = 4 (theta_2 quotient + theta_3 quotient + theta_4 quotient).
// The individual quotients have genuine half-integral q-powers; those cancel
// in the sum, which lives on the integer grid.
JacobiExpansion weak_weight0(long trunc) {
    long scaled_trunc = 8 * trunc;
    std::map<std::pair<long, long>, Rational> scaled_sum;
    for (int kind : {2, 3, 4})
        for (const auto& [k, v] : theta_quotient(kind, scaled_trunc).c) {
            auto& slot = scaled_sum[k];
            slot += 4 * v;
        }
    std::map<std::pair<long, long>, Rational> raw;
    for (const auto& [k, v] : scaled_sum) {
        if (v == 0)
            continue;
        if (k.first % 8 != 0)
            throw Error("theta quotient sum off the integer q-grid");
        raw[{k.first / 8, k.second}] = v;
    }
    return jacobi_from_raw(0, 1, 1, trunc, false, raw);
}

} // namespace

std::pair<JacobiExpansion, JacobiExpansion> weak_generators(long trunc) {
    return {weak_weight_minus2(trunc), weak_weight0(trunc)};
}

// ---------------------------------------------------------------------------
// Holomorphic bases

namespace {

// Deterministic display order of coefficient classes: by smallest exponent,
// then residue, then discriminant.  Used to echelonize expansion lists.
std::vector<JacobiClassKey> ordered_keys(const std::vector<JacobiExpansion>& list) {
    std::vector<JacobiClassKey> keys;
    for (const JacobiExpansion& phi : list)
        for (const auto& [key, v] : phi.coeff)
            keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    const JacobiExpansion& ref = list.front();
    std::stable_sort(keys.begin(), keys.end(), [&](const JacobiClassKey& x, const JacobiClassKey& y) {
        return std::make_tuple(ref.class_min_key(x), x.rho, x.d) <
               std::make_tuple(ref.class_min_key(y), y.rho, y.d);
    });
    return keys;
}

} // namespace

std::vector<JacobiExpansion> jacobi_basis(int k, long m, long trunc) {
    std::vector<JacobiExpansion> out;
    if (m < 0 || k % 2 != 0 || k < 0)
        return out;
    if (m == 0) {
        for (const QExpansion& f : mk_basis(k, trunc))
            out.push_back(jacobi_from_qexp(f));
        return out;
    }

    auto [gen_a, gen_b] = weak_generators(trunc);
    std::vector<JacobiExpansion> pow_a(static_cast<size_t>(m) + 1);
    std::vector<JacobiExpansion> pow_b(static_cast<size_t>(m) + 1);
    QExpansion one(0, 1, trunc);
    one.set(0, Rational(1));
    pow_a[0] = pow_b[0] = jacobi_from_qexp(one);
    for (long i = 1; i <= m; ++i) {
        pow_a[static_cast<size_t>(i)] = pow_a[static_cast<size_t>(i - 1)] * gen_a;
        pow_b[static_cast<size_t>(i)] = pow_b[static_cast<size_t>(i - 1)] * gen_b;
    }

    std::vector<JacobiExpansion> monomials;
    for (long i = 0; i <= m; ++i) {
        int weight_needed = k + 2 * static_cast<int>(i);
        std::vector<QExpansion> scalars = mk_basis(weight_needed, trunc);
        if (scalars.empty())
            continue;
        JacobiExpansion ab = pow_a[static_cast<size_t>(i)] * pow_b[static_cast<size_t>(m - i)];
        for (const QExpansion& e : scalars)
            monomials.push_back(jacobi_from_qexp(e) * ab);
    }
    if (monomials.empty())
        return out;

    // Holomorphicity: the finitely many negative-discriminant classes must
    // vanish.  The weak support bound D >= -m^2 makes the list complete.
    std::vector<JacobiClassKey> neg_classes;
    for (long rho = -m + 1; rho <= m; ++rho)
        for (long d = -m * m; d < 0; ++d)
            if (((d + rho * rho) % (4 * m)) == 0)
                neg_classes.push_back({d, rho});

    RationalMatrix rows;
    for (const JacobiClassKey& key : neg_classes) {
        std::vector<Rational> row;
        row.reserve(monomials.size());
        for (const JacobiExpansion& mono : monomials)
            row.push_back(mono.coeff_class(key));
        rows.push_back(std::move(row));
    }

    for (const std::vector<Rational>& v : nullspace_basis(rows, monomials.size())) {
        JacobiExpansion acc(k, m, 1, trunc, false);
        for (std::size_t j = 0; j < monomials.size(); ++j)
            if (v[j] != 0)
                acc = acc + v[j] * monomials[j];
        for (const auto& [key, value] : acc.coeff)
            if (key.d < 0)
                throw Error("holomorphicity constraints left a negative discriminant class");
        acc.holomorphic = true;
        out.push_back(std::move(acc));
    }
    if (out.empty())
        return out;

    // Echelonize by leading coefficient so the basis is canonical.
    std::vector<JacobiClassKey> keys = ordered_keys(out);
    RationalMatrix flat;
    for (const JacobiExpansion& phi : out) {
        std::vector<Rational> row;
        row.reserve(keys.size());
        for (const JacobiClassKey& key : keys)
            row.push_back(phi.coeff_class(key));
        flat.push_back(std::move(row));
    }
    EchelonForm e = reduced_row_echelon(flat, keys.size());
    std::vector<JacobiExpansion> echelon;
    for (const auto& row : e.rows) {
        JacobiExpansion phi(k, m, 1, trunc, true);
        for (std::size_t j = 0; j < keys.size(); ++j)
            if (row[j] != 0)
                phi.coeff.emplace(keys[j], row[j]);
        echelon.push_back(std::move(phi));
    }
    return echelon;
}

// ---------------------------------------------------------------------------
// Theta decomposition

JacobiExpansion theta_component(const ThetaComponentIndex& idx, long trunc) {
    if (idx.m <= 0 || idx.mu < 0 || idx.mu >= 2 * idx.m)
        throw Error("theta component index out of range");
    JacobiExpansion theta(0, idx.m, 4 * idx.m, 4 * idx.m * trunc, true);
    JacobiClassKey key{0, theta.normalize_residue(idx.mu)};
    if (theta.class_min_key(key) <= theta.trunc)
        theta.coeff.emplace(key, Rational(1));
    return theta;
}

ThetaDecomposition theta_decompose(const JacobiExpansion& phi) {
    if (phi.index < 1)
        throw Error("theta decomposition requires positive index");
    if (phi.scale != 1)
        throw Error("theta decomposition requires the integer exponent grid");
    if (!phi.holomorphic)
        throw Error("theta decomposition requires a holomorphic expansion");
    long m = phi.index;
    ThetaDecomposition dec;
    dec.index = m;
    for (long mu = 0; mu < 2 * m; ++mu) {
        long rho = phi.normalize_residue(mu);
        dec.components.emplace_back(phi.weight, 4 * m, 4 * m * phi.trunc - rho * rho);
    }
    for (const auto& [key, value] : phi.coeff) {
        if (key.d < 0)
            throw CoefficientLawViolation("negative discriminant class in holomorphic expansion");
        long mu = ((key.rho % (2 * m)) + 2 * m) % (2 * m);
        dec.components[static_cast<size_t>(mu)].set(key.d, value);
    }
    return dec;
}

JacobiExpansion theta_recompose(const ThetaDecomposition& dec, int weight, long trunc) {
    long m = dec.index;
    if (m < 1 || dec.components.size() != static_cast<size_t>(2 * m))
        throw Error("theta decomposition must have 2m components");
    std::map<std::pair<long, long>, Rational> raw;
    for (long mu = 0; mu < 2 * m; ++mu) {
        const QExpansion& h = dec.components[static_cast<size_t>(mu)];
        long rho = (mu > m) ? mu - 2 * m : mu;
        if (4 * m * trunc - rho * rho > h.trunc)
            throw Error("requested truncation exceeds the coverage of component " +
                        std::to_string(mu));
        for (const auto& [d, value] : h.coeff) {
            if (((d + rho * rho) % (4 * m)) != 0)
                throw GradingViolation("component " + std::to_string(mu) +
                                       " has support off its residue class at exponent key " +
                                       std::to_string(d));
            for (int dir : {+1, -1}) {
                for (long lam = (dir > 0) ? 0 : 1;; ++lam) {
                    long r = rho + dir * 2 * m * lam;
                    long num = d + r * r;
                    if (num >= 0 && num / (4 * m) > trunc)
                        break;
                    if (num >= 0)
                        raw[{num / (4 * m), r}] = value;
                }
            }
        }
    }
    return jacobi_from_raw(weight, m, 1, trunc, true, raw);
}

} // namespace fjf
