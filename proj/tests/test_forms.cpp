#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "fjf/errors.hpp"
#include "fjf/forms.hpp"

using namespace fjf;

namespace {

// Independent oracle: u^T t u through explicit rational 2x2 matrix products.
HalfIntMatrix act_oracle(const Unimodular& u, const HalfIntMatrix& t) {
    // t as entries over half-integers scaled by 2: [[2n, r], [r, 2m]]
    long t2[2][2] = {{2 * t.n, t.r}, {t.r, 2 * t.m}};
    long um[2][2] = {{u.a, u.b}, {u.c, u.d}};
    long tmp[2][2] = {};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                tmp[i][j] += um[k][i] * t2[k][j]; // u^T t2
    long res[2][2] = {};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                res[i][j] += tmp[i][k] * um[k][j];
    return {res[0][0] / 2, res[0][1], res[1][1] / 2};
}

// Independent oracle: minimum over an exhaustive search box.
long min_oracle(const HalfIntMatrix& t, long bound) {
    long best = -1;
    for (long x = -bound; x <= bound; ++x)
        for (long y = -bound; y <= bound; ++y) {
            if (x == 0 && y == 0)
                continue;
            long v = evaluate(t, x, y);
            if (best < 0 || v < best)
                best = v;
        }
    return best;
}

std::vector<Unimodular> small_unimodulars(long bound) {
    std::vector<Unimodular> out;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c)
                for (long d = -bound; d <= bound; ++d)
                    if (a * d - b * c == 1 || a * d - b * c == -1)
                        out.push_back({a, b, c, d});
    return out;
}

HalfIntMatrix random_psd(std::mt19937& rng) {
    std::uniform_int_distribution<long> entry(0, 6);
    std::uniform_int_distribution<int> kind(0, 3);
    if (kind(rng) == 0) {
        // degenerate: c (ax + by)^2
        std::uniform_int_distribution<long> small(-3, 3);
        long a = small(rng), b = small(rng), c = entry(rng);
        return {c * a * a, 2 * c * a * b, c * b * b};
    }
    while (true) {
        long n = entry(rng), m = entry(rng);
        std::uniform_int_distribution<long> rdist(-2 * 6, 2 * 6);
        long r = rdist(rng);
        HalfIntMatrix t{n, r, m};
        if (is_positive_semidefinite(t))
            return t;
    }
}

Unimodular random_unimodular(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<long> lam(-2, 2);
    Unimodular u = unimodular_identity();
    int steps = len(rng);
    for (int i = 0; i < steps; ++i) {
        switch (pick(rng)) {
        case 0: u = mul(u, unimodular_swap()); break;
        case 1: u = mul(u, unimodular_flip()); break;
        default: u = mul(u, Unimodular{1, lam(rng), 0, 1}); break;
        }
    }
    return u;
}

} // namespace

TEST_CASE("action on half-integral matrices") {
    CHECK(act(unimodular_identity(), HalfIntMatrix{1, 0, 1}) == HalfIntMatrix{1, 0, 1});
    CHECK(act(unimodular_swap(), HalfIntMatrix{1, 1, 2}) == HalfIntMatrix{2, 1, 1});
    CHECK(act(unimodular_flip(), HalfIntMatrix{1, 1, 2}) == HalfIntMatrix{1, -1, 2});

    std::mt19937 rng(20240811);
    for (int i = 0; i < 300; ++i) {
        HalfIntMatrix t = random_psd(rng);
        Unimodular u = random_unimodular(rng);
        CHECK(act(u, t) == act_oracle(u, t));
        CHECK(discriminant(act(u, t)) == discriminant(t));
        Unimodular v = random_unimodular(rng);
        // right action: act(v, act(u, t)) = act(u v, t)
        CHECK(act(v, act(u, t)) == act(mul(u, v), t));
    }
}

TEST_CASE("reduction examples") {
    auto [r1, u1] = reduce(HalfIntMatrix{1, 0, 1});
    CHECK(r1 == HalfIntMatrix{1, 0, 1});
    CHECK(u1 == unimodular_identity());

    // Oracle: the orbit of (2,1,1) under all GL2(Z) elements with entries
    // bounded by 3 meets the reduced set exactly in (1,1,2).
    HalfIntMatrix t{2, 1, 1};
    std::set<std::tuple<long, long, long>> reduced_in_orbit;
    for (const Unimodular& u : small_unimodulars(3)) {
        HalfIntMatrix s = act(u, t);
        if (is_reduced(s))
            reduced_in_orbit.insert({s.n, s.r, s.m});
    }
    REQUIRE(reduced_in_orbit.size() == 1);
    CHECK(*reduced_in_orbit.begin() == std::tuple<long, long, long>{1, 1, 2});
    auto [r2, u2] = reduce(t);
    CHECK(r2 == HalfIntMatrix{1, 1, 2});
    CHECK(act(u2, t) == r2);

    CHECK_THROWS_AS(reduce(HalfIntMatrix{1, 3, 1}), NotPositiveSemidefinite);
    CHECK_THROWS_AS(min_represented(HalfIntMatrix{1, 3, 1}), NotPositiveSemidefinite);
}

TEST_CASE("degenerate reduction") {
    auto [r, u] = reduce(HalfIntMatrix{4, 4, 1}); // (2x + y)^2
    CHECK(r == HalfIntMatrix{0, 0, 1});
    CHECK(act(u, HalfIntMatrix{4, 4, 1}) == r);
    CHECK(reduce(HalfIntMatrix{0, 0, 3}).first == HalfIntMatrix{0, 0, 3});
    CHECK(reduce(HalfIntMatrix{0, 0, 0}).first == HalfIntMatrix{0, 0, 0});
}

TEST_CASE("min_represented examples") {
    CHECK(min_represented(HalfIntMatrix{1, 0, 1}) == Rational(1));
    CHECK(min_represented(HalfIntMatrix{0, 0, 0}) == Rational(0));
    CHECK(min_oracle(HalfIntMatrix{5, 4, 5}, 5) == 5);
    CHECK(min_represented(HalfIntMatrix{5, 4, 5}) == Rational(5));
}

TEST_CASE("reduce and min_represented properties") {
    std::mt19937 rng(987654);
    for (int i = 0; i < 300; ++i) {
        HalfIntMatrix t = random_psd(rng);
        auto [red, u] = reduce(t);
        CHECK(is_reduced(red));
        CHECK(act(u, t) == red);
        CHECK(reduce(red).first == red); // idempotent
        CHECK((u.det() == 1 || u.det() == -1));

        if (discriminant(t) > 0)
            CHECK(min_represented(t) == Rational(min_oracle(t, 40)));

        Unimodular v = random_unimodular(rng);
        CHECK(min_represented(act(v, t)) == min_represented(t));
        CHECK(reduce(act(v, t)).first == red); // orbit representative is canonical
    }
}
