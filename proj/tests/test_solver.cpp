#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <thread>

#include "fjf/bounds.hpp"
#include "fjf/errors.hpp"
#include "fjf/qexp.hpp"
#include "fjf/solver.hpp"

using namespace fjf;

namespace {

// Flatten a polynomial over a fixed key box for span computations.
std::vector<Rational> flatten(const FourierJacobiPolynomial& f,
                              const std::vector<std::pair<long, JacobiClassKey>>& keys) {
    std::vector<Rational> row;
    row.reserve(keys.size());
    for (const auto& [m, key] : keys)
        row.push_back(f.component(m).coeff_class(key));
    return row;
}

std::vector<std::pair<long, JacobiClassKey>> key_union(
    const std::vector<const FourierJacobiPolynomial*>& elements) {
    std::vector<std::pair<long, JacobiClassKey>> keys;
    for (const FourierJacobiPolynomial* f : elements)
        for (long m = 0; m <= f->precision(); ++m)
            for (const auto& [key, v] : f->component(m).coeff)
                keys.emplace_back(m, key);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

} // namespace

TEST_CASE("reference dimension table") {
    DimensionTable table = DimensionTable::igusa_default();
    long expected[] = {1, 0, 1, 1, 1, 2, 3};
    for (int i = 0; i <= 6; ++i)
        CHECK(table.at(2 * i) == expected[i]);
    CHECK(table.at(60) > 0);
    CHECK_THROWS_AS(table.at(62), TableRangeExceeded);
    CHECK_THROWS_AS(table.at(7), TableRangeExceeded);

    DimensionTable parsed = DimensionTable::parse("# comment\n0 1\n2 0\n4 1\n");
    CHECK(parsed.at(4) == 1);
    CHECK(parsed.max_weight == 4);
    CHECK_THROWS_AS(DimensionTable::parse("4\n"), ParseError);
    CHECK_THROWS_AS(DimensionTable::parse("# nothing\n"), ParseError);
}

TEST_CASE("constraint system shape") {
    CHECK_THROWS_AS(build_constraints(5, 1, 6), OddWeightUnsupported);

    ConstraintSystem sys = build_constraints(0, 1, 6);
    CHECK(sys.unknowns.size() == 1); // J_{0,0} = constants, J_{0,1} = 0
    CHECK(nullspace(sys).size() == 1);

    ConstraintSystem sys4 = build_constraints(4, 2, 6);
    // sum of dim J_{4,m} for m <= 2: 1 + 1 + 1
    CHECK(sys4.unknowns.size() == 3);
    CHECK(nullspace(sys4).size() == 1);
    CHECK(sys4.rows.size() == sys4.provenance.size());

    ConstraintSystem sys2 = build_constraints(2, 1, 6);
    CHECK(sys2.unknowns.empty());
    CHECK(nullspace(sys2).empty());
}

TEST_CASE("weight 4 basis identifies the Eisenstein series") {
    SymmetricBasis basis = symmetric_basis(4, 2);
    REQUIRE(basis.elements.size() == 1);
    const FourierJacobiPolynomial& f = basis.elements[0];
    CHECK(f.check_symmetry().passed);
    CHECK(f.coefficient(HalfIntMatrix{0, 0, 0}) == Rational(1));

    // phi operator lands on the divisor-sum E4
    CHECK(f.phi() == eisenstein(4, basis.trunc));

    // index-1 component is proportional to the normalized generator of J_{4,1}
    std::vector<JacobiExpansion> j41 = jacobi_basis(4, 1, basis.trunc);
    REQUIRE(j41.size() == 1);
    Rational scale = f.component(1).coeff_raw(0, 0);
    CHECK(scale == Rational(240)); // = c(phi_0; 1) by the swap symmetry
    CHECK((rational(1, 1) / scale) * f.component(1) == j41[0]);
}

TEST_CASE("weight 10 basis contains one cusp direction") {
    SymmetricBasis basis = symmetric_basis(10, 3);
    REQUIRE(basis.elements.size() == 2);
    int cusp_count = 0;
    for (const FourierJacobiPolynomial& f : basis.elements) {
        auto order = f.vanishing_order();
        REQUIRE(order.has_value());
        if (*order >= 1) {
            ++cusp_count;
            CHECK(*order == Rational(1));
            CHECK(f.phi().is_zero());
            // its first Fourier-Jacobi coefficient is the index-1 cusp form,
            // rescaled to match the echelon normalization c(1, 0) = 1
            std::vector<JacobiExpansion> j101 = jacobi_basis(10, 1, basis.trunc);
            REQUIRE(j101.size() == 2);
            const JacobiExpansion& jacobi_cusp =
                (j101[0].coeff_raw(0, 0) == 0) ? j101[0] : j101[1];
            CHECK(jacobi_cusp.coeff_raw(1, 0) == 1);
            Rational scale = f.component(1).coeff_raw(1, 0);
            REQUIRE(scale != 0);
            CHECK((1 / scale) * f.component(1) == jacobi_cusp);
        }
    }
    CHECK(cusp_count == 1);
}

TEST_CASE("dimension comparison against the reference table") {
    for (int k : {0, 2, 4, 6, 16, 20}) {
        DimComparison cmp = dim_check(k);
        CHECK(cmp.agree);
    }
    CHECK_THROWS_AS(dim_check(62), TableRangeExceeded);
}

TEST_CASE("weight 10 space already has full rank at precision 2") {
    CHECK(symmetric_basis(10, 2).elements.size() == 2);
}

TEST_CASE("phi images land in the elliptic modular forms") {
    for (int k : {4, 6, 8, 10, 12}) {
        SymmetricBasis basis = symmetric_basis(k, truncation_precision(k, 1) + 2);
        RationalMatrix span;
        for (const QExpansion& e : mk_basis(k, basis.trunc)) {
            std::vector<Rational> row;
            for (long j = 0; j <= basis.trunc; ++j)
                row.push_back(e.at(j));
            span.push_back(std::move(row));
        }
        for (const FourierJacobiPolynomial& f : basis.elements) {
            QExpansion image = f.phi();
            std::vector<Rational> row;
            for (long j = 0; j <= basis.trunc; ++j)
                row.push_back(image.at(j));
            CHECK(in_row_span(span, static_cast<size_t>(basis.trunc) + 1, row));
        }
    }
}

TEST_CASE("distinct bases may be computed concurrently") {
    std::vector<std::vector<JacobiExpansion>> serial;
    for (long m = 0; m <= 3; ++m)
        serial.push_back(jacobi_basis(12, m, 6));
    std::vector<std::vector<JacobiExpansion>> parallel(4);
    std::vector<std::thread> workers;
    for (long m = 0; m <= 3; ++m)
        workers.emplace_back(
            [&parallel, m] { parallel[static_cast<size_t>(m)] = jacobi_basis(12, m, 6); });
    for (std::thread& w : workers)
        w.join();
    for (long m = 0; m <= 3; ++m)
        CHECK(parallel[static_cast<size_t>(m)] == serial[static_cast<size_t>(m)]);
}

TEST_CASE("nullspace determinism") {
    SymmetricBasis a = symmetric_basis(10, 3);
    SymmetricBasis b = symmetric_basis(10, 3);
    REQUIRE(a.elements.size() == b.elements.size());
    for (std::size_t i = 0; i < a.elements.size(); ++i)
        CHECK(a.elements[i] == b.elements[i]);
}

TEST_CASE("products of basis elements stay in the symmetric span") {
    SymmetricBasis w4 = symmetric_basis(4, 2);
    SymmetricBasis w8 = symmetric_basis(8, 2);
    REQUIRE(w4.elements.size() == 1);
    REQUIRE(w8.elements.size() == 1);
    FourierJacobiPolynomial sq = w4.elements[0] * w4.elements[0];
    CHECK(sq.check_symmetry().passed);

    std::vector<const FourierJacobiPolynomial*> all = {&w8.elements[0], &sq};
    auto keys = key_union(all);
    RationalMatrix span = {flatten(w8.elements[0], keys)};
    CHECK(in_row_span(span, keys.size(), flatten(sq, keys)));
}

TEST_CASE("coefficient-level symmetry for sampled unimodular matrices") {
    SymmetricBasis basis = symmetric_basis(10, 3);
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> len(0, 4);
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<long> lam(-2, 2);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        Unimodular u = unimodular_identity();
        int steps = len(rng);
        for (int i = 0; i < steps; ++i)
            switch (pick(rng)) {
            case 0: u = mul(u, unimodular_swap()); break;
            case 1: u = mul(u, unimodular_flip()); break;
            default: u = mul(u, Unimodular{1, lam(rng), 0, 1}); break;
            }
        for (const FourierJacobiPolynomial& f : basis.elements)
            for (long m = 0; m <= basis.precision; ++m)
                for (long n = 0; n <= m; ++n)
                    for (long r = 0; r * r <= 4 * n * m; ++r) {
                        HalfIntMatrix t{n, r, m};
                        HalfIntMatrix s = act(u, t);
                        if (s.m > basis.precision || s.n > basis.trunc)
                            continue;
                        Rational lhs = f.coefficient(t);
                        Rational rhs = f.coefficient(s);
                        if (u.det() < 0 && basis.weight % 2 != 0)
                            rhs = -rhs;
                        CHECK(lhs == rhs);
                        ++checked;
                    }
    }
    CHECK(checked >= 200);
}
