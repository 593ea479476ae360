#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "fjf/errors.hpp"
#include "fjf/io.hpp"
#include "fjf/solver.hpp"

using namespace fjf;

namespace {

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
    auto pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    return text.replace(pos, from.size(), to);
}

} // namespace

TEST_CASE("q-expansion documents round trip") {
    std::string doc = serialize(eisenstein(4, 6), {"hand-written fixture"});
    Document parsed = deserialize(doc);
    CHECK(std::get<QExpansion>(parsed.value) == eisenstein(4, 6));
    CHECK(serialize(parsed) == doc);

    QExpansion zero(8, 1, 4);
    std::string zero_doc = serialize(zero);
    CHECK(zero_doc.find("entries 0\n") != std::string::npos);
    CHECK(serialize(deserialize(zero_doc)) == zero_doc);
}

TEST_CASE("jacobi documents round trip") {
    auto [gen_a, gen_b] = weak_generators(5);
    for (const JacobiExpansion& phi : {gen_a, gen_b}) {
        std::string doc = serialize(phi);
        Document parsed = deserialize(doc);
        CHECK(std::get<JacobiExpansion>(parsed.value) == phi);
        CHECK(serialize(parsed) == doc);
    }
    // scaled grid (theta component)
    JacobiExpansion theta = theta_component({2, 3}, 4);
    std::string doc = serialize(theta);
    CHECK(std::get<JacobiExpansion>(deserialize(doc).value) == theta);
    CHECK(serialize(deserialize(doc)) == doc);
}

TEST_CASE("polynomial and basis documents round trip") {
    SymmetricBasis basis = symmetric_basis(10, 3);
    std::string basis_doc = serialize(basis, {"solver weight=10 precision=3"});
    Document parsed = deserialize(basis_doc);
    const auto& loaded = std::get<SymmetricBasis>(parsed.value);
    REQUIRE(loaded.elements.size() == basis.elements.size());
    for (std::size_t i = 0; i < loaded.elements.size(); ++i) {
        CHECK(loaded.elements[i] == basis.elements[i]);
        CHECK(loaded.elements[i].check_symmetry().passed);
    }
    CHECK(serialize(parsed) == basis_doc);

    std::string poly_doc = serialize(basis.elements[0]);
    CHECK(std::get<FourierJacobiPolynomial>(deserialize(poly_doc).value) == basis.elements[0]);
    CHECK(serialize(deserialize(poly_doc)) == poly_doc);
}

TEST_CASE("format violations are rejected with named invariants") {
    std::string doc = serialize(eisenstein(4, 4));

    // value not in lowest terms
    std::string not_reduced = replace_once(doc, "1 240/1", "1 480/2");
    CHECK_THROWS_WITH_AS(deserialize(not_reduced), doctest::Contains("lowest terms"),
                         ValidationError);

    // unsorted entries: swap the first two entry lines
    std::string unsorted = replace_once(doc, "0 1/1\n1 240/1", "1 240/1\n0 1/1");
    CHECK_THROWS_WITH_AS(deserialize(unsorted), doctest::Contains("sorted"), ValidationError);

    // zero entry
    std::string zero_entry = replace_once(doc, "1 240/1", "1 0/1");
    CHECK_THROWS_AS(deserialize(zero_entry), ValidationError);

    // bad version
    CHECK_THROWS_AS(deserialize(replace_once(doc, "fjdoc 1", "fjdoc 2")), ParseError);

    // unknown kind
    CHECK_THROWS_AS(deserialize(replace_once(doc, "kind qexpansion", "kind spectrum")), ParseError);

    // truncated document
    CHECK_THROWS_AS(deserialize(doc.substr(0, doc.size() / 2)), ParseError);

    // missing trailing newline
    CHECK_THROWS_AS(deserialize(doc.substr(0, doc.size() - 1)), ParseError);
}

TEST_CASE("non-canonical jacobi keys are rejected") {
    // (2, 2) lies in the class of (1, 0); only the smallest representative is
    // a legal key.
    std::string forged =
        "fjdoc 1\n"
        "kind jacobi\n"
        "weight 4\n"
        "index 1\n"
        "scale 1\n"
        "truncation 6\n"
        "holomorphic 1\n"
        "entries 2\n"
        "0 0 1/1\n"
        "2 2 5/1\n";
    CHECK_THROWS_WITH_AS(deserialize(forged), doctest::Contains("canonical"), ValidationError);
}

TEST_CASE("perturbed basis documents load but fail the symmetry check") {
    SymmetricBasis basis = symmetric_basis(4, 2);
    std::string doc = serialize(basis);
    // the index-1 component of the Eisenstein element has c(0,0) = 240
    std::string perturbed = replace_once(doc, "1 0 0 240/1", "1 0 0 241/1");
    Document parsed = deserialize(perturbed);
    const auto& loaded = std::get<SymmetricBasis>(parsed.value);
    REQUIRE(loaded.elements.size() == 1);
    SymmetryReport report = loaded.elements[0].check_symmetry();
    CHECK(!report.passed);
    CHECK(!report.witnesses.empty());
}

TEST_CASE("weak class whose smallest member needs a shifted residue") {
    // Index 4, class (D, rho) = (-16, 0): the lambda = 0 member would sit at
    // exponent -1, so the canonical representative is (3, 8).
    std::map<std::pair<long, long>, Rational> raw;
    raw[{3, 8}] = Rational(5);
    raw[{3, -8}] = Rational(5);
    JacobiExpansion phi = jacobi_from_raw(0, 4, 1, 3, false, raw);
    REQUIRE(phi.coeff.size() == 1);
    CHECK(phi.coeff.begin()->first == JacobiClassKey{-16, 0});
    std::string doc = serialize(phi);
    CHECK(doc.find("3 8 5/1\n") != std::string::npos);
    CHECK(std::get<JacobiExpansion>(deserialize(doc).value) == phi);
    CHECK(serialize(deserialize(doc)) == doc);
}

TEST_CASE("dependent basis elements are rejected") {
    SymmetricBasis basis = symmetric_basis(4, 2);
    std::string doc = serialize(basis);
    // duplicate the single element block
    auto pos = doc.find("count 1");
    REQUIRE(pos != std::string::npos);
    doc.replace(pos, 7, "count 2");
    auto elem = doc.find("element 0");
    std::string block = doc.substr(elem);
    std::string copy = block;
    copy.replace(copy.find("element 0"), 9, "element 1");
    doc += copy;
    CHECK_THROWS_WITH_AS(deserialize(doc), doctest::Contains("independent"), ValidationError);
}

TEST_CASE("component mismatch on load") {
    SymmetricBasis basis = symmetric_basis(4, 2);
    std::string doc = serialize(basis.elements[0]);
    std::string bad = replace_once(doc, "precision 2", "precision 1");
    // entries for component 2 are now out of range
    CHECK_THROWS_AS(deserialize(bad), ValidationError);
}
