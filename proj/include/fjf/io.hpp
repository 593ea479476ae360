#ifndef FJF_IO_HPP
#define FJF_IO_HPP

#include <string>
#include <variant>
#include <vector>

#include "fjf/formal.hpp"
#include "fjf/jacobi.hpp"
#include "fjf/qexp.hpp"
#include "fjf/solver.hpp"

namespace fjf {

// Canonical text documents for the four object kinds.  The format is line
// based and deterministic: fixed header field order, entries sorted by
// (m, n, r), one canonical class representative per entry, rationals rendered
// "p/q" in lowest terms with positive denominator, no zero entries.  A
// canonical document re-serializes byte for byte.
struct Document {
    std::vector<std::string> metadata;
    std::variant<QExpansion, JacobiExpansion, FourierJacobiPolynomial, SymmetricBasis> value;
};

std::string serialize(const QExpansion& f, const std::vector<std::string>& metadata = {});
std::string serialize(const JacobiExpansion& phi, const std::vector<std::string>& metadata = {});
std::string serialize(const FourierJacobiPolynomial& f, const std::vector<std::string>& metadata = {});
std::string serialize(const SymmetricBasis& basis, const std::vector<std::string>& metadata = {});
std::string serialize(const Document& doc);

// Parses and fully revalidates a document.  Throws ParseError for malformed
// text and ValidationError, naming the first failing invariant, for
// well-formed text describing an invalid object.  The symmetry property of
// polynomials and bases is deliberately not enforced here; it is the job of
// check_symmetry (and the verify-symmetry command) to report on it.
Document deserialize(const std::string& text);

} // namespace fjf

#endif
