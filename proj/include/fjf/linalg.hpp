#ifndef FJF_LINALG_HPP
#define FJF_LINALG_HPP

#include <cstddef>
#include <vector>

#include "fjf/rational.hpp"

namespace fjf {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct EchelonForm {
    RationalMatrix rows;              // reduced row echelon form, rank many rows
    std::vector<std::size_t> pivots;  // pivot column of each row, strictly increasing
    std::size_t cols = 0;

    std::size_t rank() const { return rows.size(); }
};

// Reduced row echelon form via fraction-free (integer, division-minimizing)
// forward elimination with deterministic pivoting: first nonzero column,
// smallest row index.  Identical inputs give identical output.
EchelonForm reduced_row_echelon(RationalMatrix rows, std::size_t cols);

// Canonical basis of {v : A v = 0}, one vector per free column of the RREF,
// ordered by free column index.
std::vector<std::vector<Rational>> nullspace_basis(const RationalMatrix& rows, std::size_t cols);

std::size_t rank(const RationalMatrix& rows, std::size_t cols);

// True iff v lies in the row span of the given rows.
bool in_row_span(const RationalMatrix& rows, std::size_t cols, const std::vector<Rational>& v);

} // namespace fjf

#endif
