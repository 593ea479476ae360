#include "fjf/linalg.hpp"

#include <algorithm>

namespace fjf {

namespace {

using IntegerRow = std::vector<Integer>;

// Clear denominators and divide out the content, keeping signs.
IntegerRow to_primitive_integer_row(const std::vector<Rational>& row) {
    Integer lcm(1);
    for (const Rational& x : row)
        if (x != 0)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    IntegerRow out(row.size());
    Integer content(0);
    for (std::size_t j = 0; j < row.size(); ++j) {
        out[j] = row[j].get_num() * (lcm / row[j].get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), out[j].get_mpz_t());
    }
    if (content > 1)
        for (Integer& x : out)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
    return out;
}

void reduce_content(IntegerRow& row) {
    Integer content(0);
    for (const Integer& x : row)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
    if (content > 1)
        for (Integer& x : row)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), content.get_mpz_t());
}

} // namespace

EchelonForm reduced_row_echelon(RationalMatrix input, std::size_t cols) {
    std::vector<IntegerRow> work;
    work.reserve(input.size());
    for (const auto& row : input)
        work.push_back(to_primitive_integer_row(row));

    // Forward elimination, fraction-free: rows stay integral, content divided
    // out after every combination.
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < cols && next_row < work.size(); ++col) {
        std::size_t pivot_row = next_row;
        while (pivot_row < work.size() && work[pivot_row][col] == 0)
            ++pivot_row;
        if (pivot_row == work.size())
            continue;
        std::swap(work[next_row], work[pivot_row]);
        const IntegerRow& p = work[next_row];
        for (std::size_t i = next_row + 1; i < work.size(); ++i) {
            if (work[i][col] == 0)
                continue;
            Integer factor = work[i][col];
            for (std::size_t j = col; j < cols; ++j)
                work[i][j] = work[i][j] * p[col] - p[j] * factor;
            reduce_content(work[i]);
        }
        pivots.push_back(col);
        ++next_row;
    }
    work.resize(pivots.size());

    // Back substitution over the rationals yields the canonical RREF.
    EchelonForm out;
    out.cols = cols;
    out.pivots = pivots;
    out.rows.assign(pivots.size(), std::vector<Rational>(cols, Rational(0)));
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            out.rows[i][j] = Rational(work[i][j]);
    for (std::size_t ii = pivots.size(); ii-- > 0;) {
        std::vector<Rational>& row = out.rows[ii];
        Rational inv = 1 / row[pivots[ii]];
        for (std::size_t j = pivots[ii]; j < cols; ++j)
            row[j] *= inv;
        for (std::size_t k = 0; k < ii; ++k) {
            Rational factor = out.rows[k][pivots[ii]];
            if (factor == 0)
                continue;
            for (std::size_t j = pivots[ii]; j < cols; ++j)
                out.rows[k][j] -= factor * row[j];
        }
    }
    return out;
}

std::vector<std::vector<Rational>> nullspace_basis(const RationalMatrix& rows, std::size_t cols) {
    EchelonForm e = reduced_row_echelon(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : e.pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][f];
        // normalize the leading coordinate to +1
        for (std::size_t j = 0; j < cols; ++j)
            if (v[j] != 0) {
                Rational lead = v[j];
                for (std::size_t l = j; l < cols; ++l)
                    v[l] /= lead;
                break;
            }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank(const RationalMatrix& rows, std::size_t cols) {
    return reduced_row_echelon(rows, cols).rank();
}

bool in_row_span(const RationalMatrix& rows, std::size_t cols, const std::vector<Rational>& v) {
    std::size_t base = rank(rows, cols);
    RationalMatrix extended = rows;
    extended.push_back(v);
    return rank(extended, cols) == base;
}

} // namespace fjf
