#ifndef FJF_SOLVER_HPP
#define FJF_SOLVER_HPP

#include <map>
#include <string>
#include <vector>

#include "fjf/formal.hpp"
#include "fjf/forms.hpp"
#include "fjf/jacobi.hpp"
#include "fjf/linalg.hpp"

namespace fjf {

// Reference dimensions of the genus-2 scalar modular forms of even weight.
// This is external input to the solver, quarantined as configuration: the
// default is generated from Igusa's structure theorem (the graded ring is
// freely generated in even weight by forms of weights 4, 6, 10, 12, so the
// dimensions are the coefficients of 1/((1-t^4)(1-t^6)(1-t^10)(1-t^12))).
struct DimensionTable {
    long max_weight = 0;
    std::map<long, long> dims; // even weight -> dimension

    // throws TableRangeExceeded outside [0, max_weight] or for odd weight
    long at(long weight) const;

    static DimensionTable igusa_default(long max_weight = 60);

    // Text format: one "<weight> <dimension>" pair per line, '#' comments.
    static DimensionTable parse(const std::string& text);
};

// Unknowns are coordinates over the Jacobi bases J_{k,m}, 0 <= m <= B; one
// row per (t, generator) pair from the symmetry enumeration, expressing
// c(f; t) - det(u)^k c(f; u^T t u) = 0.
struct ConstraintSystem {
    int weight = 0;
    long precision = 0;
    long trunc = 0;
    std::vector<std::vector<JacobiExpansion>> bases;   // bases[m] = jacobi_basis(k, m, N)
    std::vector<std::pair<long, long>> unknowns;       // (m, position in bases[m])
    RationalMatrix rows;
    std::vector<std::pair<HalfIntMatrix, Unimodular>> provenance; // per row
};

ConstraintSystem build_constraints(int weight, long precision, long trunc);

// Basis of the exact rational nullspace of the system, echelonized; vectors
// are indexed like sys.unknowns.
std::vector<std::vector<Rational>> nullspace(const ConstraintSystem& sys);

struct SymmetricBasis {
    int weight = 0;
    long precision = 0;
    long trunc = 0;
    std::vector<FourierJacobiPolynomial> elements;
};

// The space of symmetric formal Fourier-Jacobi polynomials of genus 2 and
// even weight k to precision B, as assembled nullspace solutions.  Every
// element passes check_symmetry.  trunc < 0 selects the default max(B, 6).
SymmetricBasis symmetric_basis(int weight, long precision, long trunc = -1);

struct DimComparison {
    long computed = 0;
    long reference = 0;
    bool agree = false;
};

// Computed dimension at precision truncation_precision(k, 1) + 2 against the
// reference table.
DimComparison dim_check(int weight, const DimensionTable& table = DimensionTable::igusa_default());

} // namespace fjf

#endif
