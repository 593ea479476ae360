#include "fjf/solver.hpp"

#include <algorithm>
#include <sstream>

#include "fjf/bounds.hpp"
#include "fjf/errors.hpp"

namespace fjf {

long DimensionTable::at(long weight) const {
    if (weight < 0 || weight > max_weight)
        throw TableRangeExceeded("weight " + std::to_string(weight) +
                                 " outside the dimension table range [0, " +
                                 std::to_string(max_weight) + "]");
    if (weight % 2 != 0)
        throw TableRangeExceeded("the dimension table covers even weights only");
    auto it = dims.find(weight);
    return it == dims.end() ? 0 : it->second;
}

DimensionTable DimensionTable::igusa_default(long max_weight) {
    // Power series expansion of 1/((1-t^4)(1-t^6)(1-t^10)(1-t^12)).
    std::vector<long> series(static_cast<size_t>(max_weight) + 1, 0);
    series[0] = 1;
    for (long gen : {4, 6, 10, 12})
        for (long w = gen; w <= max_weight; ++w)
            series[static_cast<size_t>(w)] += series[static_cast<size_t>(w - gen)];
    DimensionTable table;
    table.max_weight = max_weight;
    for (long w = 0; w <= max_weight; w += 2)
        table.dims[w] = series[static_cast<size_t>(w)];
    return table;
}

DimensionTable DimensionTable::parse(const std::string& text) {
    DimensionTable table;
    table.max_weight = -1;
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.resize(hash);
        std::istringstream fields(line);
        long weight, dim;
        if (!(fields >> weight))
            continue; // blank or comment-only line
        if (!(fields >> dim) || weight < 0 || dim < 0 || weight % 2 != 0)
            throw ParseError("dimension table line " + std::to_string(lineno) +
                             ": expected \"<even weight> <dimension>\"");
        table.dims[weight] = dim;
        table.max_weight = std::max(table.max_weight, weight);
    }
    if (table.max_weight < 0)
        throw ParseError("dimension table is empty");
    return table;
}

ConstraintSystem build_constraints(int weight, long precision, long trunc) {
    if (weight < 0 || weight % 2 != 0)
        throw OddWeightUnsupported("the solver covers even nonnegative weights, got " +
                                   std::to_string(weight));
    if (trunc < precision)
        throw Error("truncation below precision");

    ConstraintSystem sys;
    sys.weight = weight;
    sys.precision = precision;
    sys.trunc = trunc;
    for (long m = 0; m <= precision; ++m) {
        sys.bases.push_back(jacobi_basis(weight, m, trunc));
        for (long i = 0; i < static_cast<long>(sys.bases.back().size()); ++i)
            sys.unknowns.emplace_back(m, i);
    }

    // The coefficient of f at t as a linear form in the unknowns: only the
    // coordinates of component t.m contribute.
    auto coefficient_form = [&](const HalfIntMatrix& t) {
        std::vector<Rational> form(sys.unknowns.size(), Rational(0));
        for (std::size_t j = 0; j < sys.unknowns.size(); ++j) {
            auto [m, i] = sys.unknowns[j];
            if (m != t.m)
                continue;
            form[j] = sys.bases[static_cast<size_t>(m)][static_cast<size_t>(i)].coeff_raw(t.n, t.r);
        }
        return form;
    };

    const Unimodular generators[] = {unimodular_swap(), unimodular_flip()};
    for (long m = 0; m <= precision; ++m)
        for (long n = 0; n <= m; ++n) {
            long rmax = 0;
            while ((rmax + 1) * (rmax + 1) <= 4 * n * m)
                ++rmax;
            for (long r = -rmax; r <= rmax; ++r) {
                HalfIntMatrix t{n, r, m};
                std::vector<Rational> lhs = coefficient_form(t);
                for (const Unimodular& u : generators) {
                    std::vector<Rational> row = coefficient_form(act(u, t));
                    bool negate = u.det() < 0 && weight % 2 != 0;
                    bool nonzero = false;
                    for (std::size_t j = 0; j < row.size(); ++j) {
                        row[j] = lhs[j] - (negate ? -row[j] : row[j]);
                        nonzero = nonzero || row[j] != 0;
                    }
                    if (!nonzero)
                        continue;
                    sys.rows.push_back(std::move(row));
                    sys.provenance.emplace_back(t, u);
                }
            }
        }
    return sys;
}

std::vector<std::vector<Rational>> nullspace(const ConstraintSystem& sys) {
    return nullspace_basis(sys.rows, sys.unknowns.size());
}

namespace {

// Flatten polynomials to coefficient vectors over a shared key enumeration
// ordered by (component, smallest exponent, residue, discriminant), so that
// row reduction echelonizes by leading Fourier coefficient.  In particular an
// element whose low components vanish identically comes out with them exactly
// zero.
std::vector<FourierJacobiPolynomial> echelonize_elements(
    int weight, long precision, long trunc, const std::vector<FourierJacobiPolynomial>& elements) {
    if (elements.empty())
        return elements;
    std::vector<std::pair<long, JacobiClassKey>> keys;
    for (long m = 0; m <= precision; ++m) {
        std::vector<JacobiClassKey> component_keys;
        for (const FourierJacobiPolynomial& f : elements)
            for (const auto& [key, value] : f.component(m).coeff)
                component_keys.push_back(key);
        std::sort(component_keys.begin(), component_keys.end());
        component_keys.erase(std::unique(component_keys.begin(), component_keys.end()),
                             component_keys.end());
        const JacobiExpansion& ref = elements.front().component(m);
        std::stable_sort(component_keys.begin(), component_keys.end(),
                         [&](const JacobiClassKey& x, const JacobiClassKey& y) {
                             return std::make_tuple(ref.class_min_key(x), x.rho, x.d) <
                                    std::make_tuple(ref.class_min_key(y), y.rho, y.d);
                         });
        for (const JacobiClassKey& key : component_keys)
            keys.emplace_back(m, key);
    }

    RationalMatrix flat;
    for (const FourierJacobiPolynomial& f : elements) {
        std::vector<Rational> row;
        row.reserve(keys.size());
        for (const auto& [m, key] : keys)
            row.push_back(f.component(m).coeff_class(key));
        flat.push_back(std::move(row));
    }
    EchelonForm e = reduced_row_echelon(flat, keys.size());

    std::vector<FourierJacobiPolynomial> out;
    for (const auto& row : e.rows) {
        std::vector<JacobiExpansion> comps;
        for (long m = 0; m <= precision; ++m)
            comps.emplace_back(weight, m, 1, trunc, true);
        for (std::size_t j = 0; j < keys.size(); ++j)
            if (row[j] != 0)
                comps[static_cast<size_t>(keys[j].first)].coeff.emplace(keys[j].second, row[j]);
        out.push_back(FourierJacobiPolynomial::construct(weight, precision, std::move(comps)));
    }
    return out;
}

} // namespace

SymmetricBasis symmetric_basis(int weight, long precision, long trunc) {
    if (trunc < 0)
        trunc = std::max(precision, 6L);
    ConstraintSystem sys = build_constraints(weight, precision, trunc);
    SymmetricBasis basis;
    basis.weight = weight;
    basis.precision = precision;
    basis.trunc = trunc;
    std::vector<FourierJacobiPolynomial> assembled;
    for (const std::vector<Rational>& v : nullspace(sys)) {
        std::vector<JacobiExpansion> comps;
        for (long m = 0; m <= precision; ++m)
            comps.emplace_back(weight, m, 1, trunc, true);
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] == 0)
                continue;
            auto [m, i] = sys.unknowns[j];
            comps[static_cast<size_t>(m)] =
                comps[static_cast<size_t>(m)] +
                v[j] * sys.bases[static_cast<size_t>(m)][static_cast<size_t>(i)];
        }
        assembled.push_back(FourierJacobiPolynomial::construct(weight, precision, std::move(comps)));
    }
    basis.elements = echelonize_elements(weight, precision, trunc, assembled);
    for (const FourierJacobiPolynomial& f : basis.elements)
        if (!f.check_symmetry().passed)
            throw Error("solver produced a non-symmetric element");
    return basis;
}

DimComparison dim_check(int weight, const DimensionTable& table) {
    DimComparison cmp;
    cmp.reference = table.at(weight); // range check before the heavy work
    long precision = truncation_precision(weight, 1) + 2;
    long trunc = std::max(precision, 6L);
    cmp.computed = static_cast<long>(symmetric_basis(weight, precision, trunc).elements.size());
    cmp.agree = cmp.computed == cmp.reference;
    return cmp;
}

} // namespace fjf
