// fjsolve: compute genus-2 Siegel modular form bases as symmetric
// Fourier-Jacobi polynomials, and work with the associated expansions.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fjf/bounds.hpp"
#include "fjf/errors.hpp"
#include "fjf/forms.hpp"
#include "fjf/io.hpp"
#include "fjf/solver.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw fjf::Error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

fjf::Document load_document(const std::string& path) {
    return fjf::deserialize(read_file(path));
}

fjf::DimensionTable resolve_dim_table(const std::string& flag_path) {
    std::string path = flag_path;
    if (path.empty())
        if (const char* env = std::getenv("FJSOLVE_DIM_TABLE"))
            path = env;
    if (path.empty())
        return fjf::DimensionTable::igusa_default();
    return fjf::DimensionTable::parse(read_file(path));
}

std::string show_matrix(const fjf::HalfIntMatrix& t) {
    return "(" + std::to_string(t.n) + ", " + std::to_string(t.r) + ", " + std::to_string(t.m) + ")";
}

std::string show_unimodular(const fjf::Unimodular& u) {
    return "[[" + std::to_string(u.a) + ", " + std::to_string(u.b) + "], [" + std::to_string(u.c) +
           ", " + std::to_string(u.d) + "]]";
}

int report_symmetry(const fjf::FourierJacobiPolynomial& f, const std::string& label) {
    fjf::SymmetryReport report = f.check_symmetry();
    for (const fjf::SymmetryWitness& w : report.witnesses)
        std::cerr << "witness" << (label.empty() ? "" : " " + label) << " t=" << show_matrix(w.t)
                  << " u=" << show_unimodular(w.u) << " lhs=" << fjf::to_fraction_string(w.lhs)
                  << " rhs=" << fjf::to_fraction_string(w.rhs) << "\n";
    return report.passed ? kExitSuccess : kExitVerificationFailure;
}

int run(int argc, char** argv) {
    CLI::App app{"symmetric Fourier-Jacobi polynomial computations at genus 2"};
    app.require_subcommand(1);

    auto* cmd_basis = app.add_subcommand("basis", "compute a symmetric basis document");
    int basis_weight = 0;
    long basis_precision = -1, basis_trunc = -1;
    cmd_basis->add_option("--weight", basis_weight, "even weight")->required();
    cmd_basis->add_option("--precision", basis_precision, "number of Fourier-Jacobi components minus one")
        ->required();
    cmd_basis->add_option("--truncation", basis_trunc, "q-expansion truncation (default max(B, 6))");

    auto* cmd_dim = app.add_subcommand("dim-check", "compare a computed dimension with the reference table");
    int dim_weight = 0;
    std::string dim_table_path;
    cmd_dim->add_option("--weight", dim_weight, "even weight")->required();
    cmd_dim->add_option("--dim-table", dim_table_path, "reference dimension table file");

    auto* cmd_verify = app.add_subcommand("verify-symmetry", "check the symmetry condition of a document");
    std::string verify_path;
    cmd_verify->add_option("file", verify_path, "fjpolynomial or basis document")->required();

    auto* cmd_phi = app.add_subcommand("phi", "index-0 component of a polynomial as a q-expansion");
    std::string phi_path;
    cmd_phi->add_option("file", phi_path, "fjpolynomial document")->required();

    auto* cmd_theta = app.add_subcommand("theta-decompose", "theta decomposition of a Jacobi document");
    std::string theta_path;
    cmd_theta->add_option("file", theta_path, "jacobi document")->required();

    auto* cmd_mul = app.add_subcommand("multiply", "product of two documents of the same kind");
    std::string mul_path1, mul_path2;
    cmd_mul->add_option("file1", mul_path1)->required();
    cmd_mul->add_option("file2", mul_path2)->required();

    auto* cmd_order = app.add_subcommand("order", "vanishing order of a polynomial document");
    std::string order_path;
    cmd_order->add_option("file", order_path, "fjpolynomial document")->required();

    auto* cmd_slope = app.add_subcommand("slope", "slope of the genus-g modular forms");
    int slope_genus = 0;
    cmd_slope->add_option("--genus", slope_genus, "genus")->required();

    auto* cmd_reduce = app.add_subcommand("reduce", "GL2(Z)-reduce a half-integral matrix (n, r, m)");
    long red_n = 0, red_r = 0, red_m = 0;
    cmd_reduce->add_option("--n", red_n)->required();
    cmd_reduce->add_option("--r", red_r)->required();
    cmd_reduce->add_option("--m", red_m)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_basis->parsed()) {
        if (basis_trunc < 0)
            basis_trunc = std::max(basis_precision, 6L);
        fjf::SymmetricBasis basis = fjf::symmetric_basis(basis_weight, basis_precision, basis_trunc);
        std::ostringstream meta;
        meta << "fjsolve basis --weight " << basis_weight << " --precision " << basis_precision
             << " --truncation " << basis_trunc;
        std::cout << fjf::serialize(basis, {meta.str()});
        return kExitSuccess;
    }

    if (cmd_dim->parsed()) {
        fjf::DimensionTable table = resolve_dim_table(dim_table_path);
        fjf::DimComparison cmp = fjf::dim_check(dim_weight, table);
        std::cout << "weight " << dim_weight << "\n";
        std::cout << "computed " << cmp.computed << "\n";
        std::cout << "reference " << cmp.reference << "\n";
        std::cout << (cmp.agree ? "AGREE" : "DISAGREE") << "\n";
        return cmp.agree ? kExitSuccess : kExitVerificationFailure;
    }

    if (cmd_verify->parsed()) {
        fjf::Document doc = load_document(verify_path);
        if (const auto* f = std::get_if<fjf::FourierJacobiPolynomial>(&doc.value)) {
            int code = report_symmetry(*f, "");
            std::cout << (code == kExitSuccess ? "symmetry OK" : "symmetry FAILED") << "\n";
            return code;
        }
        if (const auto* basis = std::get_if<fjf::SymmetricBasis>(&doc.value)) {
            int code = kExitSuccess;
            for (std::size_t i = 0; i < basis->elements.size(); ++i)
                if (report_symmetry(basis->elements[i], "element=" + std::to_string(i)) != kExitSuccess)
                    code = kExitVerificationFailure;
            std::cout << (code == kExitSuccess ? "symmetry OK" : "symmetry FAILED") << "\n";
            return code;
        }
        std::cerr << "verify-symmetry expects an fjpolynomial or basis document\n";
        return kExitUsage;
    }

    if (cmd_phi->parsed()) {
        fjf::Document doc = load_document(phi_path);
        const auto* f = std::get_if<fjf::FourierJacobiPolynomial>(&doc.value);
        if (!f) {
            std::cerr << "phi expects an fjpolynomial document\n";
            return kExitUsage;
        }
        std::cout << fjf::serialize(f->phi());
        return kExitSuccess;
    }

    if (cmd_theta->parsed()) {
        fjf::Document doc = load_document(theta_path);
        const auto* phi = std::get_if<fjf::JacobiExpansion>(&doc.value);
        if (!phi) {
            std::cerr << "theta-decompose expects a jacobi document\n";
            return kExitUsage;
        }
        fjf::ThetaDecomposition dec = fjf::theta_decompose(*phi);
        for (long mu = 0; mu < 2 * dec.index; ++mu)
            std::cout << fjf::serialize(dec.components[static_cast<size_t>(mu)],
                                        {"component " + std::to_string(mu)});
        return kExitSuccess;
    }

    if (cmd_mul->parsed()) {
        fjf::Document doc1 = load_document(mul_path1);
        fjf::Document doc2 = load_document(mul_path2);
        if (doc1.value.index() != doc2.value.index()) {
            std::cerr << "multiply expects two documents of the same kind\n";
            return kExitUsage;
        }
        if (const auto* f = std::get_if<fjf::QExpansion>(&doc1.value)) {
            std::cout << fjf::serialize(*f * std::get<fjf::QExpansion>(doc2.value));
            return kExitSuccess;
        }
        if (const auto* f = std::get_if<fjf::JacobiExpansion>(&doc1.value)) {
            std::cout << fjf::serialize(*f * std::get<fjf::JacobiExpansion>(doc2.value));
            return kExitSuccess;
        }
        if (const auto* f = std::get_if<fjf::FourierJacobiPolynomial>(&doc1.value)) {
            std::cout << fjf::serialize(*f * std::get<fjf::FourierJacobiPolynomial>(doc2.value));
            return kExitSuccess;
        }
        std::cerr << "multiply supports qexpansion, jacobi and fjpolynomial documents\n";
        return kExitUsage;
    }

    if (cmd_order->parsed()) {
        fjf::Document doc = load_document(order_path);
        const auto* f = std::get_if<fjf::FourierJacobiPolynomial>(&doc.value);
        if (!f) {
            std::cerr << "order expects an fjpolynomial document\n";
            return kExitUsage;
        }
        std::optional<fjf::Rational> order = f->vanishing_order();
        std::cout << "order " << (order ? fjf::to_fraction_string(*order) : "infinity") << "\n";
        return kExitSuccess;
    }

    if (cmd_slope->parsed()) {
        fjf::SlopeValue s = fjf::slope(slope_genus);
        std::cout << "genus " << s.genus << "\n";
        std::cout << "slope " << (s.exact ? fjf::to_fraction_string(*s.exact) : "unknown") << "\n";
        std::cout << "lower-bound " << fjf::to_fraction_string(s.lower_bound) << "\n";
        return kExitSuccess;
    }

    if (cmd_reduce->parsed()) {
        auto [red, u] = fjf::reduce(fjf::HalfIntMatrix{red_n, red_r, red_m});
        std::cout << "reduced " << red.n << " " << red.r << " " << red.m << "\n";
        std::cout << "transform " << u.a << " " << u.b << " " << u.c << " " << u.d << "\n";
        return kExitSuccess;
    }

    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fjf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fjf::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fjf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
