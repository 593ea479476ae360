#include "fjf/io.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "fjf/errors.hpp"
#include "fjf/linalg.hpp"

namespace fjf {

namespace {

// ---------------------------------------------------------------------------
// Writing

// Canonical display representative of a coefficient class: the member with
// the smallest exponent, ties in r broken towards the positive sign.
std::pair<long, long> display_key(const JacobiExpansion& phi, const JacobiClassKey& key) {
    if (phi.index == 0)
        return {key.d, 0};
    long n_min = phi.class_min_key(key);
    if (key.d + key.rho * key.rho >= 0)
        return {n_min, key.rho};
    long two_m = 2 * phi.index;
    auto ceil_div = [](long a, long b) { return (a >= 0) ? (a + b - 1) / b : -((-a) / b); };
    long bound = 0;
    while (bound * bound < -key.d)
        ++bound;
    long r_pos = key.rho + two_m * ceil_div(bound - key.rho, two_m);
    long r_neg = key.rho - two_m * ceil_div(key.rho + bound, two_m);
    long r = (r_pos * r_pos <= r_neg * r_neg) ? r_pos : r_neg;
    return {n_min, r};
}

struct Entry {
    long m, n, r;
    Rational value;
};

std::vector<Entry> jacobi_entries(const JacobiExpansion& phi, long component) {
    std::vector<Entry> entries;
    for (const auto& [key, value] : phi.coeff) {
        auto [n, r] = display_key(phi, key);
        entries.push_back({component, n, r, value});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
        return std::tie(x.m, x.n, x.r) < std::tie(y.m, y.n, y.r);
    });
    return entries;
}

void write_header(std::ostream& out, const std::string& kind,
                  const std::vector<std::string>& metadata) {
    out << "fjdoc 1\n";
    out << "kind " << kind << "\n";
    for (const std::string& m : metadata)
        out << "meta " << m << "\n";
}

void write_entries(std::ostream& out, const std::vector<Entry>& entries, bool with_m, bool with_r) {
    out << "entries " << entries.size() << "\n";
    for (const Entry& e : entries) {
        if (with_m)
            out << e.m << " ";
        out << e.n << " ";
        if (with_r)
            out << e.r << " ";
        out << to_fraction_string(e.value) << "\n";
    }
}

void write_polynomial_entries(std::ostream& out, const FourierJacobiPolynomial& f) {
    std::vector<Entry> entries;
    for (long m = 0; m <= f.precision(); ++m)
        for (const Entry& e : jacobi_entries(f.component(m), m))
            entries.push_back(e);
    write_entries(out, entries, true, true);
}

// ---------------------------------------------------------------------------
// Reading

struct Parser {
    std::vector<std::string> lines;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line))
            lines.push_back(line);
        if (!text.empty() && text.back() != '\n')
            throw ParseError("document must end with a newline");
    }

    bool done() const { return pos == lines.size(); }

    const std::string& peek() const {
        if (done())
            throw ParseError("unexpected end of document");
        return lines[pos];
    }

    std::string next() {
        std::string line = peek();
        ++pos;
        return line;
    }

    // Consume a "<field> <value>" line and return the value part.
    std::string field(const std::string& name) {
        std::string line = next();
        if (line.rfind(name + " ", 0) != 0)
            throw ParseError("expected \"" + name + " ...\", got \"" + line + "\"");
        return line.substr(name.size() + 1);
    }
};

long parse_long(const std::string& s) {
    if (s.empty() || (!std::isdigit(static_cast<unsigned char>(s[0])) && s[0] != '-'))
        throw ParseError("expected an integer, got \"" + s + "\"");
    std::size_t used = 0;
    long value;
    try {
        value = std::stol(s, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got \"" + s + "\"");
    }
    if (used != s.size())
        throw ParseError("trailing characters after integer in \"" + s + "\"");
    return value;
}

bool valid_decimal(const std::string& s, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < s.size() && s[i] == '-')
        ++i;
    if (i == s.size())
        return false;
    if (s[i] == '0' && i + 1 != s.size())
        return false; // no leading zeros
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

// Strict "p/q" with q > 0, lowest terms.
Rational parse_value(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        throw ParseError("rational value must be written \"p/q\", got \"" + s + "\"");
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_decimal(num, true) || !valid_decimal(den, false))
        throw ParseError("malformed rational \"" + s + "\"");
    Integer p(num), q(den);
    if (q <= 0)
        throw ValidationError("rational \"" + s + "\" has nonpositive denominator");
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1)
        throw ValidationError("rational \"" + s + "\" is not in lowest terms");
    Rational value(p, q);
    value.canonicalize();
    return value;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::istringstream in(line);
    std::string f;
    while (in >> f)
        fields.push_back(f);
    if (!line.empty() && (line.front() == ' ' || line.back() == ' '))
        throw ParseError("stray whitespace in entry line \"" + line + "\"");
    return fields;
}

struct RawEntry {
    long m = 0, n = 0, r = 0;
    Rational value;
};

std::vector<RawEntry> read_entries(Parser& p, int columns) {
    long count = parse_long(p.field("entries"));
    if (count < 0)
        throw ParseError("negative entry count");
    std::vector<RawEntry> entries;
    for (long i = 0; i < count; ++i) {
        std::vector<std::string> fields = split_fields(p.next());
        if (static_cast<int>(fields.size()) != columns + 1)
            throw ParseError("entry line must have " + std::to_string(columns + 1) + " fields");
        RawEntry e;
        if (columns == 1) {
            e.n = parse_long(fields[0]);
        } else if (columns == 2) {
            e.n = parse_long(fields[0]);
            e.r = parse_long(fields[1]);
        } else {
            e.m = parse_long(fields[0]);
            e.n = parse_long(fields[1]);
            e.r = parse_long(fields[2]);
        }
        e.value = parse_value(fields.back());
        if (e.value == 0)
            throw ValidationError("zero-valued entry");
        entries.push_back(std::move(e));
    }
    for (std::size_t i = 1; i < entries.size(); ++i) {
        auto key = [](const RawEntry& e) { return std::tie(e.m, e.n, e.r); };
        if (!(key(entries[i - 1]) < key(entries[i])))
            throw ValidationError("entries not sorted by (m, n, r)");
    }
    return entries;
}

// Rebuild a Jacobi expansion from canonical class entries, re-checking that
// each key is the canonical representative of its class.
JacobiExpansion jacobi_from_entries(int weight, long index, long scale, long trunc,
                                    bool holomorphic, const std::vector<RawEntry>& entries) {
    JacobiExpansion phi(weight, index, scale, trunc, holomorphic);
    if (index > 0 && scale != 1 && scale != 4 * index)
        throw ValidationError("scale must be 1 or 4*index");
    for (const RawEntry& e : entries) {
        if (e.n < 0 || e.n > trunc)
            throw ValidationError("entry exponent outside [0, truncation]");
        if (index == 0 && e.r != 0)
            throw ValidationError("index-0 expansion with nonzero elliptic exponent");
        if (index > 0 && (4 * index * e.n) % scale != 0)
            throw ValidationError("entry exponent off the scale grid");
        JacobiClassKey key = phi.class_of(e.n, e.r);
        if (index > 0 && key.d < -index * index)
            throw ValidationError("entry below the weak support bound");
        if (holomorphic && key.d < 0)
            throw ValidationError("negative discriminant entry in holomorphic expansion");
        if (display_key(phi, key) != std::make_pair(e.n, e.r))
            throw ValidationError("entry key (" + std::to_string(e.n) + ", " + std::to_string(e.r) +
                                  ") is not the canonical class representative");
        if (!phi.coeff.emplace(key, e.value).second)
            throw ValidationError("duplicate coefficient class");
    }
    return phi;
}

FourierJacobiPolynomial polynomial_from_entries(int weight, long precision, long trunc,
                                                const std::vector<RawEntry>& entries) {
    std::vector<std::vector<RawEntry>> per_component(static_cast<size_t>(precision) + 1);
    for (const RawEntry& e : entries) {
        if (e.m < 0 || e.m > precision)
            throw ValidationError("entry component index outside [0, precision]");
        per_component[static_cast<size_t>(e.m)].push_back(e);
    }
    std::vector<JacobiExpansion> comps;
    for (long m = 0; m <= precision; ++m)
        comps.push_back(
            jacobi_from_entries(weight, m, 1, trunc, true, per_component[static_cast<size_t>(m)]));
    try {
        return FourierJacobiPolynomial::construct(weight, precision, std::move(comps));
    } catch (const Error& err) {
        throw ValidationError(err.what());
    }
}

} // namespace

std::string serialize(const QExpansion& f, const std::vector<std::string>& metadata) {
    std::ostringstream out;
    write_header(out, "qexpansion", metadata);
    out << "weight " << f.weight << "\n";
    out << "scale " << f.scale << "\n";
    out << "truncation " << f.trunc << "\n";
    std::vector<Entry> entries;
    for (const auto& [n, v] : f.coeff)
        entries.push_back({0, n, 0, v});
    write_entries(out, entries, false, false);
    return out.str();
}

std::string serialize(const JacobiExpansion& phi, const std::vector<std::string>& metadata) {
    std::ostringstream out;
    write_header(out, "jacobi", metadata);
    out << "weight " << phi.weight << "\n";
    out << "index " << phi.index << "\n";
    out << "scale " << phi.scale << "\n";
    out << "truncation " << phi.trunc << "\n";
    out << "holomorphic " << (phi.holomorphic ? 1 : 0) << "\n";
    write_entries(out, jacobi_entries(phi, 0), false, true);
    return out.str();
}

std::string serialize(const FourierJacobiPolynomial& f, const std::vector<std::string>& metadata) {
    std::ostringstream out;
    write_header(out, "fjpolynomial", metadata);
    out << "weight " << f.weight() << "\n";
    out << "precision " << f.precision() << "\n";
    out << "truncation " << f.trunc() << "\n";
    write_polynomial_entries(out, f);
    return out.str();
}

std::string serialize(const SymmetricBasis& basis, const std::vector<std::string>& metadata) {
    std::ostringstream out;
    write_header(out, "basis", metadata);
    out << "weight " << basis.weight << "\n";
    out << "precision " << basis.precision << "\n";
    out << "truncation " << basis.trunc << "\n";
    out << "count " << basis.elements.size() << "\n";
    for (std::size_t i = 0; i < basis.elements.size(); ++i) {
        out << "element " << i << "\n";
        write_polynomial_entries(out, basis.elements[i]);
    }
    return out.str();
}

std::string serialize(const Document& doc) {
    return std::visit([&](const auto& value) { return serialize(value, doc.metadata); }, doc.value);
}

Document deserialize(const std::string& text) {
    Parser p(text);
    if (p.field("fjdoc") != "1")
        throw ParseError("unsupported document version");
    std::string kind = p.field("kind");
    Document doc;
    while (!p.done() && p.peek().rfind("meta ", 0) == 0)
        doc.metadata.push_back(p.next().substr(5));

    if (kind == "qexpansion") {
        int weight = static_cast<int>(parse_long(p.field("weight")));
        long scale = parse_long(p.field("scale"));
        long trunc = parse_long(p.field("truncation"));
        if (scale < 1)
            throw ValidationError("scale must be positive");
        if (trunc < 0)
            throw ValidationError("truncation must be nonnegative");
        QExpansion f(weight, scale, trunc);
        for (const RawEntry& e : read_entries(p, 1)) {
            if (e.n < 0 || e.n > trunc)
                throw ValidationError("entry exponent outside [0, truncation]");
            f.coeff.emplace(e.n, e.value);
        }
        doc.value = std::move(f);
    } else if (kind == "jacobi") {
        int weight = static_cast<int>(parse_long(p.field("weight")));
        long index = parse_long(p.field("index"));
        long scale = parse_long(p.field("scale"));
        long trunc = parse_long(p.field("truncation"));
        std::string holo = p.field("holomorphic");
        if (holo != "0" && holo != "1")
            throw ParseError("holomorphic flag must be 0 or 1");
        if (index < 0)
            throw ValidationError("index must be nonnegative");
        if (trunc < 0)
            throw ValidationError("truncation must be nonnegative");
        doc.value = jacobi_from_entries(weight, index, scale, trunc, holo == "1",
                                        read_entries(p, 2));
    } else if (kind == "fjpolynomial") {
        int weight = static_cast<int>(parse_long(p.field("weight")));
        long precision = parse_long(p.field("precision"));
        long trunc = parse_long(p.field("truncation"));
        if (precision < 0)
            throw ValidationError("precision must be nonnegative");
        doc.value = polynomial_from_entries(weight, precision, trunc, read_entries(p, 3));
    } else if (kind == "basis") {
        int weight = static_cast<int>(parse_long(p.field("weight")));
        long precision = parse_long(p.field("precision"));
        long trunc = parse_long(p.field("truncation"));
        long count = parse_long(p.field("count"));
        if (count < 0)
            throw ParseError("negative element count");
        SymmetricBasis basis;
        basis.weight = weight;
        basis.precision = precision;
        basis.trunc = trunc;
        for (long i = 0; i < count; ++i) {
            if (parse_long(p.field("element")) != i)
                throw ParseError("element blocks must be numbered consecutively");
            basis.elements.push_back(
                polynomial_from_entries(weight, precision, trunc, read_entries(p, 3)));
        }
        // basis elements must be linearly independent; the symmetry property
        // itself is reported by check_symmetry, not enforced here
        std::vector<std::pair<long, JacobiClassKey>> keys;
        for (const FourierJacobiPolynomial& f : basis.elements)
            for (long m = 0; m <= precision; ++m)
                for (const auto& [key, v] : f.component(m).coeff)
                    keys.emplace_back(m, key);
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        RationalMatrix flat;
        for (const FourierJacobiPolynomial& f : basis.elements) {
            std::vector<Rational> row;
            row.reserve(keys.size());
            for (const auto& [m, key] : keys)
                row.push_back(f.component(m).coeff_class(key));
            flat.push_back(std::move(row));
        }
        if (rank(flat, keys.size()) != basis.elements.size())
            throw ValidationError("basis elements are not linearly independent");
        doc.value = std::move(basis);
    } else {
        throw ParseError("unknown document kind \"" + kind + "\"");
    }
    if (!p.done())
        throw ParseError("trailing content after document");
    return doc;
}

} // namespace fjf
