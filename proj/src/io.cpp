#include "radial/io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <string>

namespace radial {

namespace {

double parse_real(std::string_view text, std::string_view whole)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw InvalidArgument("cannot parse complex number '" + std::string(whole) + "'");
    return value;
}

// Coefficient in front of 'i': "", "+" and "-" stand for ±1.
double parse_imag(std::string_view text, std::string_view whole)
{
    if (text.empty() || text == "+")
        return 1.0;
    if (text == "-")
        return -1.0;
    return parse_real(text, whole);
}

double number(const Json& j, const char* what)
{
    if (!j.is_number())
        throw InvalidArgument(std::string(what) + " must be a number");
    return j.get<double>();
}

std::size_t count(const Json& j, const char* what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        throw InvalidArgument(std::string(what) + " must be a non-negative integer");
    return j.get<std::size_t>();
}

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InvalidArgument(std::string("missing field '") + key + "'");
    return j.at(key);
}

Json atoms_to_json(const DiscreteMeasure& nu)
{
    Json atoms = Json::array();
    for (const Atom& a : nu.atoms())
        atoms.push_back({{"s", complex_to_json(a.s)}, {"w", complex_to_json(a.w)}});
    return atoms;
}

DiscreteMeasure atoms_from_json(const Json& j)
{
    if (!j.is_array())
        throw InvalidArgument("atoms must be an array");
    std::vector<Atom> atoms;
    for (const Json& a : j)
        atoms.push_back({complex_from_json(field(a, "s")), complex_from_json(field(a, "w"))});
    return DiscreteMeasure(std::move(atoms));
}

Json doubles(const std::vector<double>& v)
{
    return Json(v);
}

void csv_real(std::ostream& out, double v)
{
    out << std::setprecision(17) << v;
}

} // namespace

Complex parse_complex(std::string_view text)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (text.empty())
        throw InvalidArgument("empty complex number");

    if (text.back() != 'i' && text.back() != 'j')
        return {parse_real(text, text), 0.0};

    const std::string_view body = text.substr(0, text.size() - 1);
    // The split point is the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t p = body.size(); p-- > 1;) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
            split = p;
            break;
        }
    }
    if (split == std::string_view::npos)
        return {0.0, parse_imag(body, text)};
    return {parse_real(body.substr(0, split), text), parse_imag(body.substr(split), text)};
}

Complex complex_from_json(const Json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_string())
        return parse_complex(j.get<std::string>());
    if (j.is_array() && j.size() == 2)
        return {number(j[0], "real part"), number(j[1], "imaginary part")};
    if (j.is_object() && j.contains("re"))
        return {number(j.at("re"), "re"), j.contains("im") ? number(j.at("im"), "im") : 0.0};
    throw InvalidArgument("expected a complex number, got " + j.dump());
}

Json complex_to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

Json symbol_to_json(const RadialSymbol& sym)
{
    Json j;
    j["family"] = sym.family_name();
    std::visit(
        [&j](const auto& f) {
            using F = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<F, Geometric>) {
                j["s"] = complex_to_json(f.s);
            } else if constexpr (std::is_same_v<F, Indicator>) {
                j["n"] = f.n;
            } else if constexpr (std::is_same_v<F, TruncatedGeometric>) {
                j["r"] = f.r;
                j["n"] = f.n;
            } else if constexpr (std::is_same_v<F, Finite>) {
                Json values = Json::array();
                for (Complex v : f.values)
                    values.push_back(complex_to_json(v));
                j["values"] = std::move(values);
                j["tail"] = complex_to_json(f.tail);
            } else {
                j["c"] = complex_to_json(f.c);
                j["atoms"] = atoms_to_json(f.measure);
            }
        },
        sym.family());
    return j;
}

RadialSymbol symbol_from_json(const Json& j)
{
    const Json& family = field(j, "family");
    if (!family.is_string())
        throw InvalidArgument("family must be a string");
    const std::string name = family.get<std::string>();
    if (name == "geometric")
        return RadialSymbol::geometric(complex_from_json(field(j, "s")));
    if (name == "indicator")
        return RadialSymbol::indicator(count(field(j, "n"), "n"));
    if (name == "truncated_geometric")
        return RadialSymbol::truncated_geometric(number(field(j, "r"), "r"),
                                                 count(field(j, "n"), "n"));
    if (name == "finite") {
        const Json& values = field(j, "values");
        if (!values.is_array())
            throw InvalidArgument("values must be an array");
        std::vector<Complex> v;
        v.reserve(values.size());
        for (const Json& x : values)
            v.push_back(complex_from_json(x));
        const Complex tail = j.contains("tail") ? complex_from_json(j.at("tail")) : Complex{};
        return RadialSymbol::finite(std::move(v), tail);
    }
    if (name == "constant")
        return RadialSymbol::constant(complex_from_json(field(j, "c")));
    if (name == "measure") {
        const Complex c = j.contains("c") ? complex_from_json(j.at("c")) : Complex{};
        return RadialSymbol::from_measure(c, atoms_from_json(field(j, "atoms")));
    }
    throw InvalidArgument("unknown symbol family '" + name + "'");
}

Representation measure_from_json(const Json& j)
{
    if (j.is_array())
        return {Complex{}, atoms_from_json(j)};
    const Complex c = j.contains("c") ? complex_from_json(j.at("c")) : Complex{};
    return {c, atoms_from_json(field(j, "atoms"))};
}

Json measure_to_json(Complex c, const DiscreteMeasure& nu)
{
    return {{"c", complex_to_json(c)}, {"atoms", atoms_to_json(nu)}};
}

FockSpec space_from_json(const Json& j)
{
    const Json& factors = field(j, "factors");
    if (!factors.is_array())
        throw InvalidArgument("factors must be an array");
    FockSpec spec;
    for (const Json& d : factors)
        spec.factor_dims.push_back(count(d, "factor dimension"));
    spec.max_len = count(field(j, "max_len"), "max_len");
    if (j.contains("max_basis"))
        spec.max_basis = count(j.at("max_basis"), "max_basis");
    spec.validate();
    return spec;
}

Json space_to_json(const FockSpec& spec)
{
    return {{"factors", spec.factor_dims}, {"max_len", spec.max_len}};
}

Json report_to_json(const HankelReport& r)
{
    return {{"truncation", r.truncation},
            {"trace_norm_h", r.trace_norm_h},
            {"trace_norm_k", r.trace_norm_k},
            {"tail_abs", r.tail_abs},
            {"total", r.total},
            {"converged", r.converged},
            {"singular_values_h", doubles(r.singular_values_h)},
            {"singular_values_k", doubles(r.singular_values_k)}};
}

Json report_to_json(const CPrimeReport& r)
{
    return {{"truncation", r.truncation},
            {"trace_norm_hhat", r.trace_norm_hhat},
            {"c1", complex_to_json(r.c1)},
            {"c2", complex_to_json(r.c2)},
            {"total", r.total},
            {"converged", r.converged},
            {"singular_values_hhat", doubles(r.singular_values_hhat)}};
}

Json report_to_json(const EigenReport& r)
{
    Json records = Json::array();
    for (const EigenRecord& e : r.records)
        records.push_back({{"xi", e.xi.to_string()},
                           {"eta", e.eta.to_string()},
                           {"case", static_cast<int>(e.pair_case)},
                           {"k", e.k},
                           {"l", e.l},
                           {"expected", complex_to_json(e.expected)},
                           {"residual", e.residual}});
    return {{"worst_residual", r.worst_residual},
            {"tol", r.tol},
            {"passed", r.passed()},
            {"records", std::move(records)}};
}

Json report_to_json(const CsBound& r)
{
    return {{"row", r.row}, {"col", r.col}, {"bound", r.bound}};
}

Json report_to_json(const MembershipCheck& r)
{
    return {{"left", r.left},
            {"right", r.right},
            {"holds", r.holds},
            {"norm", report_to_json(r.report)}};
}

Json report_to_json(const DoublingCheck& r)
{
    return {{"c_norm", r.c_norm},
            {"cprime_norm", r.cprime_norm},
            {"c1", complex_to_json(r.c1)},
            {"c2", complex_to_json(r.c2)},
            {"difference", r.difference},
            {"holds", r.holds}};
}

void write_singular_values_csv(std::ostream& out, const HankelReport& r)
{
    out << "matrix,index,sigma\n";
    const auto emit = [&out](const char* name, const std::vector<double>& sv) {
        for (std::size_t i = 0; i < sv.size(); ++i) {
            out << name << ',' << i << ',';
            csv_real(out, sv[i]);
            out << '\n';
        }
    };
    emit("h", r.singular_values_h);
    emit("k", r.singular_values_k);
}

void write_eigen_csv(std::ostream& out, const EigenReport& r)
{
    out << "xi,eta,case,k,l,expected_re,expected_im,residual\n";
    for (const EigenRecord& e : r.records) {
        out << e.xi.to_string() << ',' << e.eta.to_string() << ','
            << static_cast<int>(e.pair_case) << ',' << e.k << ',' << e.l << ',';
        csv_real(out, e.expected.real());
        out << ',';
        csv_real(out, e.expected.imag());
        out << ',';
        csv_real(out, e.residual);
        out << '\n';
    }
}

void write_operator_csv(std::ostream& out, const FockOperator& a)
{
    out << "row,col,re,im\n";
    const SparseMatrix& m = a.matrix();
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            out << it.row() << ',' << it.col() << ',';
            csv_real(out, it.value().real());
            out << ',';
            csv_real(out, it.value().imag());
            out << '\n';
        }
    }
}

} // namespace radial
