#include "radial/cli.hpp"

#include "radial/hankel.hpp"
#include "radial/io.hpp"
#include "radial/multiplier.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace radial {

namespace {

struct Options {
    std::string symbol;
    std::string space;
    std::string measure;
    std::string out_path;
    std::string format = "json";
    double tol = kDefaultTol;
    bool cprime = false;
    std::uint64_t seed = 0;
    std::size_t max_word = 2;
};

// Errors that mean the run could not even be set up.
class UsageError : public Error {
public:
    using Error::Error;
};

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return parts;
        start = pos + 1;
    }
}

std::size_t parse_count(std::string_view text)
{
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw InvalidArgument("expected a non-negative integer, got '" + std::string(text) + "'");
    return value;
}

double parse_double(std::string_view text)
{
    const Complex z = parse_complex(text);
    if (z.imag() != 0.0)
        throw InvalidArgument("expected a real number, got '" + std::string(text) + "'");
    return z.real();
}

Json read_json_file(std::string_view path)
{
    std::ifstream in{std::string(path)};
    if (!in)
        throw InvalidArgument("cannot open '" + std::string(path) + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument("invalid JSON in '" + std::string(path) + "': " + e.what());
    }
}

Json parse_json_text(std::string_view text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidArgument(std::string("invalid JSON: ") + e.what());
    }
}

// "@path" reads a file, "{..." / "[..." is inline JSON.
std::optional<Json> json_arg(std::string_view text)
{
    if (!text.empty() && text.front() == '@')
        return read_json_file(text.substr(1));
    if (!text.empty() && (text.front() == '{' || text.front() == '['))
        return parse_json_text(text);
    return std::nullopt;
}

RadialSymbol finite_from_json(const Json& j)
{
    if (j.is_array())
        return symbol_from_json(Json{{"family", "finite"}, {"values", j}});
    if (j.is_object() && !j.contains("family")) {
        Json copy = j;
        copy["family"] = "finite";
        return symbol_from_json(copy);
    }
    return symbol_from_json(j);
}

Json header(std::string_view command, double tol)
{
    return {{"schema", kReportSchema}, {"command", command}, {"tol", tol}};
}

void write_quantities(std::ostream& out, const std::vector<std::pair<std::string, double>>& rows)
{
    out << "quantity,value\n";
    for (const auto& [name, value] : rows)
        out << name << ',' << std::setprecision(17) << value << '\n';
}

struct Emitter {
    const Options& options;
    std::ostream& stdout_stream;

    void operator()(const Json& report, const std::function<void(std::ostream&)>& csv) const
    {
        std::ofstream file;
        std::ostream* target = &stdout_stream;
        if (!options.out_path.empty()) {
            file.open(options.out_path);
            if (!file)
                throw UsageError("cannot write '" + options.out_path + "'");
            target = &file;
        }
        if (options.format == "csv")
            csv(*target);
        else
            *target << report.dump(2) << '\n';
    }
};

int cmd_norm(const Options& o, const Emitter& emit, std::ostream& err)
{
    const RadialSymbol sym = parse_symbol_arg(o.symbol);
    Json report = header("norm", o.tol);
    report["symbol"] = symbol_to_json(sym);

    const HankelReport h = c_norm(sym, o.tol);
    report["c_norm"] = report_to_json(h);
    bool converged = h.converged;

    std::optional<CPrimeReport> cp;
    if (o.cprime) {
        cp = cprime_norm(sym, o.tol);
        report["cprime_norm"] = report_to_json(*cp);
        converged = converged && cp->converged;
    }

    emit(report, [&](std::ostream& out) {
        write_singular_values_csv(out, h);
        if (cp)
            for (std::size_t i = 0; i < cp->singular_values_hhat.size(); ++i)
                out << "hhat," << i << ',' << std::setprecision(17)
                    << cp->singular_values_hhat[i] << '\n';
    });
    if (!converged) {
        err << "norm did not converge to tol " << o.tol << " by truncation " << h.truncation
            << '\n';
        return kExitMathFailure;
    }
    return kExitOk;
}

int cmd_fock_verify(const Options& o, const Emitter& emit, std::ostream& err)
{
    const RadialSymbol sym = parse_symbol_arg(o.symbol);
    const FockSpec spec = parse_space_arg(o.space);
    if (o.max_word > spec.max_len)
        throw UsageError("no safe domain: --max-word " + std::to_string(o.max_word) +
                         " exceeds max_len " + std::to_string(spec.max_len));

    const SpacePtr space = FockSpace::build(spec);
    const MultiplierPlan plan = build_plan(sym, o.tol);
    const EigenReport eigen =
        verify_eigenaction(plan, space, PairSelection{o.max_word}, o.tol, MapComponent::T);
    const ShiftIdentityReport shifts =
        verify_shift_identities(space, o.max_word, 2 * o.max_word, spec.max_len);
    const bool passed =
        eigen.passed() && shifts.rho_residual <= o.tol && shifts.eps_residual <= o.tol;

    Json report = header("fock-verify", o.tol);
    report["symbol"] = symbol_to_json(sym);
    report["space"] = space_to_json(spec);
    report["dim"] = space->dim();
    report["eigenaction"] = report_to_json(eigen);
    report["shift_identities"] = {{"rho_residual", shifts.rho_residual},
                                  {"eps_residual", shifts.eps_residual},
                                  {"pairs", shifts.pairs}};
    report["passed"] = passed;

    emit(report, [&](std::ostream& out) { write_eigen_csv(out, eigen); });
    if (!passed) {
        err << "verification failed: eigen residual " << eigen.worst_residual << ", rho residual "
            << shifts.rho_residual << ", eps residual " << shifts.eps_residual << '\n';
        return kExitMathFailure;
    }
    return kExitOk;
}

int cmd_cs_bound(const Options& o, const Emitter& emit, std::ostream& err)
{
    const RadialSymbol sym = parse_symbol_arg(o.symbol);
    const FockSpec spec = o.space.empty() ? FockSpec{{1, 1}, 4} : parse_space_arg(o.space);
    const SpacePtr space = FockSpace::build(spec);
    const MultiplierPlan plan = build_plan(sym, o.tol);

    Json terms = Json::array();
    std::vector<std::pair<std::string, double>> rows;
    double cs_total = std::abs(plan.c);
    const auto add_terms = [&](const RankOneDecomposition& d, PhiVariant variant,
                               const char* name) {
        for (std::size_t i = 0; i < d.terms.size(); ++i) {
            const RankOneTerm& t = d.terms[i];
            const CsBound b = cs_bound(space, Coefficients(t.x.data(), t.x.size()),
                                       Coefficients(t.y.data(), t.y.size()), variant);
            cs_total += b.bound;
            Json entry = report_to_json(b);
            entry["component"] = name;
            entry["index"] = i;
            terms.push_back(std::move(entry));
            const std::string prefix = std::string(name) + '.' + std::to_string(i) + '.';
            rows.emplace_back(prefix + "row", b.row);
            rows.emplace_back(prefix + "col", b.col);
            rows.emplace_back(prefix + "bound", b.bound);
        }
    };
    add_terms(plan.decomposition_h, PhiVariant::One, "T1");
    add_terms(plan.decomposition_k, PhiVariant::Two, "T2");

    double lower = 0.0;
    for (std::size_t n = 0; n <= 32; ++n)
        lower = std::max(lower, std::abs(sym(n)));
    const double bound = plan_cb_bound(plan);
    const bool holds = lower <= bound + o.tol;

    Json report = header("cs-bound", o.tol);
    report["symbol"] = symbol_to_json(sym);
    report["space"] = space_to_json(spec);
    report["terms"] = std::move(terms);
    report["cs_total"] = cs_total;
    report["plan_bound"] = bound;
    report["c_norm"] = plan.norm.total;
    report["lower_bound"] = lower;
    report["holds"] = holds;

    rows.emplace_back("cs_total", cs_total);
    rows.emplace_back("plan_bound", bound);
    rows.emplace_back("c_norm", plan.norm.total);
    rows.emplace_back("lower_bound", lower);
    emit(report, [&](std::ostream& out) { write_quantities(out, rows); });
    if (!holds) {
        err << "lower bound " << lower << " exceeds cb bound " << bound << '\n';
        return kExitMathFailure;
    }
    return kExitOk;
}

int cmd_integral_check(const Options& o, const Emitter& emit, std::ostream& err)
{
    if (o.measure.empty() && o.symbol.empty())
        throw UsageError("integral-check needs --measure or --symbol");

    Json report = header("integral-check", o.tol);
    std::vector<std::pair<std::string, double>> rows;
    bool holds = true;

    const auto membership = [&](const Representation& rep) {
        const MembershipCheck m = verify_membership_bound(rep.c, rep.measure, o.tol);
        report["membership"] = report_to_json(m);
        rows.emplace_back("membership.left", m.left);
        rows.emplace_back("membership.right", m.right);
        if (!m.holds)
            err << "membership bound violated: " << m.left << " > " << m.right << '\n';
        holds = holds && m.holds;
        return m;
    };

    if (!o.measure.empty()) {
        const Representation rep = parse_measure_arg(o.measure, o.seed);
        report["measure"] = measure_to_json(rep.c, rep.measure);
        report["seed"] = o.seed;
        membership(rep);
    }

    if (!o.symbol.empty()) {
        const RadialSymbol sym = parse_symbol_arg(o.symbol);
        report["symbol"] = symbol_to_json(sym);

        const DoublingCheck d = verify_doubling(sym, o.tol);
        report["doubling"] = report_to_json(d);
        rows.emplace_back("doubling.c_norm", d.c_norm);
        rows.emplace_back("doubling.cprime_norm", d.cprime_norm);
        if (!d.holds)
            err << "doubling identity violated: " << d.c_norm << " vs " << d.cprime_norm << '\n';
        holds = holds && d.holds;

        if (o.measure.empty()) {
            try {
                const Representation rep = representation_for(sym);
                const MembershipCheck m = membership(rep);
                const double lhs = std::abs(rep.c) + m.right;
                const double rhs = 8.0 / std::numbers::pi * m.report.total;
                const bool headroom = lhs <= rhs + o.tol;
                report["headroom"] = {{"left", lhs}, {"right", rhs}, {"holds", headroom}};
                rows.emplace_back("headroom.left", lhs);
                rows.emplace_back("headroom.right", rhs);
                if (!headroom)
                    err << "8/pi headroom violated: " << lhs << " > " << rhs << '\n';
                holds = holds && headroom;
            } catch (const Unsupported&) {
                report["membership"] = nullptr;
            }
        }
    }

    report["holds"] = holds;
    emit(report, [&](std::ostream& out) { write_quantities(out, rows); });
    return holds ? kExitOk : kExitMathFailure;
}

void add_common(CLI::App& sub, Options& o)
{
    sub.add_option("--tol", o.tol, "Tolerance")->check(CLI::PositiveNumber);
    sub.add_option("--out", o.out_path, "Write the report to this file");
    sub.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    sub.add_option("--seed", o.seed, "Seed for randomized inputs");
}

} // namespace

RadialSymbol parse_symbol_arg(std::string_view text)
{
    if (auto j = json_arg(text))
        return symbol_from_json(*j);

    const std::vector<std::string_view> parts = split(text, ':');
    const std::string_view family = parts.front();
    const auto want = [&](std::size_t n) {
        if (parts.size() != n + 1)
            throw InvalidArgument("symbol '" + std::string(text) + "' expects " +
                                  std::to_string(n) + " argument(s)");
    };
    if (family == "geometric") {
        want(1);
        return RadialSymbol::geometric(parse_complex(parts[1]));
    }
    if (family == "indicator") {
        want(1);
        return RadialSymbol::indicator(parse_count(parts[1]));
    }
    if (family == "truncgeom" || family == "truncated_geometric") {
        want(2);
        return RadialSymbol::truncated_geometric(parse_double(parts[1]), parse_count(parts[2]));
    }
    if (family == "constant") {
        want(1);
        return RadialSymbol::constant(parse_complex(parts[1]));
    }
    if (family == "finite") {
        // The path may itself contain ':'.
        const std::string_view rest = text.substr(family.size() + 1);
        if (auto j = json_arg(rest))
            return finite_from_json(*j);
        throw InvalidArgument("finite symbols take @file.json or inline JSON");
    }
    throw InvalidArgument("unknown symbol '" + std::string(text) + "'");
}

FockSpec parse_space_arg(std::string_view text)
{
    if (auto j = json_arg(text))
        return space_from_json(*j);
    const std::size_t colon = text.rfind(':');
    if (colon == std::string_view::npos)
        throw InvalidArgument("space must look like 'd1,d2,...:N'");
    FockSpec spec;
    for (std::string_view d : split(text.substr(0, colon), ','))
        spec.factor_dims.push_back(parse_count(d));
    spec.max_len = parse_count(text.substr(colon + 1));
    spec.validate();
    return spec;
}

Representation parse_measure_arg(std::string_view text, std::uint64_t seed)
{
    if (auto j = json_arg(text))
        return measure_from_json(*j);
    const std::vector<std::string_view> parts = split(text, ':');
    if (parts.front() == "delta" && (parts.size() == 2 || parts.size() == 3)) {
        const Complex w = parts.size() == 3 ? parse_complex(parts[2]) : Complex{1.0, 0.0};
        return {Complex{}, DiscreteMeasure::delta(parse_complex(parts[1]), w)};
    }
    if (parts.front() == "random" && parts.size() == 2)
        return {Complex{}, random_measure(seed, parse_count(parts[1]))};
    throw InvalidArgument("unknown measure '" + std::string(text) + "'");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Radial multipliers on truncated free product Fock spaces", "radial-mult"};
    app.require_subcommand(1);
    Options o;

    CLI::App* norm = app.add_subcommand("norm", "Hankel trace-norm of a symbol");
    norm->add_option("-s,--symbol", o.symbol, "Symbol")->required();
    norm->add_flag("--cprime", o.cprime, "Also compute the parity-class norm");
    add_common(*norm, o);

    CLI::App* verify = app.add_subcommand("fock-verify", "Check the multiplier eigen-action");
    verify->add_option("-s,--symbol", o.symbol, "Symbol")->required();
    verify->add_option("--space", o.space, "Space, e.g. 1,1:5")->required();
    verify->add_option("--max-word", o.max_word, "Longest word in tested pairs");
    add_common(*verify, o);

    CLI::App* cs = app.add_subcommand("cs-bound", "Kraus-family cb-norm bounds");
    cs->add_option("-s,--symbol", o.symbol, "Symbol")->required();
    cs->add_option("--space", o.space, "Space (default 1,1:4)");
    add_common(*cs, o);

    CLI::App* integral = app.add_subcommand("integral-check", "Measure representation checks");
    integral->add_option("-s,--symbol", o.symbol, "Symbol");
    integral->add_option("--measure", o.measure, "Measure, e.g. delta:0.5 or random:5");
    add_common(*integral, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const Emitter emit{o, out};
    try {
        if (norm->parsed())
            return cmd_norm(o, emit, err);
        if (verify->parsed())
            return cmd_fock_verify(o, emit, err);
        if (cs->parsed())
            return cmd_cs_bound(o, emit, err);
        return cmd_integral_check(o, emit, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionMismatch& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Unsupported& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "failure: " << e.what() << '\n';
        return kExitMathFailure;
    }
}

} // namespace radial
