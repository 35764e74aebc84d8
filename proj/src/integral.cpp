#include "radial/integral.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace radial {

namespace {

double unit_interval(std::mt19937_64& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Complex eval_measure(Complex c, const DiscreteMeasure& nu, std::size_t n)
{
    return c + nu.moment(n);
}

double weight(const DiscreteMeasure& nu)
{
    double total = 0.0;
    for (const Atom& a : nu.atoms())
        total += std::abs(a.w) * std::abs(Complex{1.0, 0.0} - a.s) / (1.0 - std::abs(a.s));
    return total;
}

MembershipCheck verify_membership_bound(Complex c, const DiscreteMeasure& nu, double tol)
{
    MembershipCheck check;
    check.report = c_norm(RadialSymbol::from_measure(c, nu), tol);
    check.left = check.report.trace_norm_h + check.report.trace_norm_k;
    check.right = weight(nu);
    check.holds = check.left <= check.right + tol;
    return check;
}

Representation representation_for(const RadialSymbol& sym)
{
    if (const auto* g = std::get_if<Geometric>(&sym.family()))
        return {Complex{}, DiscreteMeasure::delta(g->s)};
    if (const auto* m = std::get_if<FromMeasure>(&sym.family()))
        return {m->c, m->measure};
    throw Unsupported("no integral representation for family " +
                      std::string(sym.family_name()));
}

DoublingCheck verify_doubling(const RadialSymbol& sym, double tol)
{
    DoublingCheck check;
    check.c_norm = c_norm(sym, tol).total;
    const DoubledSymbol doubled = double_with_parity_tail(sym);
    const CPrimeReport report = cprime_norm(doubled, tol);
    check.cprime_norm = report.total;
    check.c1 = report.c1;
    check.c2 = report.c2;
    check.difference = std::abs(check.c_norm - check.cprime_norm);
    check.holds = check.difference <= tol;
    return check;
}

DiscreteMeasure random_measure(std::uint64_t seed, std::size_t atoms, double max_radius,
                               double max_weight)
{
    if (!(max_radius >= 0.0) || max_radius >= 1.0 - DiscreteMeasure::kBoundaryMargin)
        throw InvalidArgument("max_radius must lie in [0, 1)");
    if (!(max_weight >= 0.0) || !std::isfinite(max_weight))
        throw InvalidArgument("max_weight must be finite and non-negative");

    std::mt19937_64 rng(seed);
    std::vector<Atom> out;
    out.reserve(atoms);
    for (std::size_t i = 0; i < atoms; ++i) {
        const double r = max_radius * std::sqrt(unit_interval(rng));
        const double theta = 2.0 * std::numbers::pi * unit_interval(rng);
        const double m = max_weight * unit_interval(rng);
        const double alpha = 2.0 * std::numbers::pi * unit_interval(rng);
        out.push_back({std::polar(r, theta), std::polar(m, alpha)});
    }
    return DiscreteMeasure(std::move(out));
}

} // namespace radial
