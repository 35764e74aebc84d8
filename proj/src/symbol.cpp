#include "radial/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace radial {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kHorizonCap = std::size_t{1} << 15;
constexpr double kDoublingEps = 1e-14;

// Smallest H with 4·H·ρ^H·weight/(1-ρ)² ≤ eps.
std::size_t geometric_horizon(double rho, double weight, double eps)
{
    if (rho == 0.0 || weight == 0.0)
        return 1;
    const double scale = 4.0 * weight / ((1.0 - rho) * (1.0 - rho));
    double power = rho;
    for (std::size_t h = 1; h < kHorizonCap; ++h) {
        if (scale * static_cast<double>(h) * power <= eps)
            return h;
        power *= rho;
    }
    return kHorizonCap;
}

// Finite(values, 0) with trailing zeros stripped; a lone unit spike becomes an
// Indicator.
RadialSymbol canonical_finite(std::vector<Complex> values)
{
    while (!values.empty() && values.back() == Complex{})
        values.pop_back();
    if (!values.empty() && values.back() == Complex{1.0, 0.0}) {
        bool spike = true;
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            spike = spike && values[i] == Complex{};
        if (spike)
            return RadialSymbol::indicator(values.size() - 1);
    }
    return RadialSymbol::finite(std::move(values), Complex{});
}

} // namespace

RadialSymbol RadialSymbol::geometric(Complex s)
{
    if (!(std::abs(s) < 1.0)) {
        std::ostringstream os;
        os << "geometric symbol requires |s| < 1, got s=" << s;
        throw InvalidArgument(os.str());
    }
    return RadialSymbol(Geometric{s});
}

RadialSymbol RadialSymbol::indicator(std::size_t n)
{
    return RadialSymbol(Indicator{n});
}

RadialSymbol RadialSymbol::truncated_geometric(double r, std::size_t n)
{
    if (!(r > 0.0 && r < 1.0))
        throw InvalidArgument("truncated geometric symbol requires r in (0, 1)");
    return RadialSymbol(TruncatedGeometric{r, n});
}

RadialSymbol RadialSymbol::finite(std::vector<Complex> values, Complex tail)
{
    const auto finite_value = [](Complex z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    };
    if (!finite_value(tail) || !std::all_of(values.begin(), values.end(), finite_value))
        throw InvalidArgument("finite symbol values must be finite numbers");
    return RadialSymbol(Finite{std::move(values), tail});
}

RadialSymbol RadialSymbol::from_measure(Complex c, DiscreteMeasure measure)
{
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw InvalidArgument("measure symbol constant must be finite");
    return RadialSymbol(FromMeasure{c, std::move(measure)});
}

RadialSymbol RadialSymbol::constant(Complex c)
{
    return finite({}, c);
}

std::string_view RadialSymbol::family_name() const noexcept
{
    return std::visit(overloaded{
                          [](const Geometric&) { return std::string_view{"geometric"}; },
                          [](const Indicator&) { return std::string_view{"indicator"}; },
                          [](const TruncatedGeometric&) {
                              return std::string_view{"truncated_geometric"};
                          },
                          [](const Finite&) { return std::string_view{"finite"}; },
                          [](const FromMeasure&) { return std::string_view{"measure"}; },
                      },
                      family_);
}

Complex RadialSymbol::operator()(std::size_t n) const
{
    return std::visit(overloaded{
                          [n](const Geometric& g) { return ipow(g.s, n); },
                          [n](const Indicator& ind) {
                              return n == ind.n ? Complex{1.0, 0.0} : Complex{};
                          },
                          [n](const TruncatedGeometric& t) {
                              return n <= t.n ? ipow(Complex{t.r, 0.0}, n) : Complex{};
                          },
                          [n](const Finite& f) {
                              return n < f.values.size() ? f.values[n] : f.tail;
                          },
                          [n](const FromMeasure& m) { return m.c + m.measure.moment(n); },
                      },
                      family_);
}

Complex eval(const RadialSymbol& sym, std::size_t n)
{
    return sym(n);
}

Complex tail_constant(const RadialSymbol& sym)
{
    return std::visit(overloaded{
                          [](const Finite& f) { return f.tail; },
                          [](const FromMeasure& m) { return m.c; },
                          [](const auto&) { return Complex{}; },
                      },
                      sym.family());
}

std::optional<std::size_t> settle_index(const RadialSymbol& sym)
{
    return std::visit(overloaded{
                          [](const Indicator& ind) -> std::optional<std::size_t> {
                              return ind.n + 1;
                          },
                          [](const TruncatedGeometric& t) -> std::optional<std::size_t> {
                              return t.n + 1;
                          },
                          [](const Finite& f) -> std::optional<std::size_t> {
                              return f.values.size();
                          },
                          [](const Geometric& g) -> std::optional<std::size_t> {
                              if (g.s == Complex{})
                                  return 1;
                              return std::nullopt;
                          },
                          [](const FromMeasure& m) -> std::optional<std::size_t> {
                              if (m.measure.empty())
                                  return 0;
                              return std::nullopt;
                          },
                      },
                      sym.family());
}

std::size_t decay_horizon(const RadialSymbol& sym, double eps)
{
    if (auto settled = settle_index(sym))
        return *settled;
    return std::visit(overloaded{
                          [eps](const Geometric& g) {
                              return geometric_horizon(std::abs(g.s), 1.0, eps);
                          },
                          [eps](const FromMeasure& m) {
                              return geometric_horizon(m.measure.max_radius(),
                                                       m.measure.total_variation(), eps);
                          },
                          [](const auto&) -> std::size_t { return 0; },
                      },
                      sym.family());
}

Complex sum_series(const Sequence& term, double tol, std::size_t cap)
{
    if (!(tol > 0.0))
        throw InvalidArgument("series tolerance must be positive");
    Complex sum{};
    std::deque<double> window;
    double window_abs = 0.0;
    for (std::size_t i = 0; i < cap; ++i) {
        const Complex t = term(i);
        sum += t;
        window.push_back(std::abs(t));
        window_abs += window.back();
        if (window.size() > kSeriesWindow) {
            window_abs -= window.front();
            window.pop_front();
        }
        if (window.size() == kSeriesWindow) {
            // Re-sum occasionally so cancellation in the running total cannot drift.
            if (i % 4096 == 0) {
                window_abs = 0.0;
                for (double a : window)
                    window_abs += a;
            }
            if (window_abs < tol)
                return sum;
        }
    }
    std::ostringstream os;
    os << "series failed the Cauchy criterion within " << cap << " terms";
    throw NonConvergent(os.str());
}

Complex psi1(const RadialSymbol& sym, std::size_t n, double tol)
{
    if (const auto* g = std::get_if<Geometric>(&sym.family()))
        return ipow(g->s, n) / (1.0 + g->s);

    if (auto settled = settle_index(sym)) {
        // Differences vanish from the settle index on: the sum is finite.
        Complex sum{};
        for (std::size_t m = n; m < *settled; m += 2)
            sum += sym(m) - sym(m + 1);
        return sum;
    }
    return sum_series([&sym, n](std::size_t i) { return sym(n + 2 * i) - sym(n + 2 * i + 1); },
                      tol);
}

Complex psi2(const RadialSymbol& sym, std::size_t n, double tol)
{
    return psi1(sym, n + 1, tol);
}

RadialSymbol remove_tail(const RadialSymbol& sym)
{
    return std::visit(overloaded{
                          [](const Finite& f) {
                              std::vector<Complex> values = f.values;
                              for (auto& v : values)
                                  v -= f.tail;
                              return RadialSymbol::finite(std::move(values), Complex{});
                          },
                          [](const FromMeasure& m) {
                              return RadialSymbol::from_measure(Complex{}, m.measure);
                          },
                          [&sym](const auto&) { return sym; },
                      },
                      sym.family());
}

RadialSymbol double_symbol(const RadialSymbol& sym, std::size_t horizon)
{
    const Complex c = tail_constant(sym);
    if (c != Complex{})
        throw UnsupportedTail(c / 2.0, c / 2.0);

    if (const auto* ind = std::get_if<Indicator>(&sym.family()))
        return RadialSymbol::indicator(2 * ind->n);

    const std::size_t length = horizon != 0 ? horizon : decay_horizon(sym, kDoublingEps);
    std::vector<Complex> values(length == 0 ? 0 : 2 * length - 1);
    for (std::size_t n = 0; n < length; ++n)
        values[2 * n] = sym(n);
    return canonical_finite(std::move(values));
}

Complex DoubledSymbol::operator()(std::size_t n) const
{
    return body(n) + c1 + ((n % 2 == 0) ? c2 : -c2);
}

DoubledSymbol double_with_parity_tail(const RadialSymbol& sym, std::size_t horizon)
{
    const Complex c = tail_constant(sym);
    return DoubledSymbol{double_symbol(remove_tail(sym), horizon), c / 2.0, c / 2.0};
}

} // namespace radial
