#pragma once

#include "radial/core.hpp"
#include "radial/measure.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace radial {

/// φ(n) = s^n, |s| < 1.
struct Geometric {
    Complex s;
};

/// χ_n(k) = δ_{kn}.
struct Indicator {
    std::size_t n;
};

/// φ(k) = r^k for k ≤ n, 0 afterwards.
struct TruncatedGeometric {
    double r;
    std::size_t n;
};

/// φ(k) = values[k] for k < values.size(), tail afterwards.
struct Finite {
    std::vector<Complex> values;
    Complex tail;
};

/// φ(n) = c + Σ_j w_j s_j^n.
struct FromMeasure {
    Complex c;
    DiscreteMeasure measure;
};

/// A radial symbol φ: ℕ₀ → ℂ. Immutable; constructed only through the
/// validating factories below.
class RadialSymbol {
public:
    using Family = std::variant<Geometric, Indicator, TruncatedGeometric, Finite, FromMeasure>;

    static RadialSymbol geometric(Complex s);
    static RadialSymbol indicator(std::size_t n);
    static RadialSymbol truncated_geometric(double r, std::size_t n);
    static RadialSymbol finite(std::vector<Complex> values, Complex tail);
    static RadialSymbol from_measure(Complex c, DiscreteMeasure measure);
    /// The constant sequence c, i.e. Finite([], c).
    static RadialSymbol constant(Complex c);

    const Family& family() const noexcept { return family_; }
    std::string_view family_name() const noexcept;

    Complex operator()(std::size_t n) const;

private:
    explicit RadialSymbol(Family family) : family_(std::move(family)) {}

    Family family_;
};

using Sequence = std::function<Complex(std::size_t)>;

Complex eval(const RadialSymbol& sym, std::size_t n);

/// c = lim φ(n), exact for every family.
Complex tail_constant(const RadialSymbol& sym);

/// Index from which φ is exactly equal to its tail constant, if the family is
/// eventually constant; nullopt for the decaying families.
std::optional<std::size_t> settle_index(const RadialSymbol& sym);

/// An index H such that truncating φ - c to 0..H-1 changes the class norm by
/// at most eps (via ‖χ_k‖ ≤ 4k). Exact settle index for eventually-constant
/// families.
std::size_t decay_horizon(const RadialSymbol& sym, double eps);

inline constexpr std::size_t kSeriesWindow = 64;
inline constexpr std::size_t kSeriesCap = 1'000'000;

/// Σ_{i≥0} term(i), stopped once the absolute sum over the last kSeriesWindow
/// terms drops below tol. Throws NonConvergent past `cap` terms.
Complex sum_series(const Sequence& term, double tol, std::size_t cap = kSeriesCap);

/// ψ₁(n) = Σ_{i≥0} (φ(n+2i) - φ(n+2i+1)).
Complex psi1(const RadialSymbol& sym, std::size_t n, double tol = kDefaultTol);
/// ψ₂(n) = ψ₁(n+1).
Complex psi2(const RadialSymbol& sym, std::size_t n, double tol = kDefaultTol);

/// φ - c, so that the tail constant becomes 0.
RadialSymbol remove_tail(const RadialSymbol& sym);

/// φ̃(2n) = φ(n), φ̃(2n+1) = 0.
///
/// Eventually-constant inputs are doubled exactly; decaying families become a
/// Finite symbol up to 2·horizon (0 picks decay_horizon(sym, 1e-14)).
/// Throws UnsupportedTail when c ≠ 0.
RadialSymbol double_symbol(const RadialSymbol& sym, std::size_t horizon = 0);

/// body(n) + c1 + (-1)^n c2. Used for doubled symbols with a non-zero tail.
struct DoubledSymbol {
    RadialSymbol body;
    Complex c1;
    Complex c2;

    Complex operator()(std::size_t n) const;
};

/// Doubling that always succeeds: body = double_symbol(φ - c), c1 = c2 = c/2.
DoubledSymbol double_with_parity_tail(const RadialSymbol& sym, std::size_t horizon = 0);

} // namespace radial
