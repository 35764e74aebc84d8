#pragma once

#include "radial/core.hpp"

#include <span>
#include <vector>

namespace radial {

/// One point mass w·δ_s of a finitely-atomic complex measure on the open disk.
struct Atom {
    Complex s;
    Complex w;
};

/// Finitely-atomic complex measure ν on the open unit disk.
///
/// Atoms closer to the boundary than kBoundaryMargin are rejected: the weight
/// |1-s|/(1-|s|) blows up there and the induced Hankel matrices converge too
/// slowly to be checked numerically.
class DiscreteMeasure {
public:
    static constexpr double kBoundaryMargin = 1e-6;

    DiscreteMeasure() = default;
    explicit DiscreteMeasure(std::vector<Atom> atoms);

    static DiscreteMeasure delta(Complex s, Complex w = 1.0);

    std::span<const Atom> atoms() const noexcept { return atoms_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }

    /// max_j |s_j|, 0 for the empty measure.
    double max_radius() const noexcept;
    /// Σ_j |w_j|.
    double total_variation() const noexcept;

    /// Σ_j w_j s_j^n (no constant term).
    Complex moment(std::size_t n) const;

private:
    std::vector<Atom> atoms_;
};

} // namespace radial
