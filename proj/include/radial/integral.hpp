#pragma once

#include "radial/hankel.hpp"
#include "radial/measure.hpp"
#include "radial/symbol.hpp"

#include <cstdint>

namespace radial {

/// φ(n) = c + ∫ sⁿ dν(s) for a discrete ν.
Complex eval_measure(Complex c, const DiscreteMeasure& nu, std::size_t n);

/// ∫ |1 - s| / (1 - |s|) d|ν|(s).
double weight(const DiscreteMeasure& nu);

struct MembershipCheck {
    /// ‖h‖₁ + ‖k‖₁ of the represented symbol.
    double left = 0.0;
    double right = 0.0;
    bool holds = false;
    HankelReport report;
};

/// Checks ‖h‖₁ + ‖k‖₁ ≤ weight(ν) + tol for φ = c + ∫ sⁿ dν.
MembershipCheck verify_membership_bound(Complex c, const DiscreteMeasure& nu,
                                        double tol = kDefaultTol);

struct Representation {
    Complex c;
    DiscreteMeasure measure;
};

/// Geometric(s) ↦ (0, δ_s); a measure symbol ↦ its own data. Throws
/// Unsupported for the other families.
Representation representation_for(const RadialSymbol& sym);

struct DoublingCheck {
    double c_norm = 0.0;
    double cprime_norm = 0.0;
    Complex c1;
    Complex c2;
    double difference = 0.0;
    bool holds = false;
};

/// Compares ‖φ‖_𝒞 with ‖φ̃‖_𝒞′ for the doubled symbol φ̃.
DoublingCheck verify_doubling(const RadialSymbol& sym, double tol = kDefaultTol);

/// `atoms` atoms with |s| ≤ max_radius and |w| ≤ max_weight, drawn from
/// mt19937_64(seed). The same seed gives the same measure on every platform.
DiscreteMeasure random_measure(std::uint64_t seed, std::size_t atoms, double max_radius = 0.9,
                               double max_weight = 1.0);

} // namespace radial
