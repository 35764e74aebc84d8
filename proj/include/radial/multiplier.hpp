#pragma once

#include "radial/fock.hpp"
#include "radial/hankel.hpp"
#include "radial/symbol.hpp"

#include <span>
#include <vector>

namespace radial {

/// Rank-one data for T = T₁ + T₂ + c·Id: T₁ = Σ Φ⁽¹⁾_{x_i,y_i} from h and
/// T₂ = Σ Φ⁽²⁾_{z_i,w_i} from k.
struct MultiplierPlan {
    RadialSymbol symbol;
    RankOneDecomposition decomposition_h;
    RankOneDecomposition decomposition_k;
    Complex c;
    std::size_t rank_cap = 0;
    /// Number of entries kept in every x_i, y_i, z_i, w_i.
    std::size_t vector_horizon = 0;
    /// Trace-norm mass of h and k lost by cutting the vectors at the horizon.
    double beyond_horizon_mass = 0.0;
    HankelReport norm;
};

/// Decomposes h and k truncated to `horizon` (0: the converged c_norm
/// truncation). Propagates NotInClassC.
MultiplierPlan build_plan(const RadialSymbol& sym, double tol = kDefaultTol,
                          std::size_t horizon = 0);

using Coefficients = std::span<const Complex>;

/// Φ⁽¹⁾_{x,y}(A) = Σ_{n≥0} D_{(S*)ⁿx} A D*_{(S*)ⁿy} + Σ_{n≥1} D_{Sⁿx} ρⁿ(A) D*_{Sⁿy}.
FockOperator phi1_apply(Coefficients x, Coefficients y, const FockOperator& a);
/// Φ⁽²⁾_{x,y}(A) = Σ_{n≥0} D_{(S*)ⁿx} A D*_{(S*)ⁿy} + Σ_{n≥1} D_{Sⁿx} ρⁿ⁻¹(ε(A)) D*_{Sⁿy}.
FockOperator phi2_apply(Coefficients x, Coefficients y, const FockOperator& a);

FockOperator apply_T1(const MultiplierPlan& plan, const FockOperator& a);
FockOperator apply_T2(const MultiplierPlan& plan, const FockOperator& a);
FockOperator apply_T(const MultiplierPlan& plan, const FockOperator& a);

enum class MapComponent { T, T1, T2 };

struct EigenRecord {
    Word xi;
    Word eta;
    PairCase pair_case = PairCase::One;
    std::size_t k = 0;
    std::size_t l = 0;
    Complex expected;
    double residual = 0.0;
};

struct EigenReport {
    std::vector<EigenRecord> records;
    double worst_residual = 0.0;
    double tol = 0.0;

    bool passed() const noexcept { return worst_residual <= tol; }
};

/// Which word pairs (ξ, η) to test: |ξ|, |η| ≤ max_word and |ξ| + |η| ≤ max_total.
struct PairSelection {
    std::size_t max_word = 2;
    std::size_t max_total = static_cast<std::size_t>(-1);
};

/// Expected eigenvalue of `component` on L_ξ L_η^*:
///   T:  φ(k+l) in Case 1, φ(k+l-1) in Case 2;
///   T₁: ψ₁(k+l);
///   T₂: ψ₂(k+l) in Case 1, ψ₂(k+l-2) in Case 2.
Complex expected_eigenvalue(const RadialSymbol& sym, MapComponent component, PairCase pair_case,
                            std::size_t k, std::size_t l, double tol = kDefaultTol);

/// Applies the chosen map to every selected L_ξ L_η^* and records the
/// safe-domain residual against the expected multiple. Throws
/// InvalidArgument when max_word exceeds the space's max_len.
EigenReport verify_eigenaction(const MultiplierPlan& plan, const SpacePtr& space,
                               PairSelection selection, double tol = kDefaultTol,
                               MapComponent component = MapComponent::T);

enum class PhiVariant { One = 1, Two = 2 };

/// Σ u u^* over the left Kraus family of Φ^(variant)_{x,·}:
/// D_{(S*)ⁿx} (n ≥ 0) and D_{Sⁿx} R_ζ, ζ ∈ Λ(n) (variant 1) or
/// D_{Sⁿx} R_ζ q_i, ζ ∈ Λ(n-1) (variant 2).
FockOperator kraus_row_sum(const SpacePtr& space, Coefficients x, PhiVariant variant);
/// Σ v^* v over the right Kraus family (the adjoint-side operators built from y).
FockOperator kraus_column_sum(const SpacePtr& space, Coefficients y, PhiVariant variant);

/// Operator norm of a Hermitian operator: dense eigensolver up to dimension
/// 512, power iteration beyond.
double hermitian_norm(const FockOperator& a);

struct CsBound {
    double row = 0.0;
    double col = 0.0;
    /// √row · √col, the Christensen–Sinclair estimate of ‖Φ‖_cb.
    double bound = 0.0;
};

CsBound cs_bound(const SpacePtr& space, Coefficients x, Coefficients y, PhiVariant variant);

/// Σ‖x_i‖‖y_i‖ + Σ‖z_i‖‖w_i‖ + |c|.
double plan_cb_bound(const MultiplierPlan& plan);

/// Σ of cs_bound over every plan term plus |c|, measured on `space`.
double plan_cs_bound(const MultiplierPlan& plan, const SpacePtr& space);

} // namespace radial
