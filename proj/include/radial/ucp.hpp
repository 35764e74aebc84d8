#pragma once

#include "radial/fock.hpp"
#include "radial/multiplier.hpp"

#include <cstdint>

namespace radial {

/// An operator on H_trunc ⊗ ℂ^d, basis index (word, j) ↦ word·d + j.
class TensorOperator {
public:
    TensorOperator(SpacePtr space, std::size_t tensor_dim, SparseMatrix matrix);

    const FockSpace& space() const noexcept { return *space_; }
    std::size_t tensor_dim() const noexcept { return tensor_dim_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }

private:
    SpacePtr space_;
    std::size_t tensor_dim_;
    SparseMatrix matrix_;
};

/// Truncated unilateral shift on ℂ^d: e_j ↦ e_{j+1}, e_{d-1} ↦ 0.
SparseMatrix shift(std::size_t d);
/// Matrix unit e_{ij} on ℂ^d.
SparseMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j);

/// A ⊗ B.
TensorOperator tensor(const FockOperator& a, const SparseMatrix& b);

/// U_n = Σ_i P_{i+n} ⊗ e_{i0}, with P_m = 0 outside 0..N.
SparseMatrix isometry_u(const SpacePtr& space, std::size_t tensor_dim, std::ptrdiff_t n);

/// π₁(A) = Σ_{n≤0} U_n (A⊗1) U_n^* + Σ_{n≥1} U_n (ρⁿ(A)⊗1) U_n^*;
/// π₂ uses ρⁿ⁻¹(ε(A)) in the second sum. n runs over -(d-1)..N, the range
/// where U_n is non-zero on the truncated space. Throws DimensionMismatch
/// when tensor_dim < N + 1.
TensorOperator ucp_pi_apply(const FockOperator& a, std::size_t tensor_dim, PhiVariant variant);

/// The image predicted for L_ξ L_η^*: L_ξL_η^* ⊗ Sᵏ(S*)ˡ, or with exponents
/// k-1, l-1 for π₂ in Case 2.
TensorOperator ucp_expected(const SpacePtr& space, std::size_t tensor_dim, PhiVariant variant,
                            const Word& xi, const Word& eta);

/// max |a - b| over columns (χ, j) with len(χ) - l + k ≤ N and j - l + k ≤ d - 1.
double ucp_safe_residual(const TensorOperator& a, const TensorOperator& b, std::size_t k,
                         std::size_t l);

struct UcpReport {
    double worst_residual = 0.0;
    /// max |π(1) - 1| over all entries.
    double unital_defect = 0.0;
    /// Most negative ⟨v, π(A*A) v⟩ seen in the positivity spot check (0 if none).
    double min_quadratic_form = 0.0;
    std::size_t pairs = 0;
};

/// Checks the tensor relations for every pair with |ξ|, |η| ≤ max_word, the
/// unit, and ⟨v, π(A*A) v⟩ ≥ 0 for random v and the same L_ξ L_η^*.
UcpReport verify_ucp(const SpacePtr& space, std::size_t tensor_dim, PhiVariant variant,
                     std::size_t max_word, std::uint64_t seed = 0);

} // namespace radial
