#pragma once

#include "radial/core.hpp"

#include <Eigen/SparseCore>

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radial {

/// A basis vector of one factor's orthocomplement H̊_i.
struct Letter {
    std::uint32_t factor = 0;
    std::uint32_t index = 0;

    auto operator<=>(const Letter&) const = default;
};

/// An elementary tensor γ₁ ⊗ … ⊗ γₙ; the empty word is the vacuum Ω.
/// Ordered graded-lexicographically: by length, then letter by letter.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static Word vacuum() { return Word{}; }

    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    const Letter& front() const { return letters_.front(); }
    const Letter& back() const { return letters_.back(); }

    /// Consecutive letters come from distinct factors.
    bool alternates() const noexcept;

    /// Concatenation; the result may fail alternates().
    Word operator+(const Word& rhs) const;

    /// "Omega" for the vacuum, otherwise "f.l" per letter joined by '-'.
    std::string to_string() const;

    bool operator==(const Word&) const = default;
    std::strong_ordering operator<=>(const Word& rhs) const;

private:
    std::vector<Letter> letters_;
};

/// Truncated free product of pointed spaces: factor i contributes
/// factor_dims[i] letters, words have length at most max_len.
struct FockSpec {
    std::vector<std::size_t> factor_dims;
    std::size_t max_len = 1;
    std::size_t max_basis = 200'000;

    void validate() const;
};

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// The word basis Λ(0) ∪ … ∪ Λ(N) plus the letter operators L_γ, R_γ.
/// Immutable once built.
class FockSpace {
public:
    /// Throws InvalidArgument for bad specs and TooLarge past max_basis.
    static std::shared_ptr<const FockSpace> build(const FockSpec& spec);

    const FockSpec& spec() const noexcept { return spec_; }
    std::size_t dim() const noexcept { return basis_.size(); }
    std::size_t max_len() const noexcept { return spec_.max_len; }
    std::size_t num_factors() const noexcept { return spec_.factor_dims.size(); }

    std::span<const Word> basis() const noexcept { return basis_; }
    const Word& word(std::size_t i) const { return basis_.at(i); }
    std::size_t level_of(std::size_t i) const { return basis_.at(i).size(); }

    /// Start of each Λ(n) in the basis, plus a final entry equal to dim().
    std::span<const std::size_t> level_offsets() const noexcept { return level_offsets_; }
    std::size_t level_size(std::size_t n) const;

    /// Λ(1) in basis order.
    std::span<const Letter> letters() const noexcept { return letters_; }

    std::optional<std::size_t> find(const Word& w) const;
    /// Throws InvalidArgument when w is not a basis word.
    std::size_t index_of(const Word& w) const;
    bool contains(const Word& w) const { return find(w).has_value(); }

    /// Letter matrices, indexed like letters().
    const SparseMatrix& left_letter(std::size_t letter) const { return left_.at(letter); }
    const SparseMatrix& right_letter(std::size_t letter) const { return right_.at(letter); }

private:
    FockSpace() = default;

    FockSpec spec_;
    std::vector<Word> basis_;
    std::vector<std::size_t> level_offsets_;
    std::vector<Letter> letters_;
    std::vector<SparseMatrix> left_;
    std::vector<SparseMatrix> right_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

/// A bounded operator on the truncated Fock space, stored as a compressed
/// sparse matrix in the word basis.
class FockOperator {
public:
    FockOperator(SpacePtr space, SparseMatrix matrix);

    static FockOperator zero(SpacePtr space);
    static FockOperator identity(SpacePtr space);

    const FockSpace& space() const noexcept { return *space_; }
    const SpacePtr& space_ptr() const noexcept { return space_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }

    Complex coeff(std::size_t row, std::size_t col) const;
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix_); }
    std::size_t nonzeros() const noexcept { return static_cast<std::size_t>(matrix_.nonZeros()); }

    FockOperator adjoint() const;

    FockOperator& operator+=(const FockOperator& rhs);
    FockOperator& operator-=(const FockOperator& rhs);
    FockOperator& operator*=(Complex scale);

    friend FockOperator operator+(FockOperator lhs, const FockOperator& rhs) { return lhs += rhs; }
    friend FockOperator operator-(FockOperator lhs, const FockOperator& rhs) { return lhs -= rhs; }
    friend FockOperator operator*(Complex scale, FockOperator op) { return op *= scale; }
    friend FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs);

    /// Largest entry modulus.
    double max_abs() const;

private:
    void require_same_space(const FockOperator& other) const;

    SpacePtr space_;
    SparseMatrix matrix_;
};

/// Index into space.letters() of a letter; throws InvalidArgument if absent.
std::size_t letter_position(const FockSpace& space, const Letter& letter);

/// L_γ: Ω ↦ γ, χ ↦ γ ⊗ χ when χ starts outside γ's factor, 0 otherwise.
/// Words pushed past max_len are sent to 0.
FockOperator creation(const SpacePtr& space, const Letter& letter);
/// R_γ: χ ↦ χ ⊗ γ when χ ends outside γ's factor, 0 otherwise.
FockOperator right_creation(const SpacePtr& space, const Letter& letter);

/// L_ξ = L_{ξ₁} ⋯ L_{ξₖ}, L_Ω = 1.
FockOperator left_word(const SpacePtr& space, const Word& xi);
/// R_ξ = R_{ξₖ} ⋯ R_{ξ₁}, R_Ω = 1.
FockOperator right_word(const SpacePtr& space, const Word& xi);
/// L_ξ L_η^*.
FockOperator word_operator(const SpacePtr& space, const Word& xi, const Word& eta);

/// D_a = Σ_n a_n P_n; `by_level` needs at least max_len + 1 entries.
FockOperator diagonal(const SpacePtr& space, std::span<const Complex> by_level);
/// P_n.
FockOperator level_projection(const SpacePtr& space, std::size_t n);
/// Q_n = Σ_{k≥n} P_k (truncated at max_len).
FockOperator tail_projection(const SpacePtr& space, std::size_t n);
/// q_i: words of length ≥ 1 whose last letter lies in factor i.
FockOperator factor_end_projection(const SpacePtr& space, std::size_t factor);

/// ρ(A) = Σ_{γ∈Λ(1)} R_γ A R_γ^*.
FockOperator rho(const FockOperator& a);
/// ρⁿ(A) by repetition.
FockOperator rho_power(const FockOperator& a, std::size_t n);
/// ε(A) = Σ_i q_i A q_i.
FockOperator eps(const FockOperator& a);

enum class PairCase { One = 1, Two = 2 };

/// Case 1 when either word is Ω or the last letters lie in distinct factors.
PairCase classify_case(const Word& xi, const Word& eta);

/// Columns χ with len(χ) - l + k ≤ N: there neither side of an
/// identity for L_ξ L_η^* (|ξ| = k, |η| = l) is cut by the truncation.
bool in_safe_domain(const FockSpace& space, std::size_t column, std::size_t k, std::size_t l);

/// max |a - b| over safe-domain columns for the pair lengths (k, l).
double safe_residual(const FockOperator& a, const FockOperator& b, std::size_t k, std::size_t l);

/// All basis words of length ≤ max_len in basis order.
std::vector<Word> words_up_to(const FockSpace& space, std::size_t max_len);

struct ShiftIdentityReport {
    /// max over pairs and 1 ≤ n ≤ max_power of |ρⁿ(L_ξL_η^*) - L_ξL_η^* Q_{l+n}|.
    double rho_residual = 0.0;
    /// max over pairs of |ε(L_ξL_η^*) - ρ(L_ξL_η^*)| (Case 1) or |ε(L_ξL_η^*) - L_ξL_η^*| (Case 2).
    double eps_residual = 0.0;
    std::size_t pairs = 0;
};

/// Residuals of the ρ and ε identities on the safe domain for all pairs with
/// |ξ|, |η| ≤ max_word and |ξ| + |η| ≤ max_total.
ShiftIdentityReport verify_shift_identities(const SpacePtr& space, std::size_t max_word,
                                            std::size_t max_total, std::size_t max_power);

} // namespace radial
