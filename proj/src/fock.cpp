#include "radial/fock.hpp"

#include <algorithm>
#include <sstream>

namespace radial {

namespace {

SparseMatrix from_triplets(std::size_t dim, const std::vector<Eigen::Triplet<Complex>>& triplets)
{
    const auto n = static_cast<Eigen::Index>(dim);
    SparseMatrix m(n, n);
    m.setFromTriplets(triplets.begin(), triplets.end());
    m.makeCompressed();
    return m;
}

void drop_zeros(SparseMatrix& m)
{
    m.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex{}; });
}

// Projection onto the basis vectors selected by `keep`.
FockOperator basis_projection(const SpacePtr& space, const std::function<bool(const Word&)>& keep)
{
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::size_t i = 0; i < space->dim(); ++i)
        if (keep(space->word(i)))
            triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i),
                                  Complex{1.0, 0.0});
    return FockOperator(space, from_triplets(space->dim(), triplets));
}

} // namespace

bool Word::alternates() const noexcept
{
    for (std::size_t i = 1; i < letters_.size(); ++i)
        if (letters_[i].factor == letters_[i - 1].factor)
            return false;
    return true;
}

Word Word::operator+(const Word& rhs) const
{
    std::vector<Letter> out = letters_;
    out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(out));
}

std::string Word::to_string() const
{
    if (letters_.empty())
        return "Omega";
    std::ostringstream os;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i != 0)
            os << '-';
        os << letters_[i].factor << '.' << letters_[i].index;
    }
    return os.str();
}

std::strong_ordering Word::operator<=>(const Word& rhs) const
{
    if (auto by_len = letters_.size() <=> rhs.letters_.size(); by_len != 0)
        return by_len;
    return std::lexicographical_compare_three_way(letters_.begin(), letters_.end(),
                                                  rhs.letters_.begin(), rhs.letters_.end());
}

void FockSpec::validate() const
{
    if (factor_dims.empty())
        throw InvalidArgument("Fock space needs at least one factor");
    for (std::size_t d : factor_dims)
        if (d == 0)
            throw InvalidArgument("factor dimensions must be positive");
    if (max_len == 0)
        throw InvalidArgument("max_len must be at least 1");
}

std::shared_ptr<const FockSpace> FockSpace::build(const FockSpec& spec)
{
    spec.validate();

    // Level sizes by last factor, checked against the cap before enumerating.
    const std::size_t factors = spec.factor_dims.size();
    std::vector<double> ending(factors);
    double level_total = 1.0;
    double total = 1.0;
    for (std::size_t n = 1; n <= spec.max_len; ++n) {
        std::vector<double> next(factors);
        double next_total = 0.0;
        for (std::size_t f = 0; f < factors; ++f) {
            const double previous = n == 1 ? 1.0 : level_total - ending[f];
            next[f] = static_cast<double>(spec.factor_dims[f]) * previous;
            next_total += next[f];
        }
        ending = std::move(next);
        level_total = next_total;
        total += level_total;
        if (total > static_cast<double>(spec.max_basis)) {
            std::ostringstream os;
            os << "Fock basis exceeds the cap of " << spec.max_basis << " words";
            throw TooLarge(os.str());
        }
    }

    auto space = std::shared_ptr<FockSpace>(new FockSpace());
    space->spec_ = spec;
    for (std::size_t f = 0; f < factors; ++f)
        for (std::size_t l = 0; l < spec.factor_dims[f]; ++l)
            space->letters_.push_back(
                Letter{static_cast<std::uint32_t>(f), static_cast<std::uint32_t>(l)});

    auto& basis = space->basis_;
    basis.reserve(static_cast<std::size_t>(total));
    space->level_offsets_.push_back(0);
    basis.push_back(Word::vacuum());
    for (std::size_t n = 1; n <= spec.max_len; ++n) {
        const std::size_t begin = space->level_offsets_.back();
        const std::size_t end = basis.size();
        space->level_offsets_.push_back(end);
        for (std::size_t i = begin; i < end; ++i) {
            const Word prefix = basis[i];
            for (const Letter& letter : space->letters_) {
                if (!prefix.empty() && prefix.back().factor == letter.factor)
                    continue;
                basis.push_back(prefix + Word({letter}));
            }
        }
    }
    space->level_offsets_.push_back(basis.size());

    const std::size_t dim = basis.size();
    for (const Letter& letter : space->letters_) {
        const Word single({letter});
        std::vector<Eigen::Triplet<Complex>> left;
        std::vector<Eigen::Triplet<Complex>> right;
        for (std::size_t col = 0; col < dim; ++col) {
            const Word& chi = basis[col];
            if (chi.size() >= spec.max_len)
                continue;
            if (chi.empty() || chi.front().factor != letter.factor)
                left.emplace_back(static_cast<Eigen::Index>(space->index_of(single + chi)),
                                  static_cast<Eigen::Index>(col), Complex{1.0, 0.0});
            if (chi.empty() || chi.back().factor != letter.factor)
                right.emplace_back(static_cast<Eigen::Index>(space->index_of(chi + single)),
                                   static_cast<Eigen::Index>(col), Complex{1.0, 0.0});
        }
        space->left_.push_back(from_triplets(dim, left));
        space->right_.push_back(from_triplets(dim, right));
    }
    return space;
}

std::size_t FockSpace::level_size(std::size_t n) const
{
    if (n > spec_.max_len)
        return 0;
    return level_offsets_[n + 1] - level_offsets_[n];
}

std::optional<std::size_t> FockSpace::find(const Word& w) const
{
    if (w.size() > spec_.max_len || !w.alternates())
        return std::nullopt;
    const auto first = basis_.begin() + static_cast<std::ptrdiff_t>(level_offsets_[w.size()]);
    const auto last = basis_.begin() + static_cast<std::ptrdiff_t>(level_offsets_[w.size() + 1]);
    const auto it = std::lower_bound(first, last, w);
    if (it == last || *it != w)
        return std::nullopt;
    return static_cast<std::size_t>(it - basis_.begin());
}

std::size_t FockSpace::index_of(const Word& w) const
{
    if (auto i = find(w))
        return *i;
    throw InvalidArgument("word " + w.to_string() + " is not in the Fock basis");
}

FockOperator::FockOperator(SpacePtr space, SparseMatrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix))
{
    if (!space_)
        throw InvalidArgument("operator needs a Fock space");
    const auto n = static_cast<Eigen::Index>(space_->dim());
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DimensionMismatch("operator matrix does not match the Fock space dimension");
    drop_zeros(matrix_);
    matrix_.makeCompressed();
}

FockOperator FockOperator::zero(SpacePtr space)
{
    const auto n = static_cast<Eigen::Index>(space->dim());
    return FockOperator(std::move(space), SparseMatrix(n, n));
}

FockOperator FockOperator::identity(SpacePtr space)
{
    const auto n = static_cast<Eigen::Index>(space->dim());
    SparseMatrix id(n, n);
    id.setIdentity();
    return FockOperator(std::move(space), std::move(id));
}

Complex FockOperator::coeff(std::size_t row, std::size_t col) const
{
    return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

FockOperator FockOperator::adjoint() const
{
    return FockOperator(space_, SparseMatrix(matrix_.adjoint()));
}

void FockOperator::require_same_space(const FockOperator& other) const
{
    if (space_ != other.space_)
        throw DimensionMismatch("operators act on different Fock spaces");
}

FockOperator& FockOperator::operator+=(const FockOperator& rhs)
{
    require_same_space(rhs);
    matrix_ += rhs.matrix_;
    drop_zeros(matrix_);
    return *this;
}

FockOperator& FockOperator::operator-=(const FockOperator& rhs)
{
    require_same_space(rhs);
    matrix_ -= rhs.matrix_;
    drop_zeros(matrix_);
    return *this;
}

FockOperator& FockOperator::operator*=(Complex scale)
{
    matrix_ *= scale;
    drop_zeros(matrix_);
    return *this;
}

FockOperator operator*(const FockOperator& lhs, const FockOperator& rhs)
{
    lhs.require_same_space(rhs);
    return FockOperator(lhs.space_, SparseMatrix(lhs.matrix_ * rhs.matrix_));
}

double FockOperator::max_abs() const
{
    double m = 0.0;
    for (Eigen::Index k = 0; k < matrix_.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(matrix_, k); it; ++it)
            m = std::max(m, std::abs(it.value()));
    return m;
}

std::size_t letter_position(const FockSpace& space, const Letter& letter)
{
    const auto letters = space.letters();
    const auto it = std::lower_bound(letters.begin(), letters.end(), letter);
    if (it == letters.end() || *it != letter)
        throw InvalidArgument("letter is not part of the Fock space");
    return static_cast<std::size_t>(it - letters.begin());
}

FockOperator creation(const SpacePtr& space, const Letter& letter)
{
    return FockOperator(space, space->left_letter(letter_position(*space, letter)));
}

FockOperator right_creation(const SpacePtr& space, const Letter& letter)
{
    return FockOperator(space, space->right_letter(letter_position(*space, letter)));
}

FockOperator left_word(const SpacePtr& space, const Word& xi)
{
    if (!xi.alternates())
        throw InvalidArgument("word " + xi.to_string() + " does not alternate factors");
    FockOperator out = FockOperator::identity(space);
    for (const Letter& letter : xi.letters())
        out = out * creation(space, letter);
    return out;
}

FockOperator right_word(const SpacePtr& space, const Word& xi)
{
    if (!xi.alternates())
        throw InvalidArgument("word " + xi.to_string() + " does not alternate factors");
    FockOperator out = FockOperator::identity(space);
    for (const Letter& letter : xi.letters())
        out = right_creation(space, letter) * out;
    return out;
}

FockOperator word_operator(const SpacePtr& space, const Word& xi, const Word& eta)
{
    return left_word(space, xi) * left_word(space, eta).adjoint();
}

FockOperator diagonal(const SpacePtr& space, std::span<const Complex> by_level)
{
    if (by_level.size() < space->max_len() + 1)
        throw InvalidArgument("diagonal needs one value per level 0..max_len");
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::size_t i = 0; i < space->dim(); ++i)
        triplets.emplace_back(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i),
                              by_level[space->level_of(i)]);
    return FockOperator(space, from_triplets(space->dim(), triplets));
}

FockOperator level_projection(const SpacePtr& space, std::size_t n)
{
    return basis_projection(space, [n](const Word& w) { return w.size() == n; });
}

FockOperator tail_projection(const SpacePtr& space, std::size_t n)
{
    return basis_projection(space, [n](const Word& w) { return w.size() >= n; });
}

FockOperator factor_end_projection(const SpacePtr& space, std::size_t factor)
{
    if (factor >= space->num_factors())
        throw InvalidArgument("factor index out of range");
    return basis_projection(
        space, [factor](const Word& w) { return !w.empty() && w.back().factor == factor; });
}

FockOperator rho(const FockOperator& a)
{
    const FockSpace& space = a.space();
    const auto n = static_cast<Eigen::Index>(space.dim());
    SparseMatrix sum(n, n);
    for (std::size_t g = 0; g < space.letters().size(); ++g) {
        const SparseMatrix& r = space.right_letter(g);
        sum += SparseMatrix(r * a.matrix() * SparseMatrix(r.adjoint()));
    }
    return FockOperator(a.space_ptr(), std::move(sum));
}

FockOperator rho_power(const FockOperator& a, std::size_t n)
{
    FockOperator out = a;
    for (std::size_t i = 0; i < n; ++i)
        out = rho(out);
    return out;
}

FockOperator eps(const FockOperator& a)
{
    FockOperator sum = FockOperator::zero(a.space_ptr());
    for (std::size_t i = 0; i < a.space().num_factors(); ++i) {
        const FockOperator q = factor_end_projection(a.space_ptr(), i);
        sum += q * a * q;
    }
    return sum;
}

PairCase classify_case(const Word& xi, const Word& eta)
{
    if (xi.empty() || eta.empty())
        return PairCase::One;
    return xi.back().factor == eta.back().factor ? PairCase::Two : PairCase::One;
}

bool in_safe_domain(const FockSpace& space, std::size_t column, std::size_t k, std::size_t l)
{
    return space.level_of(column) + k <= space.max_len() + l;
}

double safe_residual(const FockOperator& a, const FockOperator& b, std::size_t k, std::size_t l)
{
    const FockOperator diff = a - b;
    const FockSpace& space = a.space();
    double worst = 0.0;
    for (Eigen::Index col = 0; col < diff.matrix().outerSize(); ++col) {
        if (!in_safe_domain(space, static_cast<std::size_t>(col), k, l))
            continue;
        for (SparseMatrix::InnerIterator it(diff.matrix(), col); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

std::vector<Word> words_up_to(const FockSpace& space, std::size_t max_len)
{
    const std::size_t len = std::min(max_len, space.max_len());
    const auto end = space.level_offsets()[len + 1];
    return {space.basis().begin(), space.basis().begin() + static_cast<std::ptrdiff_t>(end)};
}

ShiftIdentityReport verify_shift_identities(const SpacePtr& space, std::size_t max_word,
                                            std::size_t max_total, std::size_t max_power)
{
    if (max_word > space->max_len())
        throw InvalidArgument("max_word exceeds max_len");
    ShiftIdentityReport report;
    const std::vector<Word> words = words_up_to(*space, max_word);
    for (const Word& xi : words) {
        for (const Word& eta : words) {
            const std::size_t k = xi.size();
            const std::size_t l = eta.size();
            if (k + l > max_total)
                continue;
            const FockOperator a = word_operator(space, xi, eta);
            FockOperator power = a;
            for (std::size_t n = 1; n <= max_power; ++n) {
                power = rho(power);
                const FockOperator expected = a * tail_projection(space, l + n);
                report.rho_residual =
                    std::max(report.rho_residual, safe_residual(power, expected, k, l));
            }
            const FockOperator expected =
                classify_case(xi, eta) == PairCase::One ? rho(a) : a;
            report.eps_residual =
                std::max(report.eps_residual, safe_residual(eps(a), expected, k, l));
            ++report.pairs;
        }
    }
    return report;
}

} // namespace radial
