#include "radial/ucp.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <random>
#include <sstream>

namespace radial {

namespace {

SparseMatrix sparse_identity(std::size_t d)
{
    SparseMatrix id(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    id.setIdentity();
    return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b)
{
    SparseMatrix out = Eigen::kroneckerProduct(a, b).eval();
    out.makeCompressed();
    return out;
}

SparseMatrix matrix_power(const SparseMatrix& m, std::size_t n)
{
    SparseMatrix out = sparse_identity(static_cast<std::size_t>(m.rows()));
    for (std::size_t i = 0; i < n; ++i)
        out = SparseMatrix(m * out);
    return out;
}

// Uniform in [-1, 1) from the top 53 bits; independent of the standard
// library's distribution implementations.
double signed_unit(std::mt19937_64& rng)
{
    return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

} // namespace

TensorOperator::TensorOperator(SpacePtr space, std::size_t tensor_dim, SparseMatrix matrix)
    : space_(std::move(space)), tensor_dim_(tensor_dim), matrix_(std::move(matrix))
{
    const auto n = static_cast<Eigen::Index>(space_->dim() * tensor_dim_);
    if (matrix_.rows() != n || matrix_.cols() != n)
        throw DimensionMismatch("tensor operator size does not match H ⊗ C^d");
    matrix_.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex{}; });
    matrix_.makeCompressed();
}

SparseMatrix shift(std::size_t d)
{
    std::vector<Eigen::Triplet<Complex>> triplets;
    for (std::size_t j = 0; j + 1 < d; ++j)
        triplets.emplace_back(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j),
                              Complex{1.0, 0.0});
    SparseMatrix s(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    s.setFromTriplets(triplets.begin(), triplets.end());
    return s;
}

SparseMatrix matrix_unit(std::size_t d, std::size_t i, std::size_t j)
{
    SparseMatrix e(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    e.insert(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex{1.0, 0.0};
    e.makeCompressed();
    return e;
}

TensorOperator tensor(const FockOperator& a, const SparseMatrix& b)
{
    return TensorOperator(a.space_ptr(), static_cast<std::size_t>(b.rows()), kron(a.matrix(), b));
}

SparseMatrix isometry_u(const SpacePtr& space, std::size_t tensor_dim, std::ptrdiff_t n)
{
    const auto size = static_cast<Eigen::Index>(space->dim() * tensor_dim);
    SparseMatrix u(size, size);
    for (std::size_t i = 0; i < tensor_dim; ++i) {
        const std::ptrdiff_t level = static_cast<std::ptrdiff_t>(i) + n;
        if (level < 0 || level > static_cast<std::ptrdiff_t>(space->max_len()))
            continue;
        u += kron(level_projection(space, static_cast<std::size_t>(level)).matrix(),
                  matrix_unit(tensor_dim, i, 0));
    }
    u.makeCompressed();
    return u;
}

TensorOperator ucp_pi_apply(const FockOperator& a, std::size_t tensor_dim, PhiVariant variant)
{
    const SpacePtr& space = a.space_ptr();
    const std::size_t levels = space->max_len();
    if (tensor_dim < levels + 1) {
        std::ostringstream os;
        os << "tensor_dim " << tensor_dim << " must be at least max_len + 1 = " << levels + 1;
        throw DimensionMismatch(os.str());
    }

    const SparseMatrix id = sparse_identity(tensor_dim);
    const auto size = static_cast<Eigen::Index>(space->dim() * tensor_dim);
    SparseMatrix sum(size, size);

    const SparseMatrix lifted = kron(a.matrix(), id);
    for (std::ptrdiff_t n = -static_cast<std::ptrdiff_t>(tensor_dim - 1); n <= 0; ++n) {
        const SparseMatrix u = isometry_u(space, tensor_dim, n);
        sum += SparseMatrix(u * lifted * SparseMatrix(u.adjoint()));
    }

    FockOperator inner = variant == PhiVariant::One ? a : eps(a);
    for (std::size_t n = 1; n <= levels; ++n) {
        if (variant == PhiVariant::One || n > 1)
            inner = rho(inner);
        const SparseMatrix u = isometry_u(space, tensor_dim, static_cast<std::ptrdiff_t>(n));
        sum += SparseMatrix(u * kron(inner.matrix(), id) * SparseMatrix(u.adjoint()));
    }
    return TensorOperator(space, tensor_dim, std::move(sum));
}

TensorOperator ucp_expected(const SpacePtr& space, std::size_t tensor_dim, PhiVariant variant,
                            const Word& xi, const Word& eta)
{
    std::size_t k = xi.size();
    std::size_t l = eta.size();
    if (variant == PhiVariant::Two && classify_case(xi, eta) == PairCase::Two) {
        --k;
        --l;
    }
    const SparseMatrix s = shift(tensor_dim);
    const SparseMatrix ladder =
        SparseMatrix(matrix_power(s, k) * SparseMatrix(matrix_power(s, l).adjoint()));
    return tensor(word_operator(space, xi, eta), ladder);
}

double ucp_safe_residual(const TensorOperator& a, const TensorOperator& b, std::size_t k,
                         std::size_t l)
{
    const SparseMatrix diff = a.matrix() - b.matrix();
    const std::size_t d = a.tensor_dim();
    const FockSpace& space = a.space();
    double worst = 0.0;
    for (Eigen::Index col = 0; col < diff.outerSize(); ++col) {
        const auto word = static_cast<std::size_t>(col) / d;
        const auto j = static_cast<std::size_t>(col) % d;
        if (!in_safe_domain(space, word, k, l) || j + k > d - 1 + l)
            continue;
        for (SparseMatrix::InnerIterator it(diff, col); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    }
    return worst;
}

UcpReport verify_ucp(const SpacePtr& space, std::size_t tensor_dim, PhiVariant variant,
                     std::size_t max_word, std::uint64_t seed)
{
    if (max_word > space->max_len())
        throw InvalidArgument("max_word exceeds max_len");

    UcpReport report;
    const TensorOperator unit = ucp_pi_apply(FockOperator::identity(space), tensor_dim, variant);
    const TensorOperator one = tensor(FockOperator::identity(space), sparse_identity(tensor_dim));
    {
        const SparseMatrix diff = unit.matrix() - one.matrix();
        for (Eigen::Index col = 0; col < diff.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(diff, col); it; ++it)
                report.unital_defect = std::max(report.unital_defect, std::abs(it.value()));
    }

    std::mt19937_64 rng(seed);
    const auto size = static_cast<Eigen::Index>(space->dim() * tensor_dim);
    const std::vector<Word> words = words_up_to(*space, max_word);
    for (const Word& xi : words) {
        for (const Word& eta : words) {
            const FockOperator a = word_operator(space, xi, eta);
            const TensorOperator image = ucp_pi_apply(a, tensor_dim, variant);
            const TensorOperator expected = ucp_expected(space, tensor_dim, variant, xi, eta);
            report.worst_residual = std::max(
                report.worst_residual, ucp_safe_residual(image, expected, xi.size(), eta.size()));
            ++report.pairs;

            const TensorOperator positive = ucp_pi_apply(a.adjoint() * a, tensor_dim, variant);
            Eigen::VectorXcd v(size);
            for (Eigen::Index i = 0; i < size; ++i)
                v(i) = Complex{signed_unit(rng), signed_unit(rng)};
            const double form = v.dot(positive.matrix() * v).real();
            report.min_quadratic_form = std::min(report.min_quadratic_form, form);
        }
    }
    return report;
}

} // namespace radial
