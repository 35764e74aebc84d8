#include "radial/multiplier.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace radial {

namespace {

Complex at(Coefficients v, std::ptrdiff_t i)
{
    if (i < 0 || static_cast<std::size_t>(i) >= v.size())
        return Complex{};
    return v[static_cast<std::size_t>(i)];
}

using LevelTable = Eigen::MatrixXcd;

// D_u B D_v^* where D_u, D_v are level-diagonal: entry (p, q) of B is scaled
// by table(level p, level q) = u(level p)·conj(v(level q)).
FockOperator level_scaled(const FockOperator& b, const LevelTable& table)
{
    SparseMatrix m = b.matrix();
    const FockSpace& space = b.space();
    for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
        const auto col_level = static_cast<Eigen::Index>(space.level_of(static_cast<std::size_t>(col)));
        for (SparseMatrix::InnerIterator it(m, col); it; ++it) {
            const auto row_level =
                static_cast<Eigen::Index>(space.level_of(static_cast<std::size_t>(it.row())));
            it.valueRef() *= table(row_level, col_level);
        }
    }
    return FockOperator(b.space_ptr(), std::move(m));
}

// Σ_{n≥0} (S*ⁿx)(m1)·conj((S*ⁿy)(m2)) = Σ_n x(m1+n)·conj(y(m2+n)).
LevelTable backward_table(Coefficients x, Coefficients y, std::size_t levels)
{
    const auto size = static_cast<Eigen::Index>(levels);
    LevelTable table = LevelTable::Zero(size, size);
    const auto reach = static_cast<std::ptrdiff_t>(std::max(x.size(), y.size()));
    for (Eigen::Index m1 = 0; m1 < size; ++m1)
        for (Eigen::Index m2 = 0; m2 < size; ++m2)
            for (std::ptrdiff_t n = 0; n < reach; ++n)
                table(m1, m2) += at(x, m1 + n) * std::conj(at(y, m2 + n));
    return table;
}

// (Sⁿx)(m1)·conj((Sⁿy)(m2)) = x(m1-n)·conj(y(m2-n)).
LevelTable forward_table(Coefficients x, Coefficients y, std::size_t levels, std::size_t n)
{
    const auto size = static_cast<Eigen::Index>(levels);
    const auto shift = static_cast<std::ptrdiff_t>(n);
    LevelTable table(size, size);
    for (Eigen::Index m1 = 0; m1 < size; ++m1)
        for (Eigen::Index m2 = 0; m2 < size; ++m2)
            table(m1, m2) = at(x, m1 - shift) * std::conj(at(y, m2 - shift));
    return table;
}

// The operands of the second sum: B_n for n = 1..N.
std::vector<FockOperator> rho_operands(const FockOperator& a)
{
    std::vector<FockOperator> out;
    FockOperator current = a;
    for (std::size_t n = 1; n <= a.space().max_len(); ++n) {
        current = rho(current);
        out.push_back(current);
    }
    return out;
}

std::vector<FockOperator> rho_eps_operands(const FockOperator& a)
{
    std::vector<FockOperator> out;
    FockOperator current = eps(a);
    for (std::size_t n = 1; n <= a.space().max_len(); ++n) {
        out.push_back(current);
        current = rho(current);
    }
    return out;
}

FockOperator phi_with_operands(Coefficients x, Coefficients y, const FockOperator& a,
                               const std::vector<FockOperator>& operands)
{
    const std::size_t levels = a.space().max_len() + 1;
    FockOperator out = level_scaled(a, backward_table(x, y, levels));
    for (std::size_t n = 1; n <= operands.size(); ++n)
        out += level_scaled(operands[n - 1], forward_table(x, y, levels, n));
    return out;
}

std::span<const Complex> coefficients(const Vector& v)
{
    return {v.data(), static_cast<std::size_t>(v.size())};
}

void require_horizon(const MultiplierPlan& plan, const FockSpace& space)
{
    if (plan.vector_horizon < space.max_len()) {
        std::ostringstream os;
        os << "plan vector horizon " << plan.vector_horizon << " is shorter than max_len "
           << space.max_len();
        throw DimensionMismatch(os.str());
    }
}

std::vector<Complex> level_values(const std::function<Complex(std::ptrdiff_t)>& f,
                                  std::size_t levels)
{
    std::vector<Complex> out(levels);
    for (std::size_t m = 0; m < levels; ++m)
        out[m] = f(static_cast<std::ptrdiff_t>(m));
    return out;
}

// Left Kraus operators u_j of Φ^(variant)_{x,·}, in a fixed order.
std::vector<FockOperator> left_kraus_family(const SpacePtr& space, Coefficients x,
                                            PhiVariant variant)
{
    const std::size_t levels = space->max_len() + 1;
    std::vector<FockOperator> family;
    for (std::size_t n = 0; n < std::max(x.size(), levels); ++n) {
        const auto shift = static_cast<std::ptrdiff_t>(n);
        family.push_back(diagonal(
            space, level_values([&](std::ptrdiff_t m) { return at(x, m + shift); }, levels)));
    }
    const auto words = space->basis();
    for (std::size_t n = 1; n <= space->max_len(); ++n) {
        const auto shift = static_cast<std::ptrdiff_t>(n);
        const FockOperator d =
            diagonal(space, level_values([&](std::ptrdiff_t m) { return at(x, m - shift); }, levels));
        const std::size_t zeta_len = variant == PhiVariant::One ? n : n - 1;
        for (const Word& zeta : words) {
            if (zeta.size() != zeta_len)
                continue;
            const FockOperator dr = d * right_word(space, zeta);
            if (variant == PhiVariant::One) {
                family.push_back(dr);
            } else {
                for (std::size_t i = 0; i < space->num_factors(); ++i)
                    family.push_back(dr * factor_end_projection(space, i));
            }
        }
    }
    return family;
}

} // namespace

MultiplierPlan build_plan(const RadialSymbol& sym, double tol, std::size_t horizon)
{
    HankelReport norm = c_norm(sym, tol);
    const std::size_t size = horizon != 0 ? horizon : norm.truncation;

    MultiplierPlan plan{sym, rank_one_decompose(hankel_h(sym, size)),
                        rank_one_decompose(hankel_k(sym, size)), tail_constant(sym), 0, size, 0.0,
                        std::move(norm)};
    plan.rank_cap = std::max(plan.decomposition_h.rank(), plan.decomposition_k.rank());
    plan.beyond_horizon_mass =
        std::max(0.0, plan.norm.trace_norm_h - plan.decomposition_h.nuclear_sum) +
        std::max(0.0, plan.norm.trace_norm_k - plan.decomposition_k.nuclear_sum);
    return plan;
}

FockOperator phi1_apply(Coefficients x, Coefficients y, const FockOperator& a)
{
    return phi_with_operands(x, y, a, rho_operands(a));
}

FockOperator phi2_apply(Coefficients x, Coefficients y, const FockOperator& a)
{
    return phi_with_operands(x, y, a, rho_eps_operands(a));
}

FockOperator apply_T1(const MultiplierPlan& plan, const FockOperator& a)
{
    require_horizon(plan, a.space());
    const auto operands = rho_operands(a);
    FockOperator out = FockOperator::zero(a.space_ptr());
    for (const auto& term : plan.decomposition_h.terms)
        out += phi_with_operands(coefficients(term.x), coefficients(term.y), a, operands);
    return out;
}

FockOperator apply_T2(const MultiplierPlan& plan, const FockOperator& a)
{
    require_horizon(plan, a.space());
    const auto operands = rho_eps_operands(a);
    FockOperator out = FockOperator::zero(a.space_ptr());
    for (const auto& term : plan.decomposition_k.terms)
        out += phi_with_operands(coefficients(term.x), coefficients(term.y), a, operands);
    return out;
}

FockOperator apply_T(const MultiplierPlan& plan, const FockOperator& a)
{
    return apply_T1(plan, a) + apply_T2(plan, a) + plan.c * a;
}

Complex expected_eigenvalue(const RadialSymbol& sym, MapComponent component, PairCase pair_case,
                            std::size_t k, std::size_t l, double tol)
{
    const bool two = pair_case == PairCase::Two;
    switch (component) {
    case MapComponent::T:
        return sym(two ? k + l - 1 : k + l);
    case MapComponent::T1:
        return psi1(sym, k + l, tol);
    case MapComponent::T2:
        return psi2(sym, two ? k + l - 2 : k + l, tol);
    }
    return {};
}

EigenReport verify_eigenaction(const MultiplierPlan& plan, const SpacePtr& space,
                               PairSelection selection, double tol, MapComponent component)
{
    if (selection.max_word > space->max_len()) {
        std::ostringstream os;
        os << "max_word " << selection.max_word << " exceeds max_len " << space->max_len()
           << ": no safe domain";
        throw InvalidArgument(os.str());
    }
    require_horizon(plan, *space);

    const std::vector<Word> words = words_up_to(*space, selection.max_word);
    std::vector<FockOperator> left;
    left.reserve(words.size());
    for (const Word& w : words)
        left.push_back(left_word(space, w));

    EigenReport report;
    report.tol = tol;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = 0; j < words.size(); ++j) {
            const std::size_t k = words[i].size();
            const std::size_t l = words[j].size();
            if (k + l > selection.max_total)
                continue;
            const FockOperator a = left[i] * left[j].adjoint();
            FockOperator image = component == MapComponent::T    ? apply_T(plan, a)
                                 : component == MapComponent::T1 ? apply_T1(plan, a)
                                                                 : apply_T2(plan, a);
            EigenRecord record{words[i], words[j], classify_case(words[i], words[j]), k, l, {}, 0.0};
            record.expected = expected_eigenvalue(plan.symbol, component, record.pair_case, k, l, tol);
            record.residual = safe_residual(image, record.expected * a, k, l);
            report.worst_residual = std::max(report.worst_residual, record.residual);
            report.records.push_back(std::move(record));
        }
    }
    return report;
}

FockOperator kraus_row_sum(const SpacePtr& space, Coefficients x, PhiVariant variant)
{
    FockOperator sum = FockOperator::zero(space);
    for (const FockOperator& u : left_kraus_family(space, x, variant))
        sum += u * u.adjoint();
    return sum;
}

FockOperator kraus_column_sum(const SpacePtr& space, Coefficients y, PhiVariant variant)
{
    FockOperator sum = FockOperator::zero(space);
    for (const FockOperator& u : left_kraus_family(space, y, variant)) {
        const FockOperator v = u.adjoint();
        sum += v.adjoint() * v;
    }
    return sum;
}

double hermitian_norm(const FockOperator& a)
{
    if (a.nonzeros() == 0)
        return 0.0;
    if (a.space().dim() <= 512) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.dense(), Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success)
            throw NumericalFailure("Hermitian eigensolver did not converge");
        return solver.eigenvalues().cwiseAbs().maxCoeff();
    }

    const auto n = static_cast<Eigen::Index>(a.space().dim());
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = Complex{1.0 + 1e-3 * static_cast<double>(i % 17), 0.0};
    v.normalize();
    double estimate = 0.0;
    for (int iter = 0; iter < 10'000; ++iter) {
        Eigen::VectorXcd w = a.matrix() * v;
        const double next = w.norm();
        if (next == 0.0)
            return 0.0;
        v = w / next;
        if (std::abs(next - estimate) <= 1e-14 * next)
            return next;
        estimate = next;
    }
    throw NumericalFailure("power iteration did not converge");
}

CsBound cs_bound(const SpacePtr& space, Coefficients x, Coefficients y, PhiVariant variant)
{
    CsBound out;
    out.row = hermitian_norm(kraus_row_sum(space, x, variant));
    out.col = hermitian_norm(kraus_column_sum(space, y, variant));
    out.bound = std::sqrt(out.row) * std::sqrt(out.col);
    return out;
}

double plan_cb_bound(const MultiplierPlan& plan)
{
    double total = std::abs(plan.c);
    for (const auto& term : plan.decomposition_h.terms)
        total += term.x.norm() * term.y.norm();
    for (const auto& term : plan.decomposition_k.terms)
        total += term.x.norm() * term.y.norm();
    return total;
}

double plan_cs_bound(const MultiplierPlan& plan, const SpacePtr& space)
{
    double total = std::abs(plan.c);
    for (const auto& term : plan.decomposition_h.terms)
        total += cs_bound(space, coefficients(term.x), coefficients(term.y), PhiVariant::One).bound;
    for (const auto& term : plan.decomposition_k.terms)
        total += cs_bound(space, coefficients(term.x), coefficients(term.y), PhiVariant::Two).bound;
    return total;
}

} // namespace radial
