#include "radial/hankel.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace radial {

namespace {

bool all_finite(const Matrix& a)
{
    return a.allFinite();
}

Sequence as_sequence(const RadialSymbol& sym)
{
    return [sym](std::size_t n) { return sym(n); };
}

double sum_of(const std::vector<double>& values)
{
    return std::accumulate(values.begin(), values.end(), 0.0);
}

// Trace norms of a family of Hankel matrices at one truncation size.
struct Snapshot {
    std::size_t size = 0;
    std::vector<std::vector<double>> sigmas;

    double norm(std::size_t i) const { return sum_of(sigmas[i]); }
    double total() const
    {
        double t = 0.0;
        for (std::size_t i = 0; i < sigmas.size(); ++i)
            t += norm(i);
        return t;
    }
};

template <class Builder>
Snapshot snapshot(const Builder& build, std::size_t size)
{
    Snapshot snap;
    snap.size = size;
    for (const Matrix& m : build(size)) {
        if (!all_finite(m))
            throw NotInClassC("Hankel matrix has non-finite entries");
        snap.sigmas.push_back(singular_values(m));
    }
    return snap;
}

struct Adaptive {
    Snapshot last;
    bool converged = false;
};

// Doubles the truncation until every trace norm in the family settles.
template <class Builder, class Diverged>
Adaptive adapt(const Builder& build, double tol, const TruncationSchedule& schedule,
               const Diverged& diverged)
{
    if (!(tol > 0.0))
        throw InvalidArgument("tolerance must be positive");
    if (schedule.initial == 0 || schedule.cap == 0)
        throw InvalidArgument("truncation sizes must be positive");

    std::size_t size = std::min(schedule.initial, schedule.cap);
    Snapshot previous = snapshot(build, size);
    while (2 * size <= schedule.cap) {
        size *= 2;
        Snapshot current = snapshot(build, size);
        bool settled = true;
        for (std::size_t i = 0; i < current.sigmas.size(); ++i)
            settled = settled && std::abs(current.norm(i) - previous.norm(i)) < tol;
        if (settled)
            return Adaptive{std::move(current), true};
        if (2 * size > schedule.cap) {
            const double before = previous.total();
            const double after = current.total();
            if (before > 0.0 && after / before > schedule.divergence_ratio) {
                std::ostringstream os;
                os << "trace norms keep growing at the truncation cap (" << before << " -> "
                   << after << " at size " << size << ")";
                diverged(os.str());
            }
        }
        previous = std::move(current);
    }
    return Adaptive{std::move(previous), false};
}

} // namespace

Matrix hankel_differences(const Sequence& phi, std::size_t size, std::size_t offset,
                          std::size_t step)
{
    const std::size_t span = size == 0 ? 0 : 2 * size - 1;
    std::vector<Complex> values(span + step);
    for (std::size_t n = 0; n < values.size(); ++n)
        values[n] = phi(n + offset);

    const auto dim = static_cast<Eigen::Index>(size);
    Matrix h(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto n = static_cast<std::size_t>(i + j);
            h(i, j) = values[n] - values[n + step];
        }
    return h;
}

Matrix hankel_h(const RadialSymbol& sym, std::size_t size)
{
    return hankel_differences(as_sequence(sym), size, 0, 1);
}

Matrix hankel_k(const RadialSymbol& sym, std::size_t size)
{
    return hankel_differences(as_sequence(sym), size, 1, 1);
}

Matrix hankel_hhat(const RadialSymbol& sym, std::size_t size)
{
    return hankel_differences(as_sequence(sym), size, 0, 2);
}

std::vector<double> singular_values(const Matrix& a)
{
    if (!all_finite(a))
        throw NumericalFailure("singular values requested for a non-finite matrix");
    if (a.size() == 0)
        return {};
    Eigen::BDCSVD<Matrix> svd(a);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("SVD did not converge");
    const auto& s = svd.singularValues();
    std::vector<double> out(s.data(), s.data() + s.size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double trace_norm(const Matrix& a)
{
    return sum_of(singular_values(a));
}

HankelReport c_norm(const RadialSymbol& sym, double tol, const TruncationSchedule& schedule)
{
    return c_norm(as_sequence(sym), tail_constant(sym), tol, schedule);
}

HankelReport c_norm(const Sequence& phi, Complex tail, double tol,
                    const TruncationSchedule& schedule)
{
    const auto build = [&phi](std::size_t size) {
        return std::vector<Matrix>{hankel_differences(phi, size, 0, 1),
                                   hankel_differences(phi, size, 1, 1)};
    };
    const auto diverged = [](const std::string& why) { throw NotInClassC(why); };
    Adaptive result = adapt(build, tol, schedule, diverged);

    HankelReport report;
    report.truncation = result.last.size;
    report.trace_norm_h = result.last.norm(0);
    report.trace_norm_k = result.last.norm(1);
    report.tail_abs = std::abs(tail);
    report.total = report.trace_norm_h + report.trace_norm_k + report.tail_abs;
    report.converged = result.converged;
    report.singular_values_h = std::move(result.last.sigmas[0]);
    report.singular_values_k = std::move(result.last.sigmas[1]);
    return report;
}

CPrimeReport cprime_norm(const RadialSymbol& sym, double tol, const TruncationSchedule& schedule)
{
    const Complex c = tail_constant(sym);
    return cprime_norm(as_sequence(sym), c, c, tol, schedule);
}

CPrimeReport cprime_norm(const DoubledSymbol& sym, double tol, const TruncationSchedule& schedule)
{
    const Complex body_tail = tail_constant(sym.body);
    return cprime_norm([sym](std::size_t n) { return sym(n); }, body_tail + sym.c1 + sym.c2,
                       body_tail + sym.c1 - sym.c2, tol, schedule);
}

CPrimeReport cprime_norm(const Sequence& phi, Complex even_tail, Complex odd_tail, double tol,
                         const TruncationSchedule& schedule)
{
    const auto build = [&phi](std::size_t size) {
        return std::vector<Matrix>{hankel_differences(phi, size, 0, 2)};
    };
    const auto diverged = [](const std::string& why) { throw NotInClassCPrime(why); };
    Adaptive result;
    try {
        result = adapt(build, tol, schedule, diverged);
    } catch (const NotInClassC& e) {
        throw NotInClassCPrime(e.what());
    }

    CPrimeReport report;
    report.truncation = result.last.size;
    report.trace_norm_hhat = result.last.norm(0);
    report.c1 = (even_tail + odd_tail) / 2.0;
    report.c2 = (even_tail - odd_tail) / 2.0;
    report.total = std::abs(report.c1) + std::abs(report.c2) + report.trace_norm_hhat;
    report.converged = result.converged;
    report.singular_values_hhat = std::move(result.last.sigmas[0]);
    return report;
}

Matrix RankOneDecomposition::reconstruct() const
{
    Matrix out = Matrix::Zero(rows, cols);
    for (const auto& term : terms)
        out.noalias() += term.x * term.y.adjoint();
    return out;
}

RankOneDecomposition rank_one_decompose(const Matrix& a, double relative_cutoff)
{
    if (!all_finite(a))
        throw NumericalFailure("rank-one decomposition of a non-finite matrix");
    RankOneDecomposition out;
    out.rows = a.rows();
    out.cols = a.cols();
    if (a.size() == 0)
        return out;

    Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalFailure("SVD did not converge");

    const auto& sigma = svd.singularValues();
    const double largest = sigma.size() > 0 ? sigma.maxCoeff() : 0.0;
    if (largest == 0.0)
        return out;

    for (Eigen::Index m = 0; m < sigma.size(); ++m) {
        if (sigma(m) < relative_cutoff * largest)
            continue;
        const double root = std::sqrt(sigma(m));
        out.terms.push_back(RankOneTerm{root * svd.matrixU().col(m), root * svd.matrixV().col(m)});
        out.nuclear_sum += out.terms.back().x.norm() * out.terms.back().y.norm();
    }
    return out;
}

} // namespace radial
