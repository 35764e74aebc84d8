#include "doctest.h"
#include "oracles.hpp"

#include "radial/hankel.hpp"

#include <cmath>
#include <vector>

using namespace radial;

namespace {

std::vector<RadialSymbol> sample_symbols()
{
    return {
        RadialSymbol::geometric(0.5),
        RadialSymbol::geometric(-0.5),
        RadialSymbol::geometric({0.3, 0.4}),
        RadialSymbol::indicator(0),
        RadialSymbol::indicator(1),
        RadialSymbol::indicator(4),
        RadialSymbol::truncated_geometric(0.7, 5),
        RadialSymbol::finite({1.0, {2.0, 1.0}}, 0.3),
        RadialSymbol::constant(1.0),
        RadialSymbol::from_measure(0.5, DiscreteMeasure({{0.5, 1.0}, {{-0.2, 0.6}, -0.5}})),
    };
}

} // namespace

TEST_SUITE("hankel")
{
    TEST_CASE("hankel matrix examples")
    {
        Matrix expected(2, 2);
        expected << 1, 0, 0, 0;
        CHECK(hankel_h(RadialSymbol::indicator(0), 2) == expected);
        expected << -1, 1, 1, 0;
        CHECK(hankel_h(RadialSymbol::indicator(1), 2) == expected);
        expected << 1, 0, 0, 0;
        CHECK(hankel_k(RadialSymbol::indicator(1), 2) == expected);
        CHECK(hankel_k(RadialSymbol::indicator(0), 5).isZero(0.0));

        const Complex s{0.3, 0.4};
        const auto g = RadialSymbol::geometric(s);
        const Matrix h = hankel_h(g, 8);
        const Matrix k = hankel_k(g, 8);
        const Matrix hhat = hankel_hhat(g, 8);
        for (Eigen::Index i = 0; i < 8; ++i)
            for (Eigen::Index j = 0; j < 8; ++j) {
                const Complex p = ipow(s, static_cast<std::size_t>(i + j));
                CHECK(std::abs(h(i, j) - (1.0 - s) * p) < 1e-15);
                CHECK(std::abs(k(i, j) - s * h(i, j)) < 1e-15);
                CHECK(std::abs(hhat(i, j) - (1.0 - s * s) * p) < 1e-15);
            }
    }

    TEST_CASE("trace norm examples")
    {
        Matrix a(2, 2);
        a << 1, 0, 0, 0;
        CHECK(trace_norm(a) == doctest::Approx(1.0).epsilon(1e-15));
        a << -1, 1, 1, 0;
        CHECK(std::abs(trace_norm(a) - std::sqrt(5.0)) < 1e-14);

        Vector u(3), v(3);
        u << 1, Complex(0, 2), -1;
        v << 0.5, 0.5, Complex(0, 1);
        const Matrix r = u * v.adjoint();
        CHECK(std::abs(trace_norm(r) - u.norm() * v.norm()) < 1e-14);
    }

    TEST_CASE("trace norm matches the eigenvalue oracle")
    {
        for (const auto& sym : sample_symbols()) {
            const Matrix h = hankel_h(sym, 24);
            CHECK(std::abs(trace_norm(h) - oracle::trace_norm(h)) < 1e-9);
        }
    }

    TEST_CASE("singular values are sorted and non-negative")
    {
        const auto sv = singular_values(hankel_h(RadialSymbol::from_measure(
                                                     0.0, DiscreteMeasure({{0.5, 1.0}, {-0.3, 2.0}})),
                                                 16));
        for (std::size_t i = 0; i < sv.size(); ++i) {
            CHECK(sv[i] >= 0.0);
            if (i > 0)
                CHECK(sv[i] <= sv[i - 1]);
        }
        Matrix bad = Matrix::Zero(2, 2);
        bad(0, 0) = std::numeric_limits<double>::infinity();
        CHECK_THROWS_AS(singular_values(bad), NumericalFailure);
    }

    TEST_CASE("c_norm examples")
    {
        const auto half = c_norm(RadialSymbol::geometric(0.5));
        CHECK(half.converged);
        CHECK(std::abs(half.trace_norm_h - 2.0 / 3.0) < 1e-10);
        CHECK(std::abs(half.trace_norm_k - 1.0 / 3.0) < 1e-10);
        CHECK(half.tail_abs == 0.0);
        CHECK(std::abs(half.total - 1.0) < 1e-10);
        CHECK(std::abs(c_norm(RadialSymbol::geometric(-0.5)).total - 3.0) < 1e-10);
        CHECK(std::abs(c_norm(RadialSymbol::indicator(1)).total - (1.0 + std::sqrt(5.0))) < 1e-12);
        CHECK(c_norm(RadialSymbol::indicator(0)).total == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("c_norm report invariants and oracle")
    {
        for (const auto& sym : sample_symbols()) {
            INFO(sym.family_name());
            const HankelReport r = c_norm(sym);
            CHECK(r.converged);
            CHECK(r.total == doctest::Approx(r.trace_norm_h + r.trace_norm_k + r.tail_abs));
            double sum_h = 0.0;
            for (std::size_t i = 0; i < r.singular_values_h.size(); ++i) {
                CHECK(r.singular_values_h[i] >= 0.0);
                if (i > 0)
                    CHECK(r.singular_values_h[i] <= r.singular_values_h[i - 1]);
                sum_h += r.singular_values_h[i];
            }
            CHECK(std::abs(sum_h - r.trace_norm_h) < 1e-12);

            const auto f = [&sym](std::size_t n) { return sym(n); };
            CHECK(std::abs(r.total - oracle::class_norm(f, tail_constant(sym), r.truncation)) <
                  1e-9);
        }
    }

    TEST_CASE("geometric closed form")
    {
        for (Complex s : {Complex{0.5}, Complex{-0.5}, Complex{0.3, 0.4}, Complex{0.0, -0.7}})
            CHECK(std::abs(c_norm(RadialSymbol::geometric(s)).total - oracle::geometric_norm(s)) <
                  1e-9);
    }

    TEST_CASE("sandwich and total variation bounds")
    {
        for (const auto& sym : sample_symbols()) {
            const HankelReport r = c_norm(sym);
            double sup = 0.0;
            double variation = 0.0;
            for (std::size_t n = 0; n < r.truncation; ++n) {
                sup = std::max(sup, std::abs(sym(n)));
                variation += std::abs(sym(n) - sym(n + 1));
            }
            CHECK(sup <= r.total + 1e-10);
            CHECK(variation <= r.trace_norm_h + r.trace_norm_k + 1e-10);
        }
    }

    TEST_CASE("trace norms grow with the truncation")
    {
        for (const auto& sym : sample_symbols()) {
            double previous = 0.0;
            for (std::size_t m : {4, 8, 16, 32, 64}) {
                const double t = trace_norm(hankel_h(sym, m)) + trace_norm(hankel_k(sym, m));
                CHECK(t >= previous - 1e-12);
                previous = t;
            }
        }
    }

    TEST_CASE("divergence raises NotInClassC")
    {
        const Sequence alternating = [](std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; };
        CHECK_THROWS_AS(c_norm(alternating, 0.0, 1e-10, TruncationSchedule{8, 64, 1.5}),
                        NotInClassC);
        const auto overflow = RadialSymbol::finite({1e308, -1e308, 1e308}, 0.0);
        CHECK_THROWS_AS(c_norm(overflow), NotInClassC);
        const auto step_two = RadialSymbol::finite({1e308, 0.0, -1e308}, 0.0);
        CHECK_THROWS_AS(cprime_norm(step_two), NotInClassCPrime);
    }

    TEST_CASE("cprime_norm examples")
    {
        const auto g = RadialSymbol::geometric(0.5);
        const CPrimeReport direct = cprime_norm(g);
        CHECK(std::abs(direct.total - 1.0) < 1e-10);

        const CPrimeReport doubled = cprime_norm(double_symbol(g));
        CHECK(std::abs(doubled.total - 1.0) < 1e-10);
        CHECK(doubled.c1 == Complex{});
        CHECK(doubled.c2 == Complex{});

        const CPrimeReport one = cprime_norm(RadialSymbol::constant(1.0));
        CHECK(one.total == 1.0);
        CHECK(one.c1 == Complex{1.0});
        CHECK(one.c2 == Complex{});
        CHECK(one.trace_norm_hhat == 0.0);

        const CPrimeReport parity = cprime_norm(double_with_parity_tail(RadialSymbol::constant(1.0)));
        CHECK(parity.c1 == Complex{0.5});
        CHECK(parity.c2 == Complex{0.5});
        CHECK(parity.total == doctest::Approx(1.0).epsilon(1e-14));
    }

    TEST_CASE("parity blocks of the doubled symbol")
    {
        for (const auto& sym : sample_symbols()) {
            INFO(sym.family_name());
            const auto body = remove_tail(sym);
            const HankelReport r = c_norm(body);
            const CPrimeReport d = cprime_norm(double_symbol(body));
            CHECK(std::abs(d.trace_norm_hhat - (r.trace_norm_h + r.trace_norm_k)) < 1e-9);
        }
    }

    TEST_CASE("rank-one decomposition examples")
    {
        const auto g = rank_one_decompose(hankel_h(RadialSymbol::geometric(0.5), 64));
        CHECK(g.rank() == 1);
        CHECK(std::abs(g.nuclear_sum - 2.0 / 3.0) < 1e-12);

        const auto chi = rank_one_decompose(hankel_h(RadialSymbol::indicator(1), 8));
        CHECK(chi.rank() == 2);
        CHECK(std::abs(chi.nuclear_sum - std::sqrt(5.0)) < 1e-12);

        const auto zero = rank_one_decompose(Matrix::Zero(5, 5));
        CHECK(zero.rank() == 0);
        CHECK(zero.nuclear_sum == 0.0);
    }

    TEST_CASE("rank-one decomposition reconstructs")
    {
        for (const auto& sym : sample_symbols()) {
            for (const Matrix& a : {hankel_h(sym, 32), hankel_k(sym, 32)}) {
                const auto d = rank_one_decompose(a);
                CHECK(oracle::max_abs(d.reconstruct() - a) < 1e-12);
                double sum = 0.0;
                for (const auto& t : d.terms)
                    sum += t.x.norm() * t.y.norm();
                CHECK(std::abs(sum - d.nuclear_sum) < 1e-12);
                CHECK(std::abs(d.nuclear_sum - oracle::trace_norm(a)) < 1e-9);
            }
        }
    }
}
