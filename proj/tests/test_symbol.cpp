#include "doctest.h"
#include "oracles.hpp"

#include "radial/integral.hpp"
#include "radial/symbol.hpp"

#include <vector>

using namespace radial;

namespace {

std::vector<RadialSymbol> sample_symbols()
{
    return {
        RadialSymbol::geometric(0.5),
        RadialSymbol::geometric(-0.5),
        RadialSymbol::geometric({0.3, 0.4}),
        RadialSymbol::geometric(0.0),
        RadialSymbol::indicator(0),
        RadialSymbol::indicator(1),
        RadialSymbol::indicator(5),
        RadialSymbol::truncated_geometric(0.8, 6),
        RadialSymbol::finite({1.0, {2.0, 1.0}}, 0.3),
        RadialSymbol::constant(1.0),
        RadialSymbol::from_measure(2.0, DiscreteMeasure({{0.5, 1.0}, {{-0.2, 0.6}, {0.0, -0.5}}})),
    };
}

} // namespace

TEST_SUITE("symbol")
{
    TEST_CASE("eval examples")
    {
        CHECK(std::abs(RadialSymbol::geometric(0.5)(3) - 0.125) < 1e-15);
        const auto chi1 = RadialSymbol::indicator(1);
        CHECK(chi1(0) == Complex{0.0});
        CHECK(chi1(1) == Complex{1.0});
        CHECK(RadialSymbol::finite({1.0, {2.0, 1.0}}, 0.3)(5) == Complex{0.3});
        CHECK(RadialSymbol::finite({1.0, {2.0, 1.0}}, 0.3)(1) == Complex(2.0, 1.0));
        const auto tg = RadialSymbol::truncated_geometric(0.5, 2);
        CHECK(tg(2) == Complex{0.25});
        CHECK(tg(3) == Complex{0.0});
        CHECK(eval(tg, 1) == Complex{0.5});
    }

    TEST_CASE("tail constants")
    {
        CHECK(tail_constant(RadialSymbol::geometric(0.5)) == Complex{});
        CHECK(tail_constant(RadialSymbol::indicator(4)) == Complex{});
        CHECK(tail_constant(RadialSymbol::truncated_geometric(0.5, 3)) == Complex{});
        CHECK(tail_constant(RadialSymbol::finite({1.0, 1.0, 1.0}, 0.25)) == Complex{0.25});
        CHECK(tail_constant(RadialSymbol::from_measure(2.0, DiscreteMeasure::delta(0.5))) ==
              Complex{2.0});
    }

    TEST_CASE("invalid parameters are rejected")
    {
        CHECK_THROWS_AS(RadialSymbol::geometric(1.0), InvalidArgument);
        CHECK_THROWS_AS(RadialSymbol::geometric({0.8, 0.8}), InvalidArgument);
        CHECK_THROWS_AS(RadialSymbol::truncated_geometric(1.0, 3), InvalidArgument);
        CHECK_THROWS_AS(RadialSymbol::truncated_geometric(0.0, 3), InvalidArgument);
        CHECK_THROWS_AS(DiscreteMeasure::delta(1.0 - 1e-7), InvalidArgument);
        CHECK_THROWS_AS(RadialSymbol::finite({std::nan("")}, 0.0), InvalidArgument);
    }

    TEST_CASE("psi1 and psi2 examples")
    {
        const auto g = RadialSymbol::geometric(0.5);
        CHECK(std::abs(psi1(g, 0) - 2.0 / 3.0) < 1e-15);
        CHECK(std::abs(psi2(g, 0) - 1.0 / 3.0) < 1e-15);
        const auto f = [&g](std::size_t n) { return g(n); };
        CHECK(std::abs(psi1(g, 0) - oracle::psi1_partial(f, 0, 60)) < 1e-12);
        CHECK(std::abs(psi2(g, 0) - oracle::psi1_partial(f, 1, 60)) < 1e-12);

        const auto chi1 = RadialSymbol::indicator(1);
        CHECK(psi1(chi1, 0) == Complex{-1.0});
        CHECK(psi1(chi1, 1) == Complex{1.0});
        CHECK(psi1(chi1, 2) == Complex{0.0});
        CHECK(psi2(chi1, 0) == Complex{1.0});
    }

    TEST_CASE("psi2 is psi1 shifted by one")
    {
        for (const auto& sym : sample_symbols())
            for (std::size_t n = 0; n < 20; ++n)
                CHECK(psi2(sym, n) == psi1(sym, n + 1));
    }

    TEST_CASE("psi sums against brute-force partial sums")
    {
        for (const auto& sym : sample_symbols()) {
            const auto f = [&sym](std::size_t n) { return sym(n); };
            for (std::size_t n = 0; n < 16; ++n) {
                INFO(sym.family_name() << " n=" << n);
                CHECK(std::abs(psi1(sym, n, 1e-13) - oracle::psi1_partial(f, n, 400)) < 1e-11);
            }
        }
    }

    TEST_CASE("phi = psi1 + psi2 + c")
    {
        const double tol = 1e-11;
        for (const auto& sym : sample_symbols()) {
            const Complex c = tail_constant(sym);
            for (std::size_t n = 0; n <= 64; ++n) {
                INFO(sym.family_name() << " n=" << n);
                CHECK(std::abs(psi1(sym, n, tol) + psi2(sym, n, tol) + c - sym(n)) <= 10 * tol);
            }
        }
    }

    TEST_CASE("second differences of psi1")
    {
        for (const auto& sym : sample_symbols())
            for (std::size_t n = 0; n < 30; ++n)
                CHECK(std::abs((psi1(sym, n) - psi1(sym, n + 2)) - (sym(n) - sym(n + 1))) < 1e-9);
    }

    TEST_CASE("psi decays to zero")
    {
        for (const auto& sym : sample_symbols()) {
            const std::size_t horizon = decay_horizon(sym, 1e-12);
            CHECK(std::abs(psi1(sym, horizon + 10)) < 1e-10);
        }
    }

    TEST_CASE("sum_series reports non-convergence")
    {
        CHECK_THROWS_AS(sum_series([](std::size_t) { return Complex{1.0}; }, 1e-10, 1000),
                        NonConvergent);
        const Complex half = sum_series([](std::size_t i) { return ipow(0.5, i); }, 1e-15);
        CHECK(std::abs(half - 2.0) < 1e-14);
    }

    TEST_CASE("doubling examples")
    {
        const auto d = double_symbol(RadialSymbol::geometric(0.5));
        const std::vector<double> prefix{1, 0, 0.5, 0, 0.25, 0};
        for (std::size_t n = 0; n < prefix.size(); ++n)
            CHECK(d(n) == Complex{prefix[n]});

        const auto chi = double_symbol(RadialSymbol::indicator(1));
        REQUIRE(std::holds_alternative<Indicator>(chi.family()));
        CHECK(std::get<Indicator>(chi.family()).n == 2);

        const auto one = double_symbol(RadialSymbol::finite({1.0}, 0.0));
        REQUIRE(std::holds_alternative<Indicator>(one.family()));
        CHECK(std::get<Indicator>(one.family()).n == 0);
    }

    TEST_CASE("doubling interleaves zeros")
    {
        for (const auto& sym : sample_symbols()) {
            const auto body = remove_tail(sym);
            const auto d = double_symbol(body);
            for (std::size_t n = 0; n < 40; ++n) {
                INFO(sym.family_name() << " n=" << n);
                CHECK(std::abs(d(2 * n) - body(n)) < 1e-14);
                CHECK(d(2 * n + 1) == Complex{});
            }
        }
    }

    TEST_CASE("doubling with a tail")
    {
        const auto c = RadialSymbol::constant(1.0);
        try {
            double_symbol(c);
            FAIL("expected UnsupportedTail");
        } catch (const UnsupportedTail& e) {
            CHECK(e.c1() == Complex{0.5});
            CHECK(e.c2() == Complex{0.5});
        }
        const auto sym = RadialSymbol::finite({3.0, 2.0}, 1.0);
        const DoubledSymbol d = double_with_parity_tail(sym);
        for (std::size_t n = 0; n < 10; ++n) {
            CHECK(d(2 * n) == sym(n));
            CHECK(d(2 * n + 1) == Complex{});
        }
    }

    TEST_CASE("settle index")
    {
        CHECK(settle_index(RadialSymbol::indicator(3)) == 4u);
        CHECK(settle_index(RadialSymbol::finite({1.0, 2.0}, 0.0)) == 2u);
        CHECK_FALSE(settle_index(RadialSymbol::geometric(0.5)).has_value());
        CHECK(decay_horizon(RadialSymbol::indicator(3), 1e-14) == 4u);
    }
}
