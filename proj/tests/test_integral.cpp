#include "doctest.h"
#include "oracles.hpp"

#include "radial/integral.hpp"

#include <numbers>

using namespace radial;

TEST_SUITE("integral")
{
    TEST_CASE("eval_measure examples")
    {
        CHECK(eval_measure(0.0, DiscreteMeasure::delta(0.5), 3) == Complex{0.125});
        for (std::size_t n = 0; n < 10; ++n)
            CHECK(eval_measure(2.0, DiscreteMeasure{}, n) == Complex{2.0});
        const DiscreteMeasure pair({{0.5, 1.0}, {-0.5, 1.0}});
        CHECK(eval_measure(0.0, pair, 1) == Complex{0.0});
    }

    TEST_CASE("eval_measure agrees with measure symbols")
    {
        const DiscreteMeasure nu = random_measure(3, 4);
        const auto sym = RadialSymbol::from_measure({0.5, -1.0}, nu);
        for (std::size_t n = 0; n <= 64; ++n)
            CHECK(eval_measure({0.5, -1.0}, nu, n) == sym(n));
    }

    TEST_CASE("weight examples")
    {
        CHECK(weight(DiscreteMeasure::delta(0.5)) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(weight(DiscreteMeasure::delta(-0.5)) == doctest::Approx(3.0).epsilon(1e-15));
        CHECK(weight(DiscreteMeasure{}) == 0.0);
    }

    TEST_CASE("membership bound examples")
    {
        const MembershipCheck delta = verify_membership_bound(0.0, DiscreteMeasure::delta(0.5));
        CHECK(delta.holds);
        CHECK(std::abs(delta.left - 1.0) < 1e-10);
        CHECK(delta.right == doctest::Approx(1.0));

        const DiscreteMeasure pair({{0.5, 1.0}, {-0.5, 1.0}});
        const MembershipCheck two = verify_membership_bound(0.0, pair);
        CHECK(two.holds);
        CHECK(two.left <= 4.0 + 1e-10);
        const auto sym = RadialSymbol::from_measure(0.0, pair);
        const auto f = [&sym](std::size_t n) { return sym(n); };
        const double direct = oracle::trace_norm(oracle::hankel(f, two.report.truncation, 0, 1)) +
                              oracle::trace_norm(oracle::hankel(f, two.report.truncation, 1, 1));
        CHECK(std::abs(two.left - direct) < 1e-9);
    }

    TEST_CASE("membership bound on random measures")
    {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const DiscreteMeasure nu = random_measure(seed, 5);
            CHECK(nu.size() == 5);
            CHECK(nu.max_radius() <= 0.9);
            const Complex c{0.25, -0.5};
            const MembershipCheck m = verify_membership_bound(c, nu);
            CHECK(m.holds);
            CHECK(m.report.total <= std::abs(c) + weight(nu) + 1e-10);
        }
    }

    TEST_CASE("random measures are reproducible")
    {
        const DiscreteMeasure a = random_measure(42, 5);
        const DiscreteMeasure b = random_measure(42, 5);
        const DiscreteMeasure c = random_measure(43, 5);
        for (std::size_t i = 0; i < 5; ++i) {
            CHECK(a.atoms()[i].s == b.atoms()[i].s);
            CHECK(a.atoms()[i].w == b.atoms()[i].w);
        }
        CHECK(a.atoms()[0].s != c.atoms()[0].s);
        CHECK_THROWS_AS(random_measure(0, 3, 1.0), InvalidArgument);
    }

    TEST_CASE("representations")
    {
        const Representation g = representation_for(RadialSymbol::geometric(0.5));
        CHECK(g.c == Complex{});
        REQUIRE(g.measure.size() == 1);
        CHECK(g.measure.atoms()[0].s == Complex{0.5});
        CHECK(g.measure.atoms()[0].w == Complex{1.0});

        const DiscreteMeasure nu = random_measure(1, 3);
        const Representation m = representation_for(RadialSymbol::from_measure(2.0, nu));
        CHECK(m.c == Complex{2.0});
        CHECK(m.measure.size() == 3);

        CHECK_THROWS_AS(representation_for(RadialSymbol::indicator(1)), Unsupported);
        CHECK_THROWS_AS(representation_for(RadialSymbol::constant(1.0)), Unsupported);
    }

    TEST_CASE("delta measures reproduce geometric symbols")
    {
        for (Complex s : {Complex{0.5}, Complex{-0.5}, Complex{0.3, 0.4}}) {
            const auto g = RadialSymbol::geometric(s);
            const Representation r = representation_for(g);
            for (std::size_t n = 0; n <= 64; ++n)
                CHECK(eval_measure(r.c, r.measure, n) == g(n));
        }
    }

    TEST_CASE("headroom for canonical representations")
    {
        for (Complex s : {Complex{0.5}, Complex{-0.5}, Complex{0.3, 0.4}, Complex{0.0, 0.9}}) {
            const auto g = RadialSymbol::geometric(s);
            const Representation r = representation_for(g);
            CHECK(std::abs(r.c) + weight(r.measure) <=
                  8.0 / std::numbers::pi * c_norm(g).total + 1e-10);
        }
    }

    TEST_CASE("doubling examples")
    {
        const DoublingCheck g = verify_doubling(RadialSymbol::geometric(0.5));
        CHECK(g.holds);
        CHECK(std::abs(g.c_norm - 1.0) < 1e-10);
        CHECK(std::abs(g.cprime_norm - 1.0) < 1e-10);

        const DoublingCheck chi = verify_doubling(RadialSymbol::indicator(1));
        CHECK(chi.holds);
        CHECK(std::abs(chi.cprime_norm - (1.0 + std::sqrt(5.0))) < 1e-10);

        const DoublingCheck one = verify_doubling(RadialSymbol::constant(1.0));
        CHECK(one.holds);
        CHECK(one.c1 == Complex{0.5});
        CHECK(one.c2 == Complex{0.5});
        CHECK(std::abs(one.cprime_norm - 1.0) < 1e-15);
    }

    TEST_CASE("doubling with tails and measures")
    {
        for (const auto& sym :
             {RadialSymbol::finite({1.0, -2.0, 0.5}, {0.25, 0.5}),
              RadialSymbol::truncated_geometric(0.8, 7),
              RadialSymbol::from_measure(-1.0, DiscreteMeasure({{0.6, 1.0}, {{0.1, -0.5}, 2.0}}))}) {
            INFO(sym.family_name());
            CHECK(verify_doubling(sym).holds);
        }
    }
}
