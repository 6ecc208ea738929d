#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "enclose/objective.hpp"
#include "oracle.hpp"
#include "properties.hpp"

using enclose::Box;
using enclose::Interval;

namespace {

std::vector<double> filled(std::size_t n, double v) { return std::vector<double>(n, v); }

std::vector<std::size_t> all_dims(std::size_t n)
{
    std::vector<std::size_t> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = i;
    }
    return d;
}

void require_all(const std::vector<props::Tally>& tallies)
{
    for (const auto& t : tallies) {
        INFO(t.name << ": " << t.failures << "/" << t.trials << " failed; first: " << t.first_failure);
        CHECK(t.trials > 0);
        CHECK(t.failures == 0);
    }
}

} // namespace

TEST_CASE("catalog")
{
    const auto all = enclose::catalog(3);
    REQUIRE(all.size() == 10);
    struct Bounds {
        const char* name;
        double lo, hi;
    };
    const Bounds expected[] = {
        {"ackley", -35, 40},     {"belegundu", -10, 11}, {"breiman", -1, 2},  {"fu", -10, 10},
        {"griewank", -100, 110}, {"levy", -10, 10},      {"rastrigin", -5.5, 6}, {"salomon", -100, 110},
        {"styblinski", -10, 11}, {"zabinsky", 0, 3.141592653589793},
    };
    for (std::size_t k = 0; k < all.size(); ++k) {
        const auto& obj = *all[k];
        CAPTURE(obj.name());
        CHECK(obj.name() == expected[k].name);
        CHECK(obj.dimension() == 3);
        for (const Interval& x : obj.domain()) {
            CHECK(x.lo() == expected[k].lo);
            CHECK(x.lo() < x.hi());
        }
        CHECK(obj.spec().differentiable);
        CHECK(obj.domain().contains(obj.spec().minimizer));
    }
    // Zabinsky's upper bound is the machine number just above pi.
    const auto z = enclose::make_objective("zabinsky", 2);
    CHECK(z->domain()[0].hi() == enclose::pi().hi());
    CHECK(z->domain()[0].hi() > 3.141592653589793);

    CHECK_THROWS_AS(enclose::make_objective("rosenbrock", 2), std::invalid_argument);
    CHECK_THROWS_AS(enclose::make_objective("levy", 0), std::invalid_argument);
}

TEST_CASE("evaluation at known minimizers")
{
    SUBCASE("ackley at the origin")
    {
        for (const std::size_t n : {1u, 2u, 10u, 50u}) {
            const auto f = enclose::make_objective("ackley", n);
            const Interval v = f->eval(Box::point(filled(n, 0.0)));
            CHECK(v.contains(0.0));
            CHECK(v.width() <= 1e-10);
        }
    }
    SUBCASE("breiman at the origin, n = 10")
    {
        const auto f = enclose::make_objective("breiman", 10);
        CHECK(f->eval(Box::point(filled(10, 0.0))).contains(-1.0));
    }
    SUBCASE("zabinsky at the enclosure of 2 pi / 3, n = 5")
    {
        const auto f = enclose::make_objective("zabinsky", 5);
        const Box b = Box::uniform(5, 2.0 * enclose::pi() / 3.0);
        const Interval v = f->eval(b);
        CHECK(v.contains(-3.5));
        CHECK(v.width() < 1e-12);
    }
    SUBCASE("every function contains f(x*) at its minimizer")
    {
        for (const std::size_t n : {2u, 10u, 50u}) {
            for (const auto& f : enclose::catalog(n)) {
                CAPTURE(f->name());
                CAPTURE(n);
                const Interval v = f->eval(f->spec().minimizer);
                CHECK(v.contains(f->spec().known_minimum));
                CHECK(v.width() < 1e-9);
            }
        }
    }
}

TEST_CASE("known minimum values")
{
    CHECK(enclose::make_objective("breiman", 50)->spec().known_minimum.contains(-5.0));
    CHECK(enclose::make_objective("styblinski", 50)->spec().known_minimum.contains(-200.0));
    CHECK(enclose::make_objective("zabinsky", 50)->spec().known_minimum.contains(-3.5));
    CHECK(enclose::make_objective("fu", 50)->spec().known_minimum.contains(1.0));
    CHECK(enclose::make_objective("belegundu", 50)->spec().known_minimum.contains(-1.0));
}

TEST_CASE("levy over its whole domain")
{
    const auto f = enclose::make_objective("levy", 2);
    const Interval v = f->eval(f->domain());
    CHECK(v.lo() <= 0.0);
    CHECK(0.0 <= v.hi());
    CHECK(std::isfinite(v.lo()));
    // Every grid value lies in the enclosure.
    for (int a = 0; a <= 80; ++a) {
        for (int b = 0; b <= 80; ++b) {
            const std::vector<double> x = {-10.0 + 0.25 * a, -10.0 + 0.25 * b};
            REQUIRE(oracle::contains(v, oracle::reference_value("levy", x)));
        }
    }
}

TEST_CASE("point upper bounds")
{
    const auto ackley = enclose::make_objective("ackley", 4);
    const double a = ackley->eval_point_upper(filled(4, 0.0));
    CHECK(a >= 0.0);
    CHECK(a <= 1e-10);

    const auto fu = enclose::make_objective("fu", 4);
    const double u = fu->eval_point_upper(filled(4, 0.9));
    CHECK(u >= 1.0);
    CHECK(u <= 1.0 + 1e-10);

    const auto sty = enclose::make_objective("styblinski", 3);
    const double s = sty->eval_point_upper(filled(3, 0.0));
    CHECK(s >= -12.0);
    CHECK(s <= -12.0 + 1e-9);

    CHECK_THROWS_AS(ackley->eval_point_upper(filled(4, 41.0)), std::out_of_range);
    CHECK_THROWS_AS(ackley->eval_point_upper(filled(3, 0.0)), std::invalid_argument);
}

TEST_CASE("gradients")
{
    SUBCASE("rastrigin is stationary at the origin")
    {
        const auto f = enclose::make_objective("rastrigin", 4);
        const auto g = f->gradient(Box::point(filled(4, 0.0)), all_dims(4));
        REQUIRE(g.size() == 4);
        for (const Interval& d : g) {
            CHECK(d.contains(0.0));
            CHECK(d.width() <= 1e-10);
        }
    }
    SUBCASE("breiman partial depends on its own coordinate only")
    {
        const auto f = enclose::make_objective("breiman", 3);
        Box b = f->domain();
        b[1] = Interval(0.1, 0.2);
        const std::vector<std::size_t> dim = {1};
        const Interval g1 = f->gradient(b, dim)[0];
        b[0] = Interval(1.5, 1.5);
        b[2] = Interval(-0.5, 0.25);
        CHECK(f->gradient(b, dim)[0] == g1);
        // 0.5 pi sin(5 pi x) + 2x on a grid in [0.1, 0.2].
        for (int k = 0; k <= 100; ++k) {
            const std::vector<double> x = {0.0, 0.1 + 0.001 * k, 0.0};
            REQUIRE(oracle::contains_partial(g1, oracle::reference_partial("breiman", x, 1)));
        }
    }
    SUBCASE("full-domain partials contain the derivative at interior points")
    {
        std::mt19937_64 rng(5);
        for (const auto& f : enclose::catalog(5)) {
            CAPTURE(f->name());
            const auto g = f->gradient(f->domain(), all_dims(5));
            std::vector<double> x(5);
            for (int k = 0; k < 100; ++k) {
                for (std::size_t i = 0; i < 5; ++i) {
                    x[i] = std::uniform_real_distribution<double>(f->domain()[i].lo(), f->domain()[i].hi())(rng);
                }
                for (std::size_t i = 0; i < 5; ++i) {
                    REQUIRE(oracle::contains_partial(g[i], oracle::reference_partial(f->name(), x, i)));
                }
            }
        }
    }
    SUBCASE("argument checks")
    {
        const auto f = enclose::make_objective("levy", 3);
        const std::vector<std::size_t> bad = {3};
        CHECK_THROWS(f->gradient(f->domain(), bad));
        CHECK_THROWS(f->eval(Box::uniform(2, Interval(0, 1))));
    }
}

TEST_CASE("box enclosures contain sampled values")
{
    require_all(props::objective_containment(10, 100, 20, 0x0b1ec7));
}

TEST_CASE("box partials contain sampled derivatives")
{
    require_all(props::gradient_containment(6, 60, 3, 0x9ad1e47));
}

TEST_CASE("coupled objectives hold up term by term")
{
    // The Levy chain and the Griewank product are folded term by term; tight
    // boxes around random points must still contain the reference value.
    std::mt19937_64 rng(17);
    for (const char* name : {"levy", "griewank", "styblinski", "zabinsky"}) {
        const auto f = enclose::make_objective(name, 20);
        std::vector<double> x(20);
        for (int k = 0; k < 200; ++k) {
            Box b = f->domain();
            for (std::size_t i = 0; i < 20; ++i) {
                const Interval d = f->domain()[i];
                x[i] = std::uniform_real_distribution<double>(d.lo(), d.hi())(rng);
                b[i] = Interval(std::max(d.lo(), x[i] - 1e-3), std::min(d.hi(), x[i] + 1e-3));
            }
            CAPTURE(name);
            REQUIRE(oracle::contains(f->eval(b), oracle::reference_value(name, x)));
            REQUIRE(oracle::contains(f->eval(Box::point(x)), oracle::reference_value(name, x)));
        }
    }
}
