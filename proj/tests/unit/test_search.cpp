#include "doctest.h"

#include <algorithm>
#include <vector>

#include "enclose/search.hpp"
#include "enclose/suite.hpp"
#include "toys.hpp"

using enclose::Box;
using enclose::Interval;
using enclose::RegionEntry;
using enclose::Solver;
using enclose::SolverConfig;
using enclose::StopReason;

namespace {

SolverConfig small(const char* fn, std::size_t n, std::size_t p)
{
    SolverConfig c;
    c.objective = fn;
    c.n = n;
    c.scheme.dims_per_iter = p;
    return c;
}

} // namespace

TEST_CASE("configuration defaults and validation")
{
    const SolverConfig c;
    CHECK(c.scheme.dims_per_iter == 10);
    CHECK(c.scheme.subintervals == 4);
    CHECK(c.samples == 10);
    CHECK(c.width_tolerance == 1e-4);
    CHECK(c.derivative_test);
    CHECK(c.sampling == enclose::SamplingScope::selected);
    CHECK_NOTHROW(c.validate());

    SolverConfig bad = c;
    bad.samples = 0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.width_tolerance = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.scheme.subintervals = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = c;
    bad.objective = "nope";
    CHECK_THROWS_AS(Solver{bad}, std::invalid_argument);
}

TEST_CASE("worklist ordering and sweeping")
{
    enclose::WorkList list(1e-4);
    list.push({0, 0, 1, 3.2, 1.0});
    list.push({1, 0, 1, 0.5, 1e-5});
    list.push({2, 0, 1, 7.1, 1.0});
    CHECK(list.size() == 3);
    CHECK(list.wide_count() == 2);
    CHECK(list.min().lb == 0.5);
    const RegionEntry e = list.pop_min();
    CHECK(e.lb == 0.5);
    CHECK(list.size() == 2);
    CHECK(list.wide_count() == 2);

    SUBCASE("ties go to the earlier iteration, then the smaller index")
    {
        enclose::WorkList t;
        t.push({9, 5, 1, 1.0, 1.0});
        t.push({4, 3, 1, 1.0, 1.0});
        t.push({2, 3, 1, 1.0, 1.0});
        CHECK(t.pop_min() == RegionEntry{2, 3, 1, 1.0, 1.0});
        CHECK(t.pop_min() == RegionEntry{4, 3, 1, 1.0, 1.0});
        CHECK(t.pop_min() == RegionEntry{9, 5, 1, 1.0, 1.0});
        CHECK_THROWS(t.pop_min());
    }
    SUBCASE("sweep is strict")
    {
        enclose::WorkList s(1e-4);
        for (const double lb : {0.5, 3.2, 7.1}) {
            s.push({0, 0, 1, lb, 1.0});
        }
        CHECK(s.sweep(enclose::fp::inf) == 0);
        CHECK(s.sweep(3.2) == 1);
        CHECK(s.size() == 2);
        CHECK(s.wide_count() == 2);
        for (const auto& x : s.entries()) {
            CHECK(x.lb <= 3.2);
        }
        CHECK(s.min().lb == 0.5);
        CHECK(s.sweep(-enclose::fp::inf) == 2);
        CHECK(s.empty());
        CHECK(s.wide_count() == 0);
    }
}

TEST_CASE("initial state")
{
    Solver s(small("levy", 2, 2));
    REQUIRE(s.worklist().size() == 1);
    const RegionEntry root = s.worklist().min();
    CHECK(root.itr == -1);
    CHECK(root.cyc == 1);
    CHECK(s.reconstruct_box(root) == Box::uniform(2, Interval(-10, 10)));
    CHECK(s.gub() == enclose::fp::inf);
    CHECK(s.glb() == s.objective().eval(s.objective().domain()).lo());
    CHECK(root.lb == s.glb());
    CHECK(s.history().empty());
}

TEST_CASE("selection removes exactly one entry")
{
    Solver s(small("rastrigin", 4, 2));
    s.iterate();
    const std::size_t before = s.worklist().size();
    const RegionEntry min = s.worklist().min();
    const auto [e, box] = s.select_region();
    CHECK(e == min);
    CHECK(s.worklist().size() == before - 1);
    CHECK(box == s.reconstruct_box(e));
}

TEST_CASE("box reconstruction")
{
    SolverConfig c;
    c.scheme = {2, 4};
    Solver s(c, toys::square(2, 0, 4));
    s.iterate();
    CHECK(s.reconstruct_box({7, 0, 1, 0.0, 1.0}) == Box({Interval(3, 4), Interval(1, 2)}));
    CHECK(s.reconstruct_box({0, -1, 1, 0.0, 1.0}) == s.objective().domain());
    CHECK_THROWS_AS(s.reconstruct_box({0, 5, 1, 0.0, 1.0}), std::out_of_range);

    // Every stored entry rebuilds to the child the kernel evaluated.
    Solver l(small("levy", 6, 3));
    for (int k = 0; k < 4; ++k) {
        l.iterate();
    }
    for (const auto& e : l.worklist().entries()) {
        const auto& rec = l.history()[static_cast<std::size_t>(e.itr)];
        const Box b = l.reconstruct_box(e);
        CHECK(b == enclose::child_box(rec.selected, rec.cyc_used, e.sidx, l.scheme()));
        CHECK(l.objective().eval(b).lo() == e.lb);
        CHECK(b.max_width() == e.maxwidth);
    }
}

TEST_CASE("diagonal sampling of the selected region")
{
    const auto f = toys::linear(1, 0, 11);
    const auto r = enclose::sample_diagonal(*f, f->domain(), 10);
    CHECK(r.upper == 1.0);
    CHECK(r.point == std::vector<double>{1.0});
    const auto mid = enclose::sample_diagonal(*f, f->domain(), 1);
    CHECK(mid.point == std::vector<double>{5.5});

    const auto g = enclose::make_objective("griewank", 5);
    const auto up = enclose::sample_diagonal(*g, g->domain(), 10);
    CHECK(up.upper >= 0.0);
    CHECK(g->domain().contains(up.point));
}

TEST_CASE("first iteration")
{
    Solver s(small("levy", 50, 10));
    s.iterate();
    REQUIRE(s.history().size() == 1);
    CHECK(s.history()[0].selected == s.objective().domain());
    CHECK(s.history()[0].cyc_used == enclose::CyclingIndex{1});
    REQUIRE_FALSE(s.worklist().empty());
    for (const auto& e : s.worklist().entries()) {
        CHECK(e.cyc == 11);
        CHECK(e.itr == 0);
        CHECK(e.maxwidth > 0.0);
    }
    CHECK(s.gub() < enclose::fp::inf);
    CHECK(s.iteration() == 1);
}

TEST_CASE("stopping rules")
{
    SUBCASE("iteration budget")
    {
        SolverConfig c = small("griewank", 10, 5);
        c.max_iterations = 3;
        Solver s(c);
        const auto r = s.run();
        CHECK(r.stop == StopReason::max_iterations);
        CHECK(r.iterations == 3);
        CHECK(r.glb <= r.gub);
    }
    SUBCASE("time budget")
    {
        SolverConfig c = small("griewank", 10, 5);
        c.time_limit_s = 1e-9;
        Solver s(c);
        CHECK(s.run().stop == StopReason::time_limit);
    }
    SUBCASE("width tolerance")
    {
        Solver s(small("levy", 4, 4));
        CHECK_FALSE(s.stopping_check());
        const auto r = s.run();
        CHECK(r.stop == StopReason::tolerance);
        for (const auto& region : r.regions) {
            CHECK(region.box.max_width() < 1e-4);
        }
    }
}

TEST_CASE("gub is non-increasing and glb stays below it")
{
    SolverConfig c = small("ackley", 8, 4);
    c.debug_soundness = true;
    Solver s(c);
    double last = enclose::fp::inf;
    while (!s.stopping_check()) {
        s.iterate();
        CHECK(s.gub() <= last);
        CHECK(s.glb() <= s.gub());
        last = s.gub();
    }
    CHECK(s.soundness() == enclose::SoundnessStatus::ok);
}

TEST_CASE("fewer dimensions than the group size")
{
    Solver s(small("levy", 3, 10));
    CHECK(s.scheme().dims_per_iter == 3);
    const auto r = s.run();
    CHECK(r.stop == StopReason::tolerance);
    CHECK(r.iterations == enclose::cycle_law_iterations(20.0, 3, 3, 4, 1e-4));
}

TEST_CASE("cycle-count law")
{
    // ceil(n/p) * C, C the least c with W / 4^c < tol, checked by direct powers.
    auto law = [](double w, std::size_t n, std::size_t p) {
        std::uint64_t c = 0;
        double scale = 1.0;
        while (!(w / scale < 1e-4)) {
            scale *= 4.0;
            ++c;
        }
        return c * ((n + p - 1) / p);
    };
    CHECK(enclose::cycle_law_iterations(20.0, 10, 5, 4, 1e-4) == law(20.0, 10, 5));
    CHECK(enclose::cycle_law_iterations(20.0, 10, 5, 4, 1e-4) == 18);
    CHECK(enclose::cycle_law_iterations(75.0, 50, 10, 4, 1e-4) == 50);
    CHECK(enclose::cycle_law_iterations(210.0, 10, 5, 4, 1e-4) == 22);

    const auto fast = enclose::suite_rows(enclose::Suite::fast);
    REQUIRE(fast.size() == 10);
    for (const auto& row : fast) {
        const auto f = enclose::make_objective(row.function, 10);
        CHECK(row.expected_iterations == law(f->domain().max_width(), 10, 5));
    }
}

TEST_CASE("small runs enclose the minimum and keep the minimizer")
{
    for (const auto name : enclose::objective_names) {
        SolverConfig c;
        c.objective = std::string(name);
        c.n = 4;
        c.scheme.dims_per_iter = 2;
        c.debug_soundness = true;
        Solver s(c);
        const auto r = s.run();
        CAPTURE(name);
        CHECK(r.stop == StopReason::tolerance);
        CHECK(r.soundness == enclose::SoundnessStatus::ok);
        const Interval f_star = s.objective().spec().known_minimum;
        CHECK(r.glb <= f_star.lo());
        CHECK(f_star.hi() <= r.gub);
        CHECK(r.gub - r.glb <= 1e-2);
        CHECK(std::any_of(r.regions.begin(), r.regions.end(),
                          [&](const auto& reg) { return reg.box.intersects(s.objective().spec().minimizer); }));
        CHECK(s.objective().eval_point_upper(r.witness) == r.gub);
    }
}

TEST_CASE("soundness instrumentation catches a lost minimizer")
{
    // Minimizer declared at 0.75 while the true minimum of x^2 sits at 0: the
    // search discards the region around 0.75 and the check must say so.
    SolverConfig c;
    c.scheme = {1, 4};
    c.debug_soundness = true;
    Solver s(c, std::make_unique<toys::Quadratic>(1, Interval(-1, 1), 1.0, 0.0, 0.75, 0.5625));
    const auto r = s.run();
    CHECK(r.soundness == enclose::SoundnessStatus::violated);
}

TEST_CASE("trace is identical across runs and thread counts")
{
    for (const char* name : {"levy", "griewank", "zabinsky"}) {
        SolverConfig c = small(name, 10, 5);
        Solver a(c);
        a.run();
        c.threads = 8;
        Solver b(c);
        b.run();
        CAPTURE(name);
        CHECK(a.trace() == b.trace());
        CHECK(a.trace().size() == a.iteration());
    }
}

TEST_CASE("per-subregion sampling")
{
    SolverConfig c = small("levy", 10, 5);
    c.sampling = enclose::SamplingScope::per_subregion;
    c.debug_soundness = true;
    Solver s(c);
    const auto r = s.run();
    CHECK(r.stop == StopReason::tolerance);
    CHECK(r.soundness == enclose::SoundnessStatus::ok);
    CHECK(r.glb <= 0.0);
    CHECK(0.0 <= r.gub);
}

TEST_CASE("slack rounding still encloses")
{
    SolverConfig c = small("fu", 6, 3);
    c.rounding = enclose::RoundingPolicy::slack(4);
    c.debug_soundness = true;
    const auto r = Solver(c).run();
    CHECK(r.soundness == enclose::SoundnessStatus::ok);
    CHECK(r.glb <= 1.0);
    CHECK(1.0 <= r.gub);
}

TEST_CASE("memory layout")
{
    CHECK(sizeof(RegionEntry) == 32);
    Solver s(small("levy", 6, 3));
    for (int k = 0; k < 5; ++k) {
        s.iterate();
    }
    CHECK(s.history().size() == s.iteration());
    for (const auto& rec : s.history()) {
        CHECK(rec.selected.dimension() == 6);
        CHECK(s.objective().domain().contains(rec.selected));
    }
}
