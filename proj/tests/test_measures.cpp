#include <doctest.h>

#include <cmath>

#include "taucover/measures.hpp"

using namespace taucover;

TEST_CASE("build_cover_instance: feasibility bookkeeping") {
    auto mink = make_minkowski(2);
    const Region square = Region::box(mink, {0, 0}, {1, 1});
    const auto ground = square.sample(500, 1);
    LatticeOptions opts;
    opts.ground_hint = ground.size();
    const auto fam = generate_lattice_family(*mink, square, 0.2, CoverMode::V, 2.0, opts);
    const auto inst = build_cover_instance(*mink, ground, fam, 0.2, CoverMode::V);
    CHECK(inst.feasible);
    CHECK(inst.n_ground == 500);
    CHECK(inst.candidates() > 0);

    // family emptied -> infeasible with the first uncovered point
    DiamondFamily empty;
    const auto bad = build_cover_instance(*mink, ground, empty, 0.2, CoverMode::V);
    CHECK_FALSE(bad.feasible);
    CHECK(bad.first_uncovered == 0);

    // single-point region, one containing diamond
    const auto d = make_diamond(*mink, mink->point({0, 0}), mink->point({1, 0}), 2.0);
    DiamondFamily one;
    one.diamonds.push_back(d);
    const std::vector<SpacePoint> pt{mink->point({0.5, 0.1})};
    const auto tiny = build_cover_instance(*mink, pt, one, 2.0, CoverMode::W);
    CHECK(tiny.feasible);
    CHECK(tiny.candidates() == 1);
    CHECK(tiny.n_ground == 1);
}

TEST_CASE("unit square in R^2_1: estimates near the area, W <= V per delta") {
    auto mink = make_minkowski(2);
    const Region square = Region::box(mink, {0, 0}, {1, 1});
    const std::vector<double> schedule{0.4, 0.2, 0.1};
    EstimateConfig cfg;
    cfg.sample_budget = 10000;
    cfg.seed = 42;

    const auto v = estimate_measure(*mink, square, 2.0, CoverMode::V, schedule, cfg);
    const auto w = estimate_measure(*mink, square, 2.0, CoverMode::W, schedule, cfg);
    REQUIRE(v.levels.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(w.levels[i].value <= v.levels[i].value + 1e-12);
        CHECK(v.levels[i].feasible);
    }
    CHECK(v.value == doctest::Approx(1.0).epsilon(0.08));
    CHECK(w.value == doctest::Approx(1.0).epsilon(0.08));
    // envelope is nonincreasing in delta (nondecreasing toward small delta)
    for (std::size_t i = 0; i + 1 < v.envelope.size(); ++i)
        CHECK(v.envelope[i] <= v.envelope[i + 1] + 1e-15);
}

TEST_CASE("spacelike segment: V^1 stays at 1; restricted V'^1 is infinite") {
    auto mink = make_minkowski(2);
    const Region segment = Region::box(mink, {0, 0}, {0, 1});
    const std::vector<double> schedule{0.4, 0.2, 0.1, 0.05};
    EstimateConfig cfg;
    cfg.sample_budget = 4000;
    cfg.seed = 7;

    const auto v = estimate_measure(*mink, segment, 1.0, CoverMode::V, schedule, cfg);
    for (const auto& l : v.levels) {
        CHECK(l.feasible);
        CHECK(l.value <= 1.0 + 1e-9);
        CHECK(l.value > 0.9);
    }
    CHECK(v.value <= 1.0 + 1e-9);

    cfg.infeasible_as_infinity = true;
    const auto restr = estimate_restricted(mink, segment, 1.0, CoverMode::V, schedule, cfg);
    for (const auto& l : restr.levels) {
        CHECK_FALSE(l.feasible);
        CHECK(l.value == kInfinity);
    }
    CHECK(restr.value == kInfinity);
}

TEST_CASE("restricted vs unrestricted on an open diamond region agree within 10%") {
    auto mink = make_minkowski(2);
    // open diamond J((0,0),(1,0)) as box + causal membership
    const auto a = mink->point({0, 0}), b = mink->point({1, 0});
    const Region box = Region::box(mink, {0, -0.5}, {1, 0.5});
    const Region diamond = box.with_member([mink, a, b](const SpacePoint& p) {
        return mink->chron_ll(a, p) && mink->chron_ll(p, b);
    });
    const std::vector<double> schedule{0.2, 0.1, 0.05};
    EstimateConfig cfg;
    cfg.sample_budget = 6000;
    cfg.seed = 5;

    const auto plain = estimate_measure(*mink, diamond, 2.0, CoverMode::V, schedule, cfg);
    cfg.infeasible_as_infinity = true;
    const auto restr = estimate_restricted(mink, diamond, 2.0, CoverMode::V, schedule, cfg);
    REQUIRE(std::isfinite(restr.value));
    CHECK(std::abs(restr.value - plain.value) / plain.value < 0.10);
    // both near the true area 0.5
    CHECK(plain.value == doctest::Approx(0.5).epsilon(0.10));
}

TEST_CASE("one-point carrier yields infinity; empty ground yields zero") {
    auto mink = make_minkowski(2);
    const Region pt = Region::cloud(mink, {mink->point({0.5, 0.5})});
    EstimateConfig cfg;
    cfg.sample_budget = 10;
    cfg.seed = 1;
    cfg.infeasible_as_infinity = true;
    const auto est = estimate_restricted(mink, pt, 1.0, CoverMode::V, {0.5, 0.25}, cfg);
    CHECK(est.value == kInfinity);

    // empty ground: covering the empty set costs nothing
    const auto ground = std::vector<SpacePoint>{};
    DiamondFamily fam;
    const auto inst = build_cover_instance(*mink, ground, fam, 0.5, CoverMode::V);
    CHECK(inst.feasible);
    CHECK(solve_cover_greedy(inst).total_cost == 0.0);
}

TEST_CASE("scaling covariance: lambda-scaled region at lambda-scaled deltas") {
    auto mink = make_minkowski(2);
    const double lambda = 2.0, n = 2.0;
    const Region unit = Region::box(mink, {0, 0}, {1, 1});
    const Region scaled = Region::box(mink, {0, 0}, {lambda, lambda});
    const std::vector<double> schedule{0.4, 0.2, 0.1};
    std::vector<double> scaled_schedule;
    for (double d : schedule) scaled_schedule.push_back(lambda * d);
    EstimateConfig cfg;
    cfg.sample_budget = 8000;
    cfg.seed = 9;

    const auto base = estimate_measure(*mink, unit, n, CoverMode::V, schedule, cfg);
    const auto big = estimate_measure(*mink, scaled, n, CoverMode::V, scaled_schedule, cfg);
    CHECK(big.value == doctest::Approx(std::pow(lambda, n) * base.value).epsilon(1e-9));
}

TEST_CASE("dimension scan on the unit square brackets 2") {
    auto mink = make_minkowski(2);
    const Region square = Region::box(mink, {0, 0}, {1, 1});
    EstimateConfig cfg;
    cfg.sample_budget = 10000;
    cfg.seed = 12;
    const auto scan = dimension_scan(*mink, square, {1.5, 2.0, 2.5}, CoverMode::W,
                                     {0.4, 0.2, 0.1}, cfg);
    REQUIRE(scan.entries.size() == 3);
    CHECK(scan.entries[0].cls == SeriesClass::Divergent);
    CHECK(scan.entries[2].cls == SeriesClass::Decaying);
    REQUIRE(scan.resolved);
    CHECK(scan.dim_estimate > 1.7);
    CHECK(scan.dim_estimate < 2.3);

    CHECK_THROWS_AS((void)dimension_scan(*mink, square, {}, CoverMode::W, {0.4, 0.2}, cfg),
                    std::invalid_argument);
}

TEST_CASE("union of two disjoint squares scans to the same dimension") {
    auto mink = make_minkowski(2);
    const Region box = Region::box(mink, {0, 0}, {1, 2.5});
    const Region two = box.with_member([](const SpacePoint& p) {
        return p.x[1] <= 1.0 || p.x[1] >= 1.5; // x in [0,1] or [1.5,2.5]
    });
    EstimateConfig cfg;
    cfg.sample_budget = 10000;
    cfg.seed = 13;
    const auto scan =
        dimension_scan(*mink, two, {1.5, 2.5}, CoverMode::W, {0.4, 0.2, 0.1}, cfg);
    REQUIRE(scan.resolved);
    CHECK(scan.dim_estimate == doctest::Approx(2.0));
}

TEST_CASE("segment scan: finite at N=1, divergent at N=0.5") {
    auto mink = make_minkowski(2);
    const Region segment = Region::box(mink, {0, 0}, {0, 1});
    EstimateConfig cfg;
    cfg.sample_budget = 3000;
    cfg.seed = 15;
    const auto scan =
        dimension_scan(*mink, segment, {0.5, 1.0}, CoverMode::V, {0.4, 0.2, 0.1, 0.05}, cfg);
    CHECK(scan.entries[0].cls == SeriesClass::Divergent); // value ~ delta^{-1/2}
    for (const auto& l : scan.entries[1].estimate.levels) {
        CHECK(l.feasible);
        CHECK(l.value <= 1.0 + 1e-9); // V^1 stays finite at 1
    }
}

TEST_CASE("region thickening derives an enlarged box") {
    auto mink = make_minkowski(2);
    const Region box = Region::box(mink, {0, 0}, {1, 1});
    const Region thick = box.thicken(0.1);
    CHECK(thick.lo()[0] == doctest::Approx(-0.1));
    CHECK(thick.hi()[1] == doctest::Approx(1.1));
    CHECK(thick.member(mink->point({-0.05, 1.05})));
    CHECK_FALSE(thick.member(mink->point({-0.2, 0.5})));
    CHECK_THROWS_AS((void)box.thicken(-1.0), std::invalid_argument);
}

TEST_CASE("schedule validation") {
    CHECK_THROWS_AS(validate_schedule({0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(validate_schedule({}), std::invalid_argument);
    CHECK_THROWS_AS(validate_schedule({0.2, 0.0}), std::invalid_argument);
    CHECK_NOTHROW(validate_schedule({0.4, 0.2, 0.1}));
}
