#include <doctest.h>

#include <cmath>

#include "secrecy/analytic.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/montecarlo.hpp"
#include "support/oracles.hpp"

using namespace secrecy;

TEST_CASE("scheme names round-trip") {
    for (SchemeKind k : kAllSchemes) {
        CHECK(parse_scheme(to_string(k)) == k);
    }
    CHECK(!parse_scheme("best").has_value());
    CHECK(is_blind(SchemeKind::sts_blind));
    CHECK(!is_blind(SchemeKind::ots_known));
}

TEST_CASE("make_estimate") {
    const auto e = make_estimate(25, 100);
    CHECK(e.estimate == 0.25);
    CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 0.75 / 100.0)));
    CHECK(e.trials == 100);
    CHECK(e.outages == 25);
    CHECK(make_estimate(0, 10).std_error == 0.0);
    CHECK_THROWS_AS(make_estimate(0, 0), ValidationError);
}

TEST_CASE("degenerate configurations") {
    SUBCASE("no backhaul") {
        SystemConfig c = oracle::reference_setup(30.0);
        c.backhaul_prob = 0.0;
        for (SchemeKind k : kAllSchemes) {
            const auto e = simulate_sop(c, k, 2000, 1, 1);
            CHECK(e.outages == 2000);
            CHECK(e.estimate == 1.0);
        }
    }
    SUBCASE("inactive secondary") {
        SystemConfig c = oracle::reference_setup(30.0, 1e-9);
        REQUIRE(derive(c).xi <= 0.0);
        for (SchemeKind k : kAllSchemes) {
            CHECK(simulate_sop(c, k, 2000, 1, 1).estimate == 1.0);
        }
    }
    SUBCASE("zero trials") {
        CHECK_THROWS_AS(simulate_sop(oracle::reference_setup(30.0), SchemeKind::sts_known, 0, 1, 1), ValidationError);
    }
}

TEST_CASE("single always-on transmitter: all schemes coincide") {
    SystemConfig c = oracle::reference_setup(20.0);
    c.n_transmitters = 1;
    c.backhaul_prob = 1.0;
    const auto p = derive(c);
    for (std::uint64_t i = 0; i < 20000; ++i) {
        PhiloxStream rng(RngSpec{5, i});
        const auto t = sample_trial_all(p, c, rng);
        CHECK((t.outage_mask == 0u || t.outage_mask == 0xfu));
    }
}

TEST_CASE("per-trial dominance") {
    SystemConfig c = oracle::reference_setup(20.0);
    c.backhaul_prob = 0.6;
    const auto p = derive(c);
    for (std::uint64_t i = 0; i < 100000; ++i) {
        PhiloxStream rng(RngSpec{77, i});
        const auto t = sample_trial_all(p, c, rng);
        if (t.outage(SchemeKind::ots_known)) CHECK(t.outage(SchemeKind::sts_known));
        if (t.outage(SchemeKind::ots_known)) CHECK(t.outage(SchemeKind::ots_blind));
        if (t.outage(SchemeKind::sts_known)) CHECK(t.outage(SchemeKind::sts_blind));
    }
}

TEST_CASE("single-scheme sampling matches the shared sampler") {
    const SystemConfig c = oracle::reference_setup(30.0);
    const auto p = derive(c);
    for (SchemeKind k : kAllSchemes) {
        for (std::uint64_t i = 0; i < 2000; ++i) {
            PhiloxStream a(RngSpec{3, i}), b(RngSpec{3, i});
            CHECK(sample_trial(p, c, k, a) == sample_trial_all(p, c, b).outage(k));
        }
    }
}

TEST_CASE("reproducible for any worker count") {
    const SystemConfig c = oracle::reference_setup(30.0);
    const auto one = simulate_sop(c, kAllSchemes, 200000, 42, 1);
    for (unsigned w : {2u, 4u, 16u}) {
        const auto many = simulate_sop(c, kAllSchemes, 200000, 42, w);
        for (std::size_t i = 0; i < one.size(); ++i) {
            CHECK(many[i].outages == one[i].outages);
        }
    }
    CHECK(simulate_sop(c, SchemeKind::ots_known, 200000, 42, 3).outages == one[1].outages);
    CHECK(simulate_sop(c, SchemeKind::ots_known, 200000, 43, 1).outages != one[1].outages);
}

TEST_CASE("agreement with the analytic SOP") {
    for (double gt : {10.0, 30.0}) {
        const SystemConfig c = oracle::reference_setup(gt);
        const auto p = derive(c);
        const SchemeKind known[] = {SchemeKind::sts_known, SchemeKind::ots_known};
        const auto mc = simulate_sop(c, known, 1'000'000, 9, 1);
        CAPTURE(gt);
        CHECK(std::abs(mc[0].estimate - analytic::sop_sts(p, 6, 0.99).value) < 4.0 * mc[0].std_error);
        CHECK(std::abs(mc[1].estimate - analytic::sop_ots(p, 6, 0.99).value) < 4.0 * mc[1].std_error);
    }
}

TEST_CASE("agreement with an independent simulator") {
    SystemConfig c = oracle::reference_setup(20.0);
    c.backhaul_prob = 0.7;
    c.n_transmitters = 3;
    const auto ref = oracle::reference_mc(c, 1'000'000, 4);
    const SchemeKind known[] = {SchemeKind::sts_known, SchemeKind::ots_known};
    const auto mc = simulate_sop(c, known, 1'000'000, 8, 1);
    CHECK(std::abs(mc[0].estimate - ref.sts) < 4.0 * std::hypot(mc[0].std_error, ref.sts_se));
    CHECK(std::abs(mc[1].estimate - ref.ots) < 4.0 * std::hypot(mc[1].std_error, ref.ots_se));
}

TEST_CASE("known backhaul beats blind selection") {
    SystemConfig c = oracle::reference_setup(30.0);
    c.backhaul_prob = 0.5;
    const auto mc = simulate_sop(c, kAllSchemes, 200000, 12, 1);
    CHECK(mc[0].estimate + 4.0 * std::hypot(mc[0].std_error, mc[2].std_error) < mc[2].estimate);
    CHECK(mc[1].estimate + 4.0 * std::hypot(mc[1].std_error, mc[3].std_error) < mc[3].estimate);
    // blind selection succeeds iff the chosen backhaul is up and the full-backhaul link is secure
    const auto p = derive(c);
    CHECK(std::abs(mc[2].estimate - (1.0 - 0.5 * (1.0 - analytic::sop_sts(p, 6, 1.0).value))) <
          4.0 * mc[2].std_error);
    CHECK(std::abs(mc[3].estimate - (1.0 - 0.5 * (1.0 - analytic::sop_ots(p, 6, 1.0).value))) <
          4.0 * mc[3].std_error);
}
