#include <doctest.h>

#include <cmath>
#include <random>

#include "secrecy/analytic.hpp"
#include "secrecy/errors.hpp"
#include "secrecy/quadrature.hpp"
#include "support/oracles.hpp"

using namespace secrecy;
using namespace secrecy::analytic;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

DerivedParams reference_params(double gamma_t_db, double phi = 0.1) {
    return derive(oracle::reference_setup(gamma_t_db, phi));
}

}  // namespace

TEST_CASE("cdf_gamma_tr") {
    const DerivedParams p = reference_params(20.0);
    CHECK(cdf_gamma_tr(0.0, p) == 0.0);
    CHECK(cdf_gamma_tr(1e9, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(cdf_gamma_tr(p.gamma_0, p) - 0.1) < 1e-12);
    CHECK_THROWS_AS(cdf_gamma_tr(-1.0, p), ValidationError);

    SUBCASE("inactive secondary limit") {
        DerivedParams q = p;
        q.gamma_s = 0.0;
        for (double x : {0.0, 0.3, 5.0, 400.0}) {
            CHECK(cdf_gamma_tr(x, q) == doctest::Approx(-std::expm1(-q.lambda_tr * x / q.gamma_t)).epsilon(1e-15));
        }
    }
}

TEST_CASE("primary outage of the power-constrained secondary equals Phi in simulation") {
    for (double phi : {0.01, 0.1}) {
        for (double gt : {20.0, 40.0}) {
            const DerivedParams p = reference_params(gt, phi);
            std::mt19937_64 rng(static_cast<std::uint64_t>(gt * 100 + phi * 1000));
            std::exponential_distribution<double> h_tr(p.lambda_tr), g_sr(p.lambda_sr);
            const int trials = 2'000'000;
            int outages = 0;
            for (int i = 0; i < trials; ++i) {
                outages += p.gamma_t * h_tr(rng) / (p.gamma_s * g_sr(rng) + 1.0) < p.gamma_0;
            }
            const double est = static_cast<double>(outages) / trials;
            CAPTURE(phi);
            CAPTURE(gt);
            CHECK(std::abs(est - phi) < 4.0 * std::sqrt(phi * (1.0 - phi) / trials));
        }
    }
}

TEST_CASE("cdf_gamma_sd_sts") {
    const DerivedParams p = reference_params(20.0);
    for (int n : {1, 3, 6}) {
        for (double s : {0.0, 0.3, 1.0}) {
            CHECK(cdf_gamma_sd_sts(0.0, p, n, s) == doctest::Approx(std::pow(1.0 - s, n)).epsilon(1e-12));
        }
        for (double x : {0.0, 0.5, 10.0}) {
            CHECK(cdf_gamma_sd_sts(x, p, n, 0.0) == 1.0);
        }
    }
    CHECK_THROWS_AS(cdf_gamma_sd_sts(-0.1, p, 3, 0.5), ValidationError);
    CHECK_THROWS_AS(cdf_gamma_sd_sts(1.0, p, 0, 0.5), ValidationError);
    CHECK_THROWS_AS(cdf_gamma_sd_sts(1.0, p, 3, 1.5), ValidationError);

    SUBCASE("defining integral over the primary interference") {
        const int n = 3;
        const double s = 0.8;
        const double x = 1.0;
        auto f = [&](double y) {
            return std::pow(1.0 - s * std::exp(-p.lambda_sd * (p.gamma_t * y + 1.0) * x / p.gamma_s), n) *
                   p.lambda_td * std::exp(-p.lambda_td * y);
        };
        quadrature::QuadOptions o;
        o.rel_tol = 1e-13;
        o.scale = 1.0 / p.lambda_td;
        const double by_quadrature = quadrature::integrate_semi_inf(f, o).value;
        CHECK(rel_err(cdf_gamma_sd_sts(x, p, n, s), by_quadrature) < 1e-11);
        // mpmath, 30 digits
        CHECK(rel_err(cdf_gamma_sd_sts(x, p, n, s), 0.030003733391522952831) < 1e-12);
    }
}

TEST_CASE("eavesdropper SINR distribution") {
    const DerivedParams p = reference_params(20.0);
    CHECK(cdf_gamma_se(0.0, p) == 0.0);
    CHECK_THROWS_AS(cdf_gamma_se(-1.0, p), ValidationError);
    CHECK_THROWS_AS(pdf_gamma_se(-1.0, p), ValidationError);

    quadrature::QuadOptions o;
    o.rel_tol = 1e-12;
    o.scale = p.gamma_s / p.lambda_se;
    CHECK(quadrature::integrate_semi_inf([&](double x) { return pdf_gamma_se(x, p); }, o).value ==
          doctest::Approx(1.0).epsilon(1e-11));

    const double h = 1e-5;
    const double fd = (cdf_gamma_se(0.7 + h, p) - cdf_gamma_se(0.7 - h, p)) / (2.0 * h);
    CHECK(std::abs(pdf_gamma_se(0.7, p) - fd) < 1e-6);

    // mpmath, 30 digits
    CHECK(rel_err(cdf_gamma_se(1.0, p), 0.88586144300606032199) < 1e-13);

    SUBCASE("Monte Carlo of the eavesdropper SINR") {
        std::mt19937_64 rng(99);
        std::exponential_distribution<double> g_se(p.lambda_se), h_te(p.lambda_te);
        const int trials = 10'000'000;
        int hits = 0;
        for (int i = 0; i < trials; ++i) {
            hits += p.gamma_s * g_se(rng) / (p.gamma_t * h_te(rng) + 1.0) <= 1.0;
        }
        const double est = static_cast<double>(hits) / trials;
        const double se = std::sqrt(est * (1.0 - est) / trials);
        CHECK(std::abs(cdf_gamma_se(1.0, p) - est) < 4.0 * se);
    }
}

TEST_CASE("exponential-rational integrals") {
    auto quad = [](double a, double b, double c, int power_b) {
        quadrature::QuadOptions o;
        o.rel_tol = 1e-13;
        o.budget = 2'000'000;
        o.scale = std::min(1.0 / c, std::max(a, b));
        return quadrature::integrate_semi_inf(
                   [&](double x) { return std::exp(-c * x) / ((x + a) * std::pow(x + b, power_b)); }, o)
            .value;
    };
    const double b = 0.7;
    for (double c : {1e-6, 0.02, 1.0, 40.0, 3e3}) {
        for (double ratio : {0.01, 0.5, 0.9, 0.949, 0.951, 0.999, 1.0 - 1e-7, 1.0, 1.0 + 1e-9, 1.0 + 1e-5, 1.03,
                             1.049, 1.051, 2.0, 300.0}) {
            const double a = ratio * b;
            CAPTURE(c);
            CAPTURE(ratio);
            const auto r = detail::exp_rational_integrals(a, b, c);
            CHECK(rel_err(r.i1, quad(a, b, c, 1)) < 1e-10);
            CHECK(rel_err(r.i2, quad(a, b, c, 2)) < 1e-10);
        }
    }
}

TEST_CASE("rational integral against quadrature") {
    for (double a : {1e-3, 0.2, 0.99, 1.0, 1.0 + 1e-8, 1.04, 1.2, 50.0}) {
        const double b = 1.0;
        CAPTURE(a);
        quadrature::QuadOptions o;
        o.rel_tol = 1e-13;
        o.budget = 2'000'000;
        o.scale = std::max(a, b);
        const double q = quadrature::integrate_semi_inf(
                             [&](double x) { return 1.0 / ((x + a) * (x + b) * (x + b)); }, o)
                             .value;
        CHECK(rel_err(detail::rational_integral(a, b), q) < 1e-10);
    }
    CHECK(rel_err(detail::rational_integral(2.0, 2.0), 1.0 / (2.0 * 4.0)) < 1e-15);
}

TEST_CASE("sop_sts") {
    CHECK(sop_sts(reference_params(30.0), 6, 0.0).value == 1.0);
    CHECK(sop_sts(reference_params(30.0), 6, 0.0).method == SopMethod::exact_closed_form);
    CHECK_THROWS_AS(sop_sts(reference_params(30.0), 0, 0.5), ValidationError);
    CHECK_THROWS_AS(sop_sts(reference_params(30.0), kMaxTransmitters + 1, 0.5), ValidationError);
    CHECK_NOTHROW(sop_sts(reference_params(30.0), kMaxTransmitters, 0.5));

    // mpmath evaluation of the defining integral, 30 digits
    CHECK(rel_err(sop_sts(reference_params(10.0), 6, 0.99).value, 0.0069839185155319979299) < 1e-11);
    CHECK(rel_err(sop_sts(reference_params(20.0), 6, 0.99).value, 0.010869092434954155049) < 1e-11);
    CHECK(rel_err(sop_sts(reference_params(30.0), 6, 0.99).value, 0.012093213745019133998) < 1e-11);
    CHECK(rel_err(sop_sts(reference_params(40.0), 6, 0.99).value, 0.012258481600567914822) < 1e-11);

    SUBCASE("closed form equals the defining integral") {
        for (const auto& c : oracle::defining_integral_grid()) {
            const auto p = derive(c);
            CAPTURE(c.gamma_t_db);
            CAPTURE(c.n_transmitters);
            CAPTURE(c.backhaul_prob);
            CHECK(std::abs(sop_sts(p, c.n_transmitters, c.backhaul_prob).value -
                           oracle::sop_sts_by_definition(p, c.n_transmitters, c.backhaul_prob)) <= 1e-8);
        }
        for (const auto& c : oracle::active_configs(5, 100)) {
            const auto p = derive(c);
            CHECK(std::abs(sop_sts(p, c.n_transmitters, c.backhaul_prob).value -
                           oracle::sop_sts_by_definition(p, c.n_transmitters, c.backhaul_prob)) <= 1e-8);
        }
    }

    SUBCASE("independent Monte Carlo at 30 dB") {
        const auto mc = oracle::reference_mc(oracle::reference_setup(30.0), 1'000'000, 2718);
        CHECK(std::abs(sop_sts(reference_params(30.0), 6, 0.99).value - mc.sts) < 4.0 * mc.sts_se);
    }
}

TEST_CASE("sop_ots") {
    CHECK(sop_ots(reference_params(30.0), 6, 0.0).value == 1.0);
    CHECK(sop_ots(reference_params(30.0), 6, 0.5).method == SopMethod::exact_quadrature);
    CHECK_THROWS_AS(sop_ots(reference_params(30.0), 6, 0.5, 0.0), ValidationError);

    // mpmath 2-d quadrature, 20 digits
    CHECK(rel_err(sop_ots(reference_params(10.0), 6, 0.99).value, 0.0017363232927338370896) < 1e-7);
    CHECK(rel_err(sop_ots(reference_params(30.0), 6, 0.99).value, 0.0050723190002440117291) < 1e-7);
    CHECK(sop_ots(reference_params(30.0), 6, 0.99).value < sop_sts(reference_params(30.0), 6, 0.99).value);

    SUBCASE("single transmitter reduces to sub-optimal selection") {
        for (const auto& c : oracle::defining_integral_grid()) {
            const auto p = derive(c);
            const double sts = sop_sts(p, 1, c.backhaul_prob).value;
            CHECK(std::abs(sop_ots(p, 1, c.backhaul_prob).value - sts) <= kDefaultOtsRelTol * sts);
        }
    }

    SUBCASE("narrow interference feature when Gamma_S << Gamma_T") {
        SystemConfig c;
        c.n_transmitters = 5;
        c.backhaul_prob = 0.534503;
        c.primary_outage_threshold = 0.0143626;
        c.primary_rate_threshold = 1.63397;
        c.secrecy_rate_threshold = 2.02004;
        c.gamma_t_db = 53.0579;
        c.mean_power_db = {-3.13144, 8.71079, -0.928069, 4.43896, -6.3696, 6.05923};
        const auto p = derive(c);
        const double sts = sop_sts(p, 5, c.backhaul_prob).value;
        const double ots = sop_ots(p, 5, c.backhaul_prob).value;
        CHECK(sts < 0.99995);
        CHECK(ots <= sts + 1e-9);
        CHECK(ots < 1.0);
    }

    SUBCASE("independent Monte Carlo at 30 dB") {
        const auto mc = oracle::reference_mc(oracle::reference_setup(30.0), 1'000'000, 3141);
        CHECK(std::abs(sop_ots(reference_params(30.0), 6, 0.99).value - mc.ots) < 4.0 * mc.ots_se);
    }
}

TEST_CASE("asymptotic floors") {
    const SystemConfig c = oracle::reference_setup(30.0);
    const AsymptoticParams ap = derive_asymptotic(c);
    CHECK(sop_sts_asymptotic(ap, 6, 0.0).value == 1.0);
    CHECK(sop_ots_asymptotic(ap, 6, 0.0).value == 1.0);
    CHECK(sop_sts_asymptotic(ap, 6, 0.5).method == SopMethod::asymptotic);

    // mpmath, 20 digits
    CHECK(rel_err(sop_sts_asymptotic(ap, 6, 0.99).value, 0.012278001604337104146) < 1e-12);
    CHECK(rel_err(sop_ots_asymptotic(ap, 6, 0.99).value, 0.0052746709108847858413) < 1e-12);
    CHECK(rel_err(sop_ots_asymptotic(derive_asymptotic(oracle::reference_setup(30.0, 0.01)), 6, 0.99).value,
                  0.061190045997512882136) < 1e-12);

    SUBCASE("exact SOP approaches the floor") {
        for (double phi : {0.01, 0.1}) {
            const auto c80 = oracle::reference_setup(80.0, phi);
            const auto p80 = derive(c80);
            const auto a = derive_asymptotic(c80);
            CHECK(rel_err(sop_sts(p80, 6, 0.99).value, sop_sts_asymptotic(a, 6, 0.99).value) < 0.01);
            CHECK(rel_err(sop_ots(p80, 6, 0.99).value, sop_ots_asymptotic(a, 6, 0.99).value) < 0.01);
        }
    }

    SUBCASE("single transmitter equivalence") {
        for (const auto& cfg : oracle::active_configs(17, 300)) {
            const auto a = derive_asymptotic(cfg);
            CHECK(std::abs(sop_sts_asymptotic(a, 1, cfg.backhaul_prob).value -
                           sop_ots_asymptotic(a, 1, cfg.backhaul_prob).value) <= 1e-9);
        }
    }

    SUBCASE("optimal-selection floor equals its integral form") {
        std::mt19937_64 rng(23);
        int done = 0;
        for (const auto& cfg : oracle::active_configs(29, 8, 6)) {
            const auto a = derive_asymptotic(cfg);
            const int n = std::max(2, cfg.n_transmitters);
            const double closed = sop_ots_asymptotic(a, n, cfg.backhaul_prob).value;
            const double integral = oracle::sop_ots_asymptotic_by_definition(a, n, cfg.backhaul_prob);
            CAPTURE(n);
            CHECK(rel_err(closed, integral) < 1e-6);
            ++done;
        }
        CHECK(done == 8);
    }
}

TEST_CASE("optimal-selection floor terms") {
    // lambda_td lambda_te int int (b y / (x + b y))^n e^{-a x - lambda_te y} dx dy; with
    // x = b y w and the y integral done by hand this is
    // lambda_td lambda_te b int_0^inf dw / ((1+w)^n (a b w + lambda_te)^2).
    auto by_quadrature = [](int n, double a, double b, double ltd, double lte) {
        quadrature::QuadOptions o;
        o.rel_tol = 1e-13;
        o.budget = 2'000'000;
        o.scale = std::min(1.0, lte / (a * b));
        return quadrature::integrate_semi_inf(
                   [&](double w) { return ltd * lte * b / (std::pow(1.0 + w, n) * std::pow(a * b * w + lte, 2)); },
                   o)
            .value;
    };
    const double ltd = 4.0, lte = 0.25;
    for (int n : {1, 2, 3, 6, 10, 40}) {
        for (double r : {1e-6, 1e-3, 0.3, 0.999, 1.0, 1.001, 4.0, 300.0, 1e6}) {
            const double b = 0.5;
            const double a = r * lte / b;
            CAPTURE(n);
            CAPTURE(r);
            CHECK(rel_err(detail::ots_asymptotic_term(n, a, b, ltd, lte), by_quadrature(n, a, b, ltd, lte)) < 1e-11);
        }
    }
}

TEST_CASE("inactive secondary forces outage") {
    SystemConfig c = oracle::reference_setup(30.0, 1e-9);
    const DerivedParams p = derive(c);
    REQUIRE(p.xi <= 0.0);
    CHECK(sop_sts(p, 6, 0.99).value == 1.0);
    CHECK(sop_ots(p, 6, 0.99).value == 1.0);
    AsymptoticParams a = derive_asymptotic(c);
    a.xi = p.xi;
    CHECK(sop_sts_asymptotic(a, 6, 0.99).value == 1.0);
    CHECK(sop_ots_asymptotic(a, 6, 0.99).value == 1.0);
    a.xi = 0.0;
    CHECK(sop_sts_asymptotic(a, 6, 0.99).value == 1.0);
    CHECK(sop_ots_asymptotic(a, 6, 0.99).value == 1.0);
}

TEST_CASE("randomised grid properties") {
    const auto configs = oracle::active_configs(2025, 1000);
    int index = 0;
    for (const auto& c : configs) {
        const auto p = derive(c);
        const auto a = derive_asymptotic(c);
        const int n = c.n_transmitters;
        const double s = c.backhaul_prob;
        CAPTURE(index);
        const double sts = sop_sts(p, n, s).value;
        const double ots = sop_ots(p, n, s).value;
        const double sts_a = sop_sts_asymptotic(a, n, s).value;
        const double ots_a = sop_ots_asymptotic(a, n, s).value;
        for (double v : {sts, ots, sts_a, ots_a}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(ots <= sts + 1e-9);
        CHECK(ots_a <= sts_a + 1e-9);

        const double s_up = std::min(1.0, s + 0.1);
        CHECK(sop_sts(p, n, s_up).value <= sts + 1e-12);
        CHECK(sop_sts(p, n + 1, s).value <= sts + 1e-12);
        CHECK(sop_sts_asymptotic(a, n, s_up).value <= sts_a + 1e-12);
        CHECK(sop_sts_asymptotic(a, n + 1, s).value <= sts_a + 1e-12);
        CHECK(sop_ots_asymptotic(a, n, s_up).value <= ots_a + 1e-12);
        CHECK(sop_ots_asymptotic(a, n + 1, s).value <= ots_a + 1e-12);
        if (index % 5 == 0) {
            const double slack = 2.0 * kDefaultOtsRelTol * ots;
            CHECK(sop_ots(p, n, s_up).value <= ots + slack);
            CHECK(sop_ots(p, n + 1, s).value <= ots + slack);
        }
        ++index;
    }
}
