#include <doctest.h>

#include <cmath>

#include "zigzag/diffusion.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/special_functions.hpp"
#include "zigzag/stats.hpp"

using namespace zigzag;

TEST_CASE("limiting SDE coefficients") {
    const TargetModel gauss = make_gaussian(1.0);
    const SdeModel model = make_limiting_sde(gauss, ExcessRate::quadratic(1.0));
    // b(1) = -(1/2)(U'/gamma + gamma'/gamma^2) = -(1/2)(1/2 + 2/4) = -1/2
    CHECK(model.drift(1.0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(model.diffusion(1.0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK_FALSE(model.derivative_from_finite_difference);
    CHECK_THROWS_AS(make_limiting_sde(gauss, ExcessRate::none()), domain_error);

    // custom gamma without a derivative falls back to finite differences
    ExcessRate custom;
    custom.family = ExcessRate::Family::custom;
    custom.value = [](double x) { return 2.0 + std::sin(x); };
    custom.sup_on_segment = [](double, double) { return 3.0; };
    const SdeModel fd = make_limiting_sde(gauss, custom);
    CHECK(fd.derivative_from_finite_difference);
    const double expected =
        -0.5 * (1.0 / 3.0 + std::cos(M_PI / 2.0) / 9.0); // at x = pi/2
    CHECK(fd.drift(M_PI / 2.0) == doctest::Approx(expected).epsilon(1e-5));
}

TEST_CASE("euler-maruyama brownian sanity") {
    // b = 0, gamma = 1: xi(t) ~ N(x0, t)
    SdeModel model;
    model.drift = [](double) { return 0.0; };
    model.diffusion = [](double) { return 1.0; };
    model.gamma_value = [](double) { return 1.0; };
    RunningMoments acc;
    const double t_end = 2.0;
    for (int path = 0; path < 10000; ++path) {
        RngStream rng(9000, path);
        acc.add(simulate_sde_em(model, t_end, 0.5, 1e-2, rng));
    }
    CHECK(acc.mean() == doctest::Approx(0.5).epsilon(0.02));
    CHECK(acc.variance() == doctest::Approx(t_end).epsilon(0.03));

    RngStream bad_step_rng(1, 1);
    CHECK_THROWS_AS(simulate_sde_em(model, 1.0, 0.0, 0.0, bad_step_rng), domain_error);
}

TEST_CASE("euler-maruyama blow-up is reported") {
    SdeModel model;
    model.drift = [](double x) { return x * x * x; }; // super-linear explosion
    model.diffusion = [](double) { return 0.0; };
    model.gamma_value = [](double) { return 1.0; };
    RngStream rng(9001, 0);
    CHECK_THROWS_AS(simulate_sde_em(model, 100.0, 5.0, 0.5, rng), integration_error);
}

TEST_CASE("step halving with common randomness moves the law very little") {
    const TargetModel gauss = make_gaussian(1.0);
    const SdeModel model = make_limiting_sde(gauss, ExcessRate::quadratic(1.0));
    std::vector<double> coarse, fine;
    for (int path = 0; path < 4000; ++path) {
        RngStream r1(9100, path);
        coarse.push_back(simulate_sde_em(model, 5.0, 2.0, 1e-3, r1));
        RngStream r2(9100, path);
        fine.push_back(simulate_sde_em(model, 5.0, 2.0, 5e-4, r2));
    }
    CHECK(ks_statistic_two_sample(coarse, fine) < 0.01);
}

TEST_CASE("long-run EM law matches the target for the quadratic-gamma example") {
    const TargetModel gauss = make_gaussian(1.0);
    const SdeModel model = make_limiting_sde(gauss, ExcessRate::quadratic(1.0));
    std::vector<double> times;
    for (int i = 1; i <= 10000; ++i) times.push_back(0.1 * i); // T = 1000
    RngStream rng(9200, 0);
    const std::vector<double> samples =
        simulate_sde_em_positions(model, times, 0.0, 1e-3, rng);
    const double ks = ks_statistic(samples, [](double x) { return normal_cdf(x); });
    CHECK(ks < 0.03);
}

TEST_CASE("scaled zig-zag reduces to a telegraph process for flat potentials") {
    TargetModel flat;
    flat.potential = [](double) { return 0.0; };
    flat.grad = [](double) { return 0.0; };
    flat.hessian_bound = 0.0;
    flat.normalization = 1.0; // unused by the simulator
    flat.scale = 1.0;
    flat.name = "flat";

    const double eps = 0.01;
    const double t_end = 2.0;
    RunningMoments acc;
    for (int path = 0; path < 4000; ++path) {
        RngStream rng(9300, path);
        const Direction theta0 =
            rng.uniform() < 0.5 ? Direction::up() : Direction::down();
        acc.add(simulate_scaled_zigzag(flat, ExcessRate::constant(1.0), eps, t_end, 0.0,
                                       theta0, rng));
    }
    // variance of the diffusion limit: t / gamma
    CHECK(acc.mean() == doctest::Approx(0.0).epsilon(0.1));
    CHECK(acc.variance() == doctest::Approx(t_end).epsilon(0.15));
}

TEST_CASE("occupation law of the gamma-augmented zig-zag still targets pi") {
    const TargetModel gauss = make_gaussian(1.0);
    ExcessRate gamma = ExcessRate::quadratic(1.0);
    SwitchingRate rate{gauss, gamma};
    const BoundingIntensity bound = BoundingIntensity::affine(gauss, gamma, 1.0);
    std::vector<double> times;
    for (int i = 1; i <= 5000; ++i) times.push_back(2.0 * i); // T = 1e4, spacing 2
    RngStream rng(9400, 0);
    const std::vector<double> samples =
        simulate_thinned_positions(rate, bound, 0.0, Direction::up(), times, rng);
    const double ks = ks_statistic(samples, [](double x) { return normal_cdf(x); });
    CHECK(ks < 0.03);
}

TEST_CASE("comparison report is deterministic and shaped correctly") {
    const TargetModel gauss = make_gaussian(1.0);
    const ExcessRate gamma = ExcessRate::quadratic(1.0);
    const ComparisonReport a = compare_distributions(gauss, gamma, {10.0, 1.0}, {1.0, 2.0},
                                                     200, 2.0, 777, 2);
    const ComparisonReport b = compare_distributions(gauss, gamma, {10.0, 1.0}, {1.0, 2.0},
                                                     200, 2.0, 777, 1);
    REQUIRE(a.ks.size() == 2);
    REQUIRE(a.ks[0].size() == 2);
    bool identical = true;
    for (std::size_t e = 0; e < 2; ++e) {
        for (std::size_t t = 0; t < 2; ++t) {
            identical = identical && a.ks[e][t] == b.ks[e][t];
            CHECK(a.ks[e][t] >= 0.0);
            CHECK(a.ks[e][t] <= 1.0);
        }
    }
    CHECK(identical); // thread count must not matter
    CHECK(a.zigzag_samples[0][0].size() == 200);
    CHECK(a.sde_samples[0].size() == 200);
}
