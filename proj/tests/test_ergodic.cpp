#include <doctest.h>

#include <cmath>

#include "zigzag/ergodic.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/rng.hpp"
#include "zigzag/simulate.hpp"

using namespace zigzag;

namespace {

EventChain single_segment(double x0, Direction theta, double duration) {
    EventChain chain;
    chain.events.push_back({0.0, x0, theta});
    chain.final_time = duration;
    return chain;
}

EventChain random_chain(std::uint64_t seed, std::size_t switches) {
    const SwitchingRate rate{make_gaussian(1.0), ExcessRate::none()};
    RngStream rng(seed, 17);
    return simulate_direct(rate, make_gaussian_inverse(1.0), 0.25, Direction::up(),
                           Horizon::until_switches(switches), rng);
}

} // namespace

TEST_CASE("exact moments on a single segment") {
    EventChain chain = single_segment(0.0, Direction::up(), 1.0); // x: 0 -> 1
    CHECK(average_exact_moment(chain, 1).value == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(average_exact_moment(chain, 2).value ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(average_exact_moment(chain, 0).value == doctest::Approx(1.0));
}

TEST_CASE("first-moment segment formula agrees with the general power rule") {
    EventChain chain = random_chain(404, 300);
    // tau_k x_k + theta_k tau_k^2 / 2, summed
    double integral = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < chain.events.size(); ++k) {
        const auto& a = chain.events[k];
        const auto& b = chain.events[k + 1];
        const double tau = b.time - a.time;
        integral += tau * a.position + 0.5 * a.direction.sign() * tau * tau;
        total += tau;
    }
    const PathAverage avg = average_exact_moment(chain, 1);
    CHECK(avg.value == doctest::Approx(integral / total).epsilon(1e-12));
}

TEST_CASE("exact tail overlap per segment") {
    // segment 0 -> 2 over tau = 2, threshold 1: half the time above
    EventChain up = single_segment(0.0, Direction::up(), 2.0);
    CHECK(average_exact_tail(up, 1.0).value == doctest::Approx(0.5));

    // segment 2 -> 0 moving down, threshold 3: never above
    EventChain down = single_segment(2.0, Direction::down(), 2.0);
    CHECK(average_exact_tail(down, 3.0).value == doctest::Approx(0.0));

    // segment -1 -> 1, threshold 1: only the endpoint touches (measure zero)
    EventChain through = single_segment(-1.0, Direction::up(), 2.0);
    CHECK(average_exact_tail(through, 1.0).value == doctest::Approx(0.0));

    // far-left threshold: the whole path counts, ratio is exactly one
    EventChain chain = random_chain(405, 100);
    CHECK(average_exact_tail(chain, -1e15).value == 1.0);
}

TEST_CASE("quadrature path") {
    EventChain chain = random_chain(406, 200);
    SUBCASE("polynomial exactness at low order") {
        const PathAverage exact = average_exact_moment(chain, 2);
        const PathAverage quad = average_quadrature(chain, Observable::monomial(2), 2);
        CHECK(quad.value == doctest::Approx(exact.value).epsilon(1e-14));
    }
    SUBCASE("cosine over one segment") {
        EventChain seg = single_segment(0.0, Direction::up(), M_PI);
        const PathAverage avg = average_quadrature(
            seg, Observable::generic([](double x) { return std::cos(x); }), 8);
        CHECK(avg.value == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("moments up to six match quadrature at order eight") {
        for (int p = 1; p <= 6; ++p) {
            const double exact = average_exact_moment(chain, p).value;
            const double quad =
                average_quadrature(chain, Observable::monomial(p), 8).value;
            CHECK(std::fabs(quad - exact) <= 1e-10 * std::max(1.0, std::fabs(exact)));
        }
    }
    SUBCASE("indicator observables dispatch to the exact overlap") {
        const PathAverage via_dispatch = path_average(chain, Observable::tail(0.4));
        const PathAverage via_exact = average_exact_tail(chain, 0.4);
        CHECK(via_dispatch.value == via_exact.value);
    }
    SUBCASE("non-finite observables raise with context") {
        CHECK_THROWS_AS(
            average_quadrature(chain, Observable::generic([](double x) {
                                   return 1.0 / (x - x); // NaN everywhere
                               })),
            evaluation_error);
    }
}

TEST_CASE("running average series") {
    EventChain chain = random_chain(407, 400);
    const double t_end = chain.final_time;

    SUBCASE("single checkpoint at the horizon equals the full average") {
        const auto series =
            running_average_series(chain, Observable::monomial(1), {t_end});
        REQUIRE(series.size() == 1);
        CHECK(series[0].second ==
              doctest::Approx(average_exact_moment(chain, 1).value).epsilon(1e-12));
    }
    SUBCASE("constant observable is one at every checkpoint") {
        const auto series = running_average_series(
            chain, Observable::generic([](double) { return 1.0; }),
            {t_end / 7.0, t_end / 2.0, t_end});
        for (const auto& [t, v] : series) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("additivity over half intervals") {
        const double half = t_end / 2.0;
        const auto series =
            running_average_series(chain, Observable::monomial(2), {half, t_end});
        const double first = series[0].second;
        const double full = series[1].second;
        const double second_integral =
            integrate_observable(chain, Observable::monomial(2), half, t_end);
        CHECK(full == doctest::Approx((first * half + second_integral) / t_end)
                          .epsilon(1e-12));
    }
    SUBCASE("bad checkpoints") {
        CHECK_THROWS_AS(
            running_average_series(chain, Observable::monomial(1), {t_end * 1.5}),
            domain_error);
        CHECK_THROWS_AS(running_average_series(chain, Observable::monomial(1),
                                               {t_end / 2.0, t_end / 3.0}),
                        domain_error);
    }
}

TEST_CASE("degenerate chains raise") {
    EventChain empty;
    CHECK_THROWS_AS(average_exact_moment(empty, 1), domain_error);
    EventChain no_time;
    no_time.events.push_back({0.0, 0.0, Direction::up()});
    no_time.final_time = 0.0;
    CHECK_THROWS_AS(average_exact_moment(no_time, 1), domain_error);
}

TEST_CASE("path average covers the final partial segment") {
    EventChain chain;
    chain.events.push_back({0.0, 0.0, Direction::up()});
    chain.events.push_back({1.0, 1.0, Direction::down()});
    chain.final_time = 1.5; // partial segment 1 -> 0.5
    const PathAverage avg = average_exact_moment(chain, 1);
    // int = 0.5 (up leg) + (1 + 0.5)/2 * 0.5 (partial down leg) = 0.875
    CHECK(avg.value == doctest::Approx(0.875 / 1.5).epsilon(1e-14));
    CHECK(avg.total_time == doctest::Approx(1.5));
    CHECK(avg.segment_count == 2);
}
