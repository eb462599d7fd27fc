#include <doctest.h>

#include <cmath>
#include <sstream>

#include "zigzag/errors.hpp"
#include "zigzag/simulate.hpp"
#include "zigzag/stats.hpp"

using namespace zigzag;

TEST_CASE("direct switching time examples") {
    const InverseIntensity gauss = make_gaussian_inverse(1.0);
    // z = 0.5 from x=0 moving up: tau = sqrt(2 z) = 1
    CHECK(switching_time_direct(gauss, 0.0, Direction::up(), std::exp(-0.5)) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // u -> 1 means z -> 0 and tau -> 0
    CHECK(switching_time_direct(gauss, 0.0, Direction::up(), 1.0 - 1e-12) < 1e-5);

    const InverseIntensity student = make_student_inverse(2.0);
    const double expected = std::sqrt(2.0 * (std::exp(2.0 / 3.0) - 1.0));
    CHECK(switching_time_direct(student, 0.0, Direction::up(), std::exp(-1.0)) ==
          doctest::Approx(expected).epsilon(1e-12));

    CHECK_THROWS_AS(switching_time_direct(gauss, 0.0, Direction::up(), 0.0), domain_error);
    CHECK_THROWS_AS(switching_time_direct(gauss, 0.0, Direction::up(), 1.0), domain_error);
}

TEST_CASE("closed-form inverses satisfy round trips") {
    RngStream rng(99, 0);
    for (const InverseIntensity& inv :
         {make_gaussian_inverse(1.0), make_gaussian_inverse(3.0),
          make_student_inverse(2.0), make_student_inverse(5.0)}) {
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = 8.0 * (rng.uniform() - 0.5);
            const Direction theta =
                rng.uniform() < 0.5 ? Direction::up() : Direction::down();
            const double z = 5.0 * rng.uniform() + 1e-6;
            const double t = inv.inverse(z, x, theta);
            worst = std::max(worst, std::fabs(inv.integral(t, x, theta) - z));
            const double t2 = 4.0 * rng.uniform() + 0.2;
            const double z2 = inv.integral(t2, x, theta);
            if (z2 > 1e-9) {
                worst = std::max(worst, std::fabs(inv.inverse(z2, x, theta) - t2));
            }
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("gaussian inverse example values") {
    const InverseIntensity inv = make_gaussian_inverse(1.0);
    CHECK(inv.inverse(0.0, 1.0, Direction::up()) == doctest::Approx(0.0));
    CHECK(inv.inverse(1.5, 1.0, Direction::up()) == doctest::Approx(1.0).epsilon(1e-13));
    // student theta x < 0 branch: H(z) = 1 + sqrt(2 (e^{2z/3} - 1)) at nu=2, x=-1
    const InverseIntensity st = make_student_inverse(2.0);
    const double z = 0.8;
    CHECK(st.inverse(z, -1.0, Direction::up()) ==
          doctest::Approx(1.0 + std::sqrt(2.0 * (std::exp(2.0 * z / 3.0) - 1.0)))
              .epsilon(1e-12));
}

TEST_CASE("direct simulation basics") {
    const SwitchingRate rate{make_gaussian(1.0), ExcessRate::none()};
    const InverseIntensity inv = make_gaussian_inverse(1.0);

    SUBCASE("zero-switch horizon leaves only the initial event") {
        RngStream rng(7, 1);
        EventChain chain = simulate_direct(rate, inv, 0.5, Direction::up(),
                                           Horizon::until_switches(0), rng);
        CHECK(chain.events.size() == 1);
        CHECK(chain.final_time == 0.0);
        CHECK(chain.segment_count() == 0);
    }

    SUBCASE("bad horizon") {
        CHECK_THROWS_AS(Horizon::until_time(0.0), domain_error);
        CHECK_THROWS_AS(Horizon::until_time(-3.0), domain_error);
    }

    SUBCASE("determinism: same seed gives identical chains") {
        RngStream rng1(1234, 5);
        RngStream rng2(1234, 5);
        EventChain a = simulate_direct(rate, inv, 0.0, Direction::up(),
                                       Horizon::until_switches(500), rng1);
        EventChain b = simulate_direct(rate, inv, 0.0, Direction::up(),
                                       Horizon::until_switches(500), rng2);
        REQUIRE(a.events.size() == b.events.size());
        bool identical = a.final_time == b.final_time && a.proposals == b.proposals;
        for (std::size_t i = 0; i < a.events.size(); ++i) {
            identical = identical && a.events[i].time == b.events[i].time &&
                        a.events[i].position == b.events[i].position &&
                        a.events[i].direction == b.events[i].direction;
        }
        CHECK(identical);
    }

    SUBCASE("flow invariant holds exactly and directions alternate") {
        RngStream rng(42, 0);
        EventChain chain = simulate_direct(rate, inv, 0.3, Direction::down(),
                                           Horizon::until_switches(1000), rng);
        for (std::size_t k = 0; k + 1 < chain.events.size(); ++k) {
            const auto& a = chain.events[k];
            const auto& b = chain.events[k + 1];
            CHECK(b.position == a.position + (b.time - a.time) * a.direction.sign());
            CHECK(b.direction == a.direction.flipped());
            CHECK(b.time > a.time);
        }
        CHECK(chain.proposals == chain.accepted);
        CHECK(chain.grad_evals == chain.accepted);
    }

    SUBCASE("time horizon keeps the partial segment") {
        RngStream rng(8, 8);
        EventChain chain = simulate_direct(rate, inv, 0.0, Direction::up(),
                                           Horizon::until_time(25.0), rng);
        CHECK(chain.final_time == 25.0);
        CHECK(chain.events.back().time <= 25.0);
        CHECK(chain.segment_count() == chain.events.size());
    }

    SUBCASE("long-run mean is near zero (stationarity oracle)") {
        RngStream rng(2718, 3);
        EventChain chain = simulate_direct(rate, inv, 0.0, Direction::up(),
                                           Horizon::until_switches(1000000), rng);
        // time-integral of x over the path / T, with sigma^2 from the CLT
        double integral = 0.0;
        for (std::size_t k = 0; k + 1 < chain.events.size(); ++k) {
            const auto& a = chain.events[k];
            const auto& b = chain.events[k + 1];
            const double tau = b.time - a.time;
            integral += tau * a.position + 0.5 * a.direction.sign() * tau * tau;
        }
        const double mean = integral / chain.final_time;
        const double sigma2 = 2.0 * std::sqrt(2.0 / M_PI); // asymptotic variance of x
        const double se = std::sqrt(sigma2 / chain.final_time);
        CHECK(std::fabs(mean) < 3.0 * se);
    }

    SUBCASE("mismatched inverse is rejected") {
        const InverseIntensity wrong = make_student_inverse(2.0);
        RngStream rng(1, 1);
        CHECK_THROWS_AS(simulate_direct(rate, wrong, 0.0, Direction::up(),
                                        Horizon::until_switches(10), rng),
                        domain_error);
    }

    SUBCASE("excess rates are rejected by the direct method") {
        const SwitchingRate with_excess{make_gaussian(1.0), ExcessRate::constant(1.0)};
        RngStream rng(1, 2);
        CHECK_THROWS_AS(simulate_direct(with_excess, inv, 0.0, Direction::up(),
                                        Horizon::until_switches(10), rng),
                        domain_error);
    }
}

TEST_CASE("thinned simulation") {
    const TargetModel gauss = make_gaussian(1.0);
    const SwitchingRate rate{gauss, ExcessRate::none()};

    SUBCASE("tight affine bound accepts every proposal") {
        // for the gaussian, the affine bound equals the exact rate along rays
        const BoundingIntensity bound = BoundingIntensity::affine(gauss);
        RngStream rng(10, 4);
        EventChain chain = simulate_thinned(rate, bound, 0.7, Direction::up(),
                                            Horizon::until_switches(2000), rng);
        CHECK(chain.accepted == chain.proposals);
        CHECK(chain.grad_evals == chain.proposals);
    }

    SUBCASE("constant bound for the cauchy target") {
        const TargetModel cauchy = make_student_t(1.0);
        const SwitchingRate crate{cauchy, ExcessRate::none()};
        const BoundingIntensity bound = BoundingIntensity::constant(*cauchy.grad_bound);
        RngStream rng(11, 4);
        TerminalState end = simulate_thinned_terminal(crate, bound, 0.0, Direction::up(),
                                                      1.0e6, rng);
        // acceptance fraction approaches N_S / K = (1/pi) / 1
        const double fraction =
            static_cast<double>(end.accepted) / static_cast<double>(end.proposals);
        CHECK(fraction == doctest::Approx(1.0 / M_PI).epsilon(0.02));
        CHECK(end.proposals > 900000); // proposal intensity K = 1
    }

    SUBCASE("undersized bounds are rejected at construction") {
        const TargetModel cauchy = make_student_t(1.0);
        const SwitchingRate crate{cauchy, ExcessRate::none()};
        const BoundingIntensity half = BoundingIntensity::constant(0.5 * *cauchy.grad_bound);
        RngStream rng(12, 4);
        CHECK_THROWS_AS(simulate_thinned(crate, half, 0.0, Direction::up(),
                                         Horizon::until_switches(100), rng),
                        domain_error);
    }

    SUBCASE("runtime violations surface as bound_violation_error") {
        const TargetModel cauchy = make_student_t(1.0);
        const SwitchingRate crate{cauchy, ExcessRate::none()};
        // terminal runs skip the construction grid, so the runtime net fires
        const BoundingIntensity half = BoundingIntensity::constant(0.45);
        RngStream rng(13, 4);
        CHECK_THROWS_AS(
            simulate_thinned_terminal(crate, half, 1.0, Direction::up(), 1000.0, rng),
            bound_violation_error);
    }

    SUBCASE("missing hessian bound is a capability error") {
        const TargetModel cauchy = make_student_t(1.0); // has grad_bound only
        CHECK_THROWS_AS(BoundingIntensity::affine(cauchy), capability_error);
    }

    SUBCASE("thinned vs direct agree in distribution at T = 50") {
        const InverseIntensity inv = make_gaussian_inverse(1.0);
        const BoundingIntensity bound = BoundingIntensity::affine(gauss);
        std::vector<double> direct_samples, thinned_samples;
        for (std::size_t rep = 0; rep < 2000; ++rep) {
            RngStream r1(555, 2 * rep);
            const double x1 = r1.normal();
            EventChain chain = simulate_direct(rate, make_gaussian_inverse(1.0), x1,
                                               Direction::up(), Horizon::until_time(50.0),
                                               r1);
            const auto& last = chain.events.back();
            direct_samples.push_back(last.position +
                                     (50.0 - last.time) * last.direction.sign());
            RngStream r2(556, 2 * rep + 1);
            const double x2 = r2.normal();
            thinned_samples.push_back(
                simulate_thinned_terminal(rate, bound, x2, Direction::up(), 50.0, r2).x);
        }
        const double ks = ks_statistic_two_sample(direct_samples, thinned_samples);
        CHECK(ks < ks_two_sample_critical(2000, 2000, 0.01));
    }

    SUBCASE("quadratic excess with windowed bound stays valid") {
        const SwitchingRate qrate{gauss, ExcessRate::quadratic(0.8)};
        const BoundingIntensity bound =
            BoundingIntensity::affine(gauss, qrate.excess, 1.0);
        RngStream rng(77, 7);
        EventChain chain = simulate_thinned(qrate, bound, 1.4, Direction::down(),
                                            Horizon::until_time(2000.0), rng);
        CHECK(chain.accepted > 0);
        CHECK(chain.accepted <= chain.proposals);
        // flow consistency with rejected proposals folded in
        for (std::size_t k = 0; k + 1 < chain.events.size(); ++k) {
            const auto& a = chain.events[k];
            const auto& b = chain.events[k + 1];
            CHECK(b.position ==
                  doctest::Approx(a.position + (b.time - a.time) * a.direction.sign())
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("trajectory dump format") {
    const TargetModel gauss = make_gaussian(1.0);
    const SwitchingRate rate{gauss, ExcessRate::none()};
    const BoundingIntensity bound =
        BoundingIntensity::affine(gauss, ExcessRate::constant(0.5), 1.0);
    const SwitchingRate with_excess{gauss, ExcessRate::constant(0.5)};
    std::ostringstream out;
    TrajectoryWriter writer(out);
    RngStream rng(31, 0);
    simulate_thinned(with_excess, bound, 0.0, Direction::up(), Horizon::until_time(20.0),
                     rng, &writer);
    const std::string text = out.str();
    CHECK(text.rfind("t,x,theta,event_kind\n", 0) == 0);
    CHECK(text.find(",switch\n") != std::string::npos);
    CHECK(text.find(",proposal_rejected\n") != std::string::npos);
    CHECK(text.find(",horizon\n") != std::string::npos);
}
