#include <doctest.h>

#include <cmath>

#include "zigzag/errors.hpp"
#include "zigzag/target_model.hpp"

using namespace zigzag;

TEST_CASE("canonical switching rate values") {
    const SwitchingRate gauss{make_gaussian(1.0), ExcessRate::none()};
    CHECK(switching_rate(gauss, -2.0, Direction::up()) == doctest::Approx(0.0));
    CHECK(switching_rate(gauss, 2.0, Direction::up()) == doctest::Approx(2.0));

    const SwitchingRate student{make_student_t(2.0), ExcessRate::none()};
    CHECK(switching_rate(student, 1.0, Direction::up()) == doctest::Approx(1.0));
}

TEST_CASE("gaussian factory") {
    const TargetModel m = make_gaussian(1.0);
    CHECK(m.potential(1.0) == doctest::Approx(0.5));
    CHECK(m.grad(1.0) == doctest::Approx(1.0));
    CHECK(m.normalization == doctest::Approx(2.5066282746310002).epsilon(1e-14));
    CHECK(*m.hessian_bound == doctest::Approx(1.0));

    const TargetModel wide = make_gaussian(4.0);
    CHECK(wide.grad(2.0) == doctest::Approx(0.5));

    CHECK_THROWS_AS(make_gaussian(0.0), domain_error);
    CHECK_THROWS_AS(make_gaussian(-1.0), domain_error);
}

TEST_CASE("student factory") {
    const TargetModel m = make_student_t(2.0);
    CHECK(m.grad(1.0) == doctest::Approx(1.0));
    // normalization = sqrt(2 pi) Gamma(1)/Gamma(3/2) = 2 sqrt(2)
    CHECK(m.normalization == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    const TargetModel cauchy = make_student_t(1.0);
    CHECK(*cauchy.grad_bound == doctest::Approx(1.0)); // attained at x = 1
    CHECK(cauchy.grad(1.0) == doctest::Approx(1.0));
    CHECK(cauchy.grad(1e8) == doctest::Approx(0.0).epsilon(1e-7));

    CHECK_THROWS_AS(make_student_t(0.0), domain_error);
}

TEST_CASE("custom targets") {
    const TargetModel laplace = make_custom(
        [](double x) { return std::fabs(x); },
        [](double x) { return x >= 0.0 ? 1.0 : -1.0; }, {}, "laplace");
    CHECK(laplace.normalization == doctest::Approx(2.0).epsilon(1e-9));

    const TargetModel handmade = make_custom(
        [](double x) { return 0.5 * x * x; }, [](double x) { return x; });
    const TargetModel reference = make_gaussian(1.0);
    for (double x : {-2.5, -0.5, 0.0, 1.0, 3.0}) {
        CHECK(handmade.potential(x) == doctest::Approx(reference.potential(x)));
        CHECK(handmade.grad(x) == doctest::Approx(reference.grad(x)));
    }
    CHECK(handmade.normalization ==
          doctest::Approx(reference.normalization).epsilon(1e-8));

    CHECK_THROWS_AS(make_custom([](double x) { return -x * x; },
                                [](double x) { return -2.0 * x; }),
                    quadrature_error);
}

TEST_CASE("rate difference identity and unimodal structure") {
    for (const auto& rate :
         {SwitchingRate{make_gaussian(1.0), ExcessRate::none()},
          SwitchingRate{make_gaussian(4.0), ExcessRate::constant(0.7)},
          SwitchingRate{make_student_t(2.0), ExcessRate::quadratic(0.3)},
          SwitchingRate{make_student_t(6.0), ExcessRate::none()}}) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const double x = -20.0 + 40.0 * i / 999.0;
            const double diff = switching_rate(rate, x, Direction::up()) -
                                switching_rate(rate, x, Direction::down());
            worst = std::max(worst, std::fabs(diff - rate.target.grad(x)));
        }
        CHECK(worst <= 1e-12);
    }

    const SwitchingRate canonical{make_gaussian(1.0), ExcessRate::none()};
    for (double x : {-5.0, -1.0, -1e-8, 0.0}) {
        CHECK(switching_rate(canonical, x, Direction::up()) == 0.0);
    }
    for (double x : {1e-8, 0.5, 7.0}) {
        CHECK(switching_rate(canonical, x, Direction::up()) > 0.0);
        CHECK(switching_rate(canonical, -x, Direction::up()) == 0.0);
    }
}

TEST_CASE("grad matches finite differences of the potential") {
    for (const TargetModel& m : {make_gaussian(1.0), make_gaussian(4.0),
                                 make_student_t(1.0), make_student_t(6.0)}) {
        for (int i = 0; i <= 40; ++i) {
            const double x = -10.0 + 0.5 * i;
            const double h = 1e-6 * std::max(1.0, std::fabs(x));
            const double fd = (m.potential(x + h) - m.potential(x - h)) / (2.0 * h);
            CHECK(fd == doctest::Approx(m.grad(x)).epsilon(1e-6));
        }
    }
}

TEST_CASE("metadata bounds hold on a grid") {
    const TargetModel gauss = make_gaussian(2.0);
    const TargetModel student = make_student_t(3.0);
    for (int i = 0; i <= 200; ++i) {
        const double x = -20.0 + 0.2 * i;
        const double h = 1e-5;
        const double second =
            (gauss.potential(x + h) - 2.0 * gauss.potential(x) + gauss.potential(x - h)) /
            (h * h);
        CHECK(second <= *gauss.hessian_bound + 1e-4);
        CHECK(std::fabs(student.grad(x)) <= *student.grad_bound + 1e-12);
    }
}

TEST_CASE("direction is a two-state involution") {
    Direction d = Direction::up();
    CHECK(d.as_int() == 1);
    CHECK(d.flipped().as_int() == -1);
    CHECK(d.flipped().flipped() == d);
    CHECK_THROWS_AS(Direction::from_int(0), domain_error);
    CHECK(Direction::from_int(-1) == Direction::down());
}

TEST_CASE("excess rate families") {
    const ExcessRate quad = ExcessRate::quadratic(0.5);
    CHECK(quad.value(2.0) == doctest::Approx(2.5));
    CHECK(quad.derivative(2.0) == doctest::Approx(2.0));
    CHECK(quad.sup_on_segment(-1.0, 3.0) == doctest::Approx(5.0));
    CHECK(quad.sup_on_segment(-4.0, 1.0) == doctest::Approx(8.5));

    const ExcessRate constant = ExcessRate::constant(1.5);
    CHECK(constant.value(100.0) == doctest::Approx(1.5));
    CHECK(constant.sup_on_segment(-5.0, 5.0) == doctest::Approx(1.5));
    CHECK_THROWS_AS(ExcessRate::constant(-1.0), domain_error);
}
