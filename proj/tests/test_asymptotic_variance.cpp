#include <doctest.h>

#include <cmath>

#include "zigzag/asymptotic_variance.hpp"
#include "zigzag/closed_form.hpp"
#include "zigzag/errors.hpp"
#include "zigzag/simulate.hpp"

using namespace zigzag;

namespace {
const double kSigmaX = 2.0 * std::sqrt(2.0 / M_PI); // asymptotic variance of g = x, nu = 1
}

TEST_CASE("psi closed forms for gaussian moments") {
    const TargetModel gauss = make_gaussian(1.0);
    SUBCASE("g = x gives a constant psi") {
        PsiFunction psi(gauss, Observable::monomial(1));
        for (double x : {-3.0, -1.0, 0.0, 0.5, 2.5}) {
            CHECK(psi(x) == doctest::Approx(1.0).epsilon(1e-9));
        }
        CHECK(psi.centering() == doctest::Approx(0.0).epsilon(1e-10));
    }
    SUBCASE("g = x^2 - 1 gives psi = x") {
        PsiFunction psi(gauss, Observable::monomial(2));
        CHECK(psi.centering() == doctest::Approx(1.0).epsilon(1e-10));
        for (double x : {-2.0, -0.7, 1.5}) {
            CHECK(psi(x) == doctest::Approx(x).epsilon(1e-8));
        }
        // odd function of x up to quadrature error
        CHECK(psi(1.3) == doctest::Approx(-psi(-1.3)).epsilon(1e-8));
    }
    SUBCASE("g = x^3 gives psi = x^2 + 2") {
        PsiFunction psi(gauss, Observable::monomial(3));
        for (double x : {-2.0, 0.0, 1.0, 3.0}) {
            CHECK(psi(x) == doctest::Approx(x * x + 2.0).epsilon(1e-8));
        }
    }
    SUBCASE("zero observable gives zero psi") {
        PsiFunction psi(gauss, Observable::generic([](double) { return 0.0; }));
        CHECK(psi(0.7) == doctest::Approx(0.0));
        CHECK(psi(-4.0) == doctest::Approx(0.0));
    }
    SUBCASE("pi psi vanishes in the far tails") {
        PsiFunction psi(gauss, Observable::monomial(3));
        for (double x : {-30.0, 30.0}) {
            CHECK(std::fabs(gauss.density(x) * psi(x)) < 1e-8);
        }
    }
}

TEST_CASE("sigma2_psi reproduces the gaussian moment table") {
    const TargetModel gauss = make_gaussian(1.0);
    const SwitchingRate rate{gauss, ExcessRate::none()};
    CHECK(sigma2_psi(gauss, rate, Observable::monomial(1)).value ==
          doctest::Approx(kSigmaX).epsilon(1e-6));
    CHECK(sigma2_psi(gauss, rate, Observable::monomial(2)).value ==
          doctest::Approx(2.0 * kSigmaX).epsilon(1e-6));

    // a constant excess rate strictly increases the asymptotic variance
    const SwitchingRate excess{gauss, ExcessRate::constant(1.0)};
    CHECK(sigma2_psi(gauss, excess, Observable::monomial(1)).value >
          sigma2_psi(gauss, rate, Observable::monomial(1)).value);
}

TEST_CASE("sigma2_renewal matches sigma2_psi and the closed forms") {
    const TargetModel gauss = make_gaussian(1.0);
    CHECK(sigma2_renewal(gauss, Observable::monomial(1)).value ==
          doctest::Approx(kSigmaX).epsilon(1e-6));
    CHECK(sigma2_renewal(gauss, Observable::tail(1.0)).value ==
          doctest::Approx(gaussian_tail_sigma2(1.0, 1.0)).epsilon(1e-6));

    const TargetModel student2 = make_student_t(2.0);
    CHECK(sigma2_renewal(student2, Observable::tail(0.0)).value ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-6));
}

TEST_CASE("sigma2_langevin table values and divergence") {
    const TargetModel gauss = make_gaussian(1.0);
    CHECK(sigma2_langevin(gauss, Observable::monomial(1)).value ==
          doctest::Approx(1.0).epsilon(1e-6));
    CHECK(sigma2_langevin(gauss, Observable::monomial(3)).value ==
          doctest::Approx(11.0).epsilon(1e-6));

    const TargetModel student2 = make_student_t(2.0);
    const FlaggedValue diverges = sigma2_langevin(student2, Observable::tail(1.0));
    CHECK(diverges.status == IntegralStatus::divergent);
}

TEST_CASE("closed-form oracle values") {
    CHECK(gaussian_moment(4, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(gaussian_moment(3, 2.0) == doctest::Approx(0.0));
    CHECK(student_moment(2, 4.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(student_tail_probability(0.0, 7.0) == doctest::Approx(0.5).epsilon(1e-13));

    CHECK(gaussian_moment_variance(1, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gaussian_moment_variance(2, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(gaussian_moment_variance(3, 1.0) == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(gaussian_moment_variance(4, 1.0) == doctest::Approx(96.0).epsilon(1e-12));

    // sigma^2 table: {2, 4, 40, 228} sqrt(2/pi) nu^{2k+1}
    const double root = std::sqrt(2.0 / M_PI);
    const double table[5] = {0.0, 2.0, 4.0, 40.0, 228.0};
    for (double nu : {1.0, 2.0}) {
        for (int k = 1; k <= 4; ++k) {
            CHECK(gaussian_moment_sigma2(k, nu) ==
                  doctest::Approx(table[k] * root * std::pow(nu, 2 * k + 1))
                      .epsilon(1e-12));
            // the psi-polynomial route is an independent derivation
            CHECK(gaussian_moment_sigma2_via_psi(k, nu) ==
                  doctest::Approx(gaussian_moment_sigma2(k, nu)).epsilon(1e-11));
        }
    }

    const double langevin_table[5] = {0.0, 1.0, 1.0, 11.0, 42.0};
    for (int k = 1; k <= 4; ++k) {
        CHECK(gaussian_moment_langevin(k, 1.0) ==
              doctest::Approx(langevin_table[k]).epsilon(1e-12));
    }

    // student odd-moment validity window
    CHECK_THROWS_AS(student_moment_sigma2_odd(2, 10.0), validity_error);
    CHECK_THROWS_AS(student_moment_sigma2_odd(1, 2.9), validity_error);
    CHECK_NOTHROW(student_moment_sigma2_odd(1, 4.0));
    CHECK_THROWS_AS(student_moment(3, 2.0), validity_error);

    // nu = 2 tail simplification agrees with the general expression
    for (double a : {0.0, 1.0, 5.0}) {
        CHECK(student_tail_sigma2(a, 2.0) ==
              doctest::Approx(student_tail_sigma2_nu2(a)).epsilon(1e-10));
    }
    CHECK(student_tail_sigma2_nu2(0.0) ==
          doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-14));

    // dispatcher
    OracleParams params;
    params.k = 4;
    params.nu = 1.0;
    CHECK(closed_form_oracle(OracleCase::gaussian_moment_m, params) ==
          doctest::Approx(3.0));
}

TEST_CASE("student odd moments agree between formula and quadrature") {
    for (double nu : {4.0, 6.0}) {
        const TargetModel target = make_student_t(nu);
        const double numeric = sigma2_renewal(target, Observable::monomial(1)).value;
        CHECK(numeric ==
              doctest::Approx(student_moment_sigma2_odd(1, nu)).epsilon(1e-6));
    }
}

TEST_CASE("scaling laws across nu") {
    const double base_psi = gaussian_moment_sigma2(2, 1.0);
    for (double nu : {1.0, 2.0, 4.0}) {
        const TargetModel gauss = make_gaussian(nu * nu);
        const SwitchingRate rate{gauss, ExcessRate::none()};
        const double s2 = sigma2_psi(gauss, rate, Observable::monomial(2)).value;
        CHECK(s2 / std::pow(nu, 5.0) == doctest::Approx(base_psi).epsilon(1e-6));

        // sigma^2 / sigma_langevin^2 scales as 1/nu
        const double lang = sigma2_langevin(gauss, Observable::monomial(2)).value;
        CHECK(nu * s2 / lang ==
              doctest::Approx(base_psi / gaussian_moment_langevin(2, 1.0))
                  .epsilon(1e-6));
    }
}

TEST_CASE("variance report flags and equivalence") {
    const TargetModel gauss = make_gaussian(4.0);
    const SwitchingRate rate{gauss, ExcessRate::none()};
    const VarianceReport report =
        compute_variance_report(gauss, rate, Observable::tail(1.0));
    CHECK(report.psi_finite);
    CHECK(report.renewal_finite);
    CHECK(report.langevin_finite);
    CHECK(report.var_pi_finite);
    CHECK(report.sigma2_psi >= 0.0);
    CHECK(report.var_pi == doctest::Approx(gaussian_tail_variance(1.0, 2.0)).epsilon(1e-8));
    const double tol = std::max(report.quad_error,
                                1e-6 * std::max(1.0, std::fabs(report.sigma2_psi)));
    CHECK(std::fabs(report.sigma2_renewal - report.sigma2_psi) <= tol);
}

TEST_CASE("centering handling") {
    const TargetModel gauss = make_gaussian(1.0);
    Observable wrong = Observable::monomial(2);
    wrong.centering = 0.5; // truth is 1
    CHECK_THROWS_AS(PsiFunction(gauss, wrong), domain_error);

    Observable right = Observable::monomial(2);
    right.centering = 1.0;
    CHECK_NOTHROW(PsiFunction(gauss, right));
}

TEST_CASE("renewal precondition rejects non-unimodal targets") {
    const TargetModel bimodal = make_custom(
        [](double x) { return (x * x - 1.0) * (x * x - 1.0); },
        [](double x) { return 4.0 * x * (x * x - 1.0); }, {}, "double-well");
    CHECK_THROWS_AS(sigma2_renewal(bimodal, Observable::monomial(1)), domain_error);
}

TEST_CASE("renewal handles unimodal targets centered away from zero") {
    // shifted gaussian: minimum at 1.5, same variance structure => same
    // asymptotic variance for the recentered coordinate observable
    const double shift = 1.5;
    const TargetModel shifted = make_custom(
        [shift](double x) { return 0.5 * (x - shift) * (x - shift); },
        [shift](double x) { return x - shift; }, {}, "shifted-gaussian");
    const FlaggedValue got = sigma2_renewal(
        shifted, Observable::generic([shift](double x) { return x - shift; }));
    CHECK(got.value == doctest::Approx(kSigmaX).epsilon(1e-6));
}

TEST_CASE("empirical renewal estimator") {
    const TargetModel gauss = make_gaussian(1.0);
    const SwitchingRate rate{gauss, ExcessRate::none()};

    SUBCASE("too few cycles raises") {
        RngStream rng(2000, 1);
        EventChain chain = simulate_direct(rate, make_gaussian_inverse(1.0), 0.0,
                                           Direction::up(), Horizon::until_switches(30),
                                           rng);
        CHECK_THROWS_AS(
            renewal_variance_empirical(chain, Observable::monomial(1), 0.0),
            insufficient_data_error);
    }

    SUBCASE("converges to the closed form for g = x") {
        RngStream rng(2001, 2);
        EventChain chain = simulate_direct(rate, make_gaussian_inverse(1.0), 0.0,
                                           Direction::up(),
                                           Horizon::until_switches(120000), rng);
        const RenewalStats stats =
            renewal_variance_empirical(chain, Observable::monomial(1), 0.0);
        CHECK(stats.cycles > 10000);
        CHECK(stats.sigma2 == doctest::Approx(kSigmaX).epsilon(0.08));
        // symmetry: E[Y+] = -E[Y-] for odd g under a symmetric target
        CHECK(std::fabs(stats.mean_y_plus + stats.mean_y_minus) <
              0.05 * std::fabs(stats.mean_y_plus));
    }
}

TEST_CASE("every finite sigma2 is nonnegative") {
    const TargetModel gauss = make_gaussian(1.0);
    const TargetModel student = make_student_t(4.0);
    const SwitchingRate grate{gauss, ExcessRate::none()};
    const SwitchingRate srate{student, ExcessRate::none()};
    for (const Observable& g : {Observable::monomial(1), Observable::monomial(2),
                                Observable::tail(0.5), Observable::tail(-1.0)}) {
        for (const SwitchingRate* rate : {&grate, &srate}) {
            const FlaggedValue v = sigma2_psi(rate->target, *rate, g);
            if (v.finite()) CHECK(v.value >= 0.0);
        }
    }
}
