#include "hulthen/errors.hpp"
#include "hulthen/ode_oracle.hpp"
#include "hulthen/scattering.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace hulthen;

TEST_CASE("side_params examples")
{
    PotentialParams p{1.0, 0.5, 0.5, 0.5, 0.5, 2.0, Mode::Barrier};
    const SideParams left = side_params(p, 2.0, Side::Left);
    CHECK(left.k == doctest::Approx(2.0));
    CHECK(std::abs(left.mu - Complex{0.0, 4.0}) < 1e-14);
    CHECK(std::abs(left.nu - 1.0) == 0.0);
    CHECK(left.gamma.real() == 0.0);
    CHECK(left.gamma.imag() == doctest::Approx(std::sqrt(12.0) / 0.5));
    CHECK(left.gamma.imag() == doctest::Approx(6.92820323).epsilon(1e-8));

    p.v0 = 0.0;
    const SideParams right = side_params(p, 2.0, Side::Right);
    CHECK(std::abs(right.gamma - right.mu) < 1e-14);
    CHECK(std::abs(right.mu - Complex{0.0, 4.0}) < 1e-14);

    const PotentialParams p2{1.0, 0.4, 0.5, 0.6, 0.5, 2.0, Mode::Barrier};
    CHECK(side_params(p2, 1.0, Side::Left).mu.imag() == doctest::Approx(3.53553391).epsilon(1e-8));
}

TEST_CASE("side_params invariants")
{
    test::Draw draw(5);
    for (int i = 0; i < 50; ++i) {
        const PotentialParams p = draw.barrier();
        const double e = draw.uniform(0.05, 20.0);
        for (Side side : {Side::Left, Side::Right}) {
            const SideParams s = side_params(p, e, side);
            CHECK(s.mu.real() == 0.0);
            const double expected = -2.0 * p.m * (e + p.v0 / s.screening) / (s.range_param * s.range_param);
            CHECK((s.gamma * s.gamma).real() == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("side_params errors")
{
    PotentialParams p;
    CHECK_THROWS_AS(side_params(p, 0.0, Side::Left), InvalidEnergy);
    CHECK_THROWS_AS(side_params(p, -1.0, Side::Right), InvalidEnergy);
    p.mode = Mode::Well;
    CHECK_THROWS_AS(side_params(p, 1.0, Side::Left), InvalidParameter);
}

TEST_CASE("match coefficients")
{
    SUBCASE("prefactor product")
    {
        const PotentialParams p = test::reference_barrier();
        for (double e : {0.3, 2.0, 9.0}) {
            const auto l = side_params(p, e, Side::Left);
            const auto r = side_params(p, e, Side::Right);
            const MatchCoefficients mc = match_coefficients(p, l, r);
            const double expected = (1 - p.q) * (1 - p.q);
            CHECK(std::abs(mc.c1 * mc.c2 - expected) <= 1e-10 * expected);
        }
    }
    SUBCASE("zero strength collapses gamma onto mu")
    {
        PotentialParams p{1.0, 0.5, 0.5, 0.5, 0.5, 0.0, Mode::Barrier};
        const auto l = side_params(p, 2.0, Side::Left);
        const auto r = side_params(p, 2.0, Side::Right);
        const MatchCoefficients mc = match_coefficients(p, l, r);
        // F2 reduces to 2F1(1 - 2 mu, 1; 1 - 2 mu; q) = 1 / (1 - q).
        CHECK(std::abs(mc.f2 - 1.0 / (1.0 - p.q)) < 1e-12);
        for (Complex f : {mc.f1, mc.f2, mc.f3, mc.f4, mc.f5, mc.f6})
            CHECK(std::isfinite(std::abs(f)));
    }
    SUBCASE("values leave one at first order in the argument")
    {
        // V0 / q held fixed so the exponents stay put while q shrinks.
        PotentialParams p = test::reference_barrier();
        p.q = 1e-3;
        p.q_tilde = 1e-3;
        p.v0 = 2e-3;
        const auto l = side_params(p, 1.0, Side::Left);
        const auto r = side_params(p, 1.0, Side::Right);
        const MatchCoefficients mc = match_coefficients(p, l, r);
        const std::pair<Complex, Complex> leading[] = {{mc.f1, mc.d4}, {mc.f2, mc.d5}, {mc.f3, mc.d6}};
        for (const auto& [f, slope] : leading) {
            CHECK(std::abs(f - 1.0) > 0.0);
            CHECK(std::abs(f - 1.0 - slope * 1e-3) < 0.05 * std::abs(slope) * 1e-3);
        }
    }
}

TEST_CASE("amplitude ratios")
{
    SUBCASE("free particle")
    {
        const PotentialParams p{1.0, 0.5, 0.5, 0.5, 0.5, 0.0, Mode::Barrier};
        for (auto form : {MatchingForm::Rederived, MatchingForm::AsPrinted}) {
            const auto l = side_params(p, 2.0, Side::Left);
            const auto r = side_params(p, 2.0, Side::Right);
            const auto ratios = amplitude_ratios(match_coefficients(p, l, r), p, l, r, form);
            CHECK(std::abs(ratios.reflected) < 1e-12);
            CHECK(std::abs(ratios.transmitted) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("high energy reflection vanishes, in agreement with the oracle")
    {
        const PotentialParams p;
        const ScatteringSolution s = scatter(p, 500.0);
        CHECK(s.reflection < 1e-8);
        const OracleResult o = transmit(p, 500.0);
        CHECK(std::abs(s.reflection - o.reflection) < 1e-8);
    }
    SUBCASE("reference barrier is unitary")
    {
        const ScatteringSolution s = scatter(test::reference_barrier(), 2.0);
        CHECK(std::norm(s.amp_refl) + std::norm(s.amp_trans) == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("singular system")
    {
        const PotentialParams p;
        const auto l = side_params(p, 1.0, Side::Left);
        const auto r = side_params(p, 1.0, Side::Right);
        const MatchCoefficients zero{};
        CHECK_THROWS_AS(amplitude_ratios(zero, p, l, r), SingularMatching);
        CHECK_THROWS_AS(amplitude_ratios(zero, p, l, r, MatchingForm::AsPrinted), SingularMatching);
    }
}

TEST_CASE("scatter")
{
    SUBCASE("zero strength is transparent")
    {
        PotentialParams p = test::reference_barrier();
        p.v0 = 0.0;
        for (double e : {0.05, 0.5, 3.0, 40.0}) {
            const auto s = scatter(p, e);
            CHECK(std::abs(s.transmission - 1.0) < 1e-10);
            CHECK(s.reflection < 1e-10);
        }
    }
    SUBCASE("unitarity on the reference sweep")
    {
        const PotentialParams p = test::reference_barrier();
        for (double e : linspace(0.1, 10.0, 200))
            CHECK(scatter(p, e).unitarity_defect() < 1e-8);
    }
    SUBCASE("golden transmission at E = 2, confirmed by the oracle")
    {
        const auto s = scatter(test::reference_barrier(), 2.0);
        CHECK(s.transmission == doctest::Approx(0.001260156243).epsilon(1e-8));
        CHECK(std::abs(s.transmission - transmit(test::reference_barrier(), 2.0).transmission) < 1e-10);
    }
    SUBCASE("oracle at E = 1")
    {
        const PotentialParams p = test::reference_barrier();
        CHECK(std::abs(scatter(p, 1.0).transmission - transmit(p, 1.0).transmission) < 1e-4);
    }
}

TEST_CASE("printed and re-derived matching agree")
{
    test::Draw draw(11);
    for (int i = 0; i < 40; ++i) {
        const PotentialParams p = draw.barrier();
        const double e = draw.uniform(0.05, 30.0);
        const auto a = scatter(p, e, MatchingForm::Rederived);
        const auto b = scatter(p, e, MatchingForm::AsPrinted);
        CHECK(std::abs(a.amp_refl - b.amp_refl) < 1e-9);
        CHECK(std::abs(a.amp_trans - b.amp_trans) < 1e-9);
    }
}

TEST_CASE("scattering properties on random parameter sets")
{
    test::Draw draw(2025);
    for (int i = 0; i < 60; ++i) {
        const PotentialParams p = draw.barrier();
        const double e = draw.uniform(0.05, 50.0);
        const auto s = scatter(p, e);
        CHECK(s.unitarity_defect() <= 1e-8);
        CHECK(s.reflection >= -1e-8);
        CHECK(s.reflection <= 1.0 + 1e-8);
        CHECK(s.transmission >= -1e-8);
        CHECK(s.transmission <= 1.0 + 1e-8);
        CHECK(std::abs(s.transmission - scatter(p.mirrored(), e).transmission) <= 1e-10);
    }
}

TEST_CASE("wavefunction")
{
    const PotentialParams p = test::reference_barrier();
    for (double e : {0.7, 2.0, 6.0}) {
        const ScatteringWave wave(p, e);
        const auto& sol = wave.solution();
        const double k = std::sqrt(2.0 * p.m * e);
        const Complex I{0.0, 1.0};

        const double xl = -50.0 / p.a;
        const Complex far_left = std::exp(I * k / p.a * std::log(p.q)) * std::exp(I * k * xl) +
                                 sol.amp_refl * std::exp(-I * k / p.a * std::log(p.q)) * std::exp(-I * k * xl);
        CHECK(std::abs(wave.value(xl) - far_left) < 1e-6);

        const double xr = 50.0 / p.b;
        const Complex far_right =
            sol.amp_trans * std::exp(-I * k / p.b * std::log(p.q_tilde)) * std::exp(I * k * xr);
        CHECK(std::abs(wave.value(xr) - far_right) < 1e-6);

        CHECK(std::abs(wave.value_left_of_origin() - wave.value(0.0)) < 1e-10);
        CHECK(std::abs(wave.derivative_left_of_origin() - wave.derivative(0.0)) < 1e-8);
        CHECK(std::abs(eval_psi(p, e, 0.3) - wave.value(0.3)) < 1e-14);
    }
}

TEST_CASE("wavefunction solves the Schrodinger equation on each side")
{
    const PotentialParams p = test::reference_barrier();
    const double e = 1.5;
    const ScatteringWave wave(p, e);
    const double h = 1e-4;
    for (double x : {-6.0, -1.0, -0.2, 0.2, 1.0, 6.0}) {
        const Complex second = (wave.value(x + h) - 2.0 * wave.value(x) + wave.value(x - h)) / (h * h);
        const Complex rhs = 2.0 * p.m * (eval_potential(p, x) - e) * wave.value(x);
        CHECK(std::abs(second - rhs) < 1e-5 * std::max(1.0, std::abs(rhs)));
        const Complex slope = (wave.value(x + h) - wave.value(x - h)) / (2.0 * h);
        CHECK(std::abs(slope - wave.derivative(x)) < 1e-6);
    }
}
