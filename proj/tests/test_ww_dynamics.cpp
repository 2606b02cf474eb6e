#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lambda_entangle/ww_dynamics.hpp"
#include "test_support.hpp"

using namespace lambda_entangle;
using namespace lambda_entangle::ww;
using test_support::rel_diff;
using test_support::simpson;

namespace {

// Independent η evaluation: numerator and denominator separately in 80-bit
// long double, never through coherence_envelope.
complexd eta_long_double(const SystemParams& p, double t) {
    const long double g = static_cast<long double>(p.gamma_plus) + p.gamma_minus;
    const long double dw = p.delta_omega;
    const long double lt = t;
    const long double damp = std::exp(-g * lt);
    const std::complex<long double> numerator =
        1.0L - std::complex<long double>(std::cos(dw * lt), -std::sin(dw * lt)) * damp;
    const std::complex<long double> denominator =
        (1.0L - damp) * std::complex<long double>(1.0L, dw / g);
    const std::complex<long double> r = numerator / denominator;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

}  // namespace

TEST_CASE("excited amplitude: initial condition and e-folding") {
    const SystemParams p = test_support::paper_params();
    CHECK(excited_amplitude(p, 0.0) == complexd{1.0, 0.0});
    CHECK(std::norm(excited_amplitude(p, 12.0)) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(std::norm(excited_amplitude(p, 36.0)) ==
          doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(excited_amplitude(p, -1e-9), std::invalid_argument);
}

TEST_CASE("photon amplitude: initial condition and on-resonance limit") {
    const SystemParams p = test_support::paper_params();
    CHECK(photon_amplitude(p, Channel::Plus, p.omega_plus(), 0.0) == complexd{0.0, 0.0});
    CHECK(photon_amplitude(p, Channel::Minus, 97.0, 0.0) == complexd{0.0, 0.0});

    const double g = p.gamma();
    const double expect = std::sqrt(p.gamma_plus / (2.0 * M_PI)) * 2.0 / g;
    const double got = std::abs(photon_amplitude(p, Channel::Plus, p.omega_plus(), 80.0 / g));
    CHECK(got == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("photon amplitude integrates to the wavepacket norm (quadrature oracle)") {
    const SystemParams p = test_support::paper_params();
    const double g = p.gamma();
    const double t = 1.0 / g;  // Γt = 1
    for (Channel ch : {Channel::Plus, Channel::Minus}) {
        // ±200Γ truncates an O(1/W) Lorentzian tail worth ~3e-3; the doubled
        // window extrapolation removes it.
        const complexd integral = test_support::lorentzian_line_integral(
            [&](double k) {
                return complexd{std::norm(photon_amplitude(p, ch, k, t)), 0.0};
            },
            p.omega, 200.0 * g);
        // (Γch/Γ)(1 − e⁻¹) = 0.316060279…, frozen from independent arithmetic.
        CHECK(rel_diff(integral.real(), 0.31606027941427884) < 1e-3);
        // Must equal half the Gram diagonal.
        const auto gram = wavepacket_norms(p, t, EntanglementMode::FrequencyOnly);
        CHECK(rel_diff(2.0 * integral.real(), gram[0].real()) < 1e-3);
    }
}

TEST_CASE("lineshape overlap: closed form against the quadrature oracle") {
    const SystemParams p = test_support::paper_params();
    const double g = p.gamma();

    SUBCASE("diagonal at Gamma*t = 1") {
        const LineshapeOverlap overlap = lineshape_overlap(p, Channel::Plus, Channel::Plus, 12.0);
        CHECK(overlap.value.real() == doctest::Approx(47.660767291172916).epsilon(1e-12));
        CHECK(std::abs(overlap.value.imag()) < 1e-12);
        const complexd quad = test_support::lorentzian_line_integral(
            [&](double w) {
                const complexd denom{w - p.omega_plus(), 0.5 * g};
                const complexd gfun =
                    (1.0 - std::exp(complexd{0.0, 1.0} * (w - p.omega_plus()) * 12.0) *
                               std::exp(-0.5 * g * 12.0)) /
                    denom;
                return gfun * std::conj(gfun);
            },
            p.omega, 200.0 * g);
        CHECK(rel_diff(overlap.value, quad) < 1e-3);
    }

    SUBCASE("zero at t = 0") {
        CHECK(lineshape_overlap(p, Channel::Plus, Channel::Minus, 0.0).value ==
              complexd{0.0, 0.0});
    }

    SUBCASE("cross overlap at late times carries the which-path factor") {
        const SystemParams q = test_support::ratio92_params();
        const double gq = q.gamma();
        const double t = 60.0 / gq;
        const LineshapeOverlap overlap = lineshape_overlap(q, Channel::Plus, Channel::Minus, t);
        const double expect = 2.0 * M_PI / (gq * std::sqrt(1.0 + 9.2 * 9.2));
        CHECK(rel_diff(std::abs(overlap.value), expect) < 1e-12);
        const complexd quad = test_support::lorentzian_line_integral(
            [&](double w) {
                const auto gfun = [&](double center) {
                    const complexd denom{w - center, 0.5 * gq};
                    return (1.0 - std::exp(complexd{0.0, 1.0} * (w - center) * t) *
                                      std::exp(-0.5 * gq * t)) /
                           denom;
                };
                return gfun(q.omega_plus()) * std::conj(gfun(q.omega_minus()));
            },
            q.omega, 200.0 * gq);
        CHECK(rel_diff(overlap.value, quad) < 1e-3);
    }

    SUBCASE("late-time limit 2pi/(Gamma + i(Omega_a - Omega_b))") {
        const double t = 900.0 / g;
        const complexd limit = 2.0 * M_PI / complexd{g, p.delta_omega};
        CHECK(rel_diff(lineshape_overlap(p, Channel::Plus, Channel::Minus, t).value, limit) <
              1e-12);
    }
}

TEST_CASE("wavepacket norms in both entanglement modes") {
    const SystemParams p = test_support::ratio92_params();
    const double g = p.gamma();

    SUBCASE("frequency-only: normalized but not orthogonal at late times") {
        const auto gram = wavepacket_norms(p, 200.0 / g, EntanglementMode::FrequencyOnly);
        CHECK(gram[0].real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(gram[3].real() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(gram[2]) ==
              doctest::Approx(1.0 / std::sqrt(1.0 + 9.2 * 9.2)).epsilon(1e-12));
        CHECK(gram[1] == std::conj(gram[2]));
        // Gram matrices are Hermitian PSD at any time.
        for (double t : {0.1, 1.0, 30.0, 500.0}) {
            const auto m = wavepacket_norms(p, t, EntanglementMode::FrequencyOnly);
            const auto eig = hermitian_eigen(m);
            REQUIRE(eig.values[1] >= -1e-12);
        }
    }

    SUBCASE("degenerate levels make the packets identical") {
        SystemParams q = p;
        q.delta_omega = 0.0;
        const double t = 5.0;
        const auto gram = wavepacket_norms(q, t, EntanglementMode::FrequencyOnly);
        const double emitted = -std::expm1(-q.gamma() * t);
        CHECK(gram[2].real() == doctest::Approx(emitted).epsilon(1e-14));
        CHECK(gram[2].imag() == doctest::Approx(0.0));
        CHECK(gram[0].real() == doctest::Approx(emitted).epsilon(1e-14));
    }

    SUBCASE("polarization entanglement: exactly orthogonal packets") {
        for (double t : {0.3, 2.0, 50.0}) {
            const auto gram = wavepacket_norms(p, t, EntanglementMode::FrequencyPolarization);
            CHECK(gram[1] == complexd{0.0, 0.0});
            CHECK(gram[2] == complexd{0.0, 0.0});
        }
    }

    SUBCASE("unequal widths: general diagonal, frequency-only rejected") {
        const SystemParams q = validate_params({100.0, 0.5, 0.06, 0.03});
        const auto gram = wavepacket_norms(q, 10.0, EntanglementMode::FrequencyPolarization);
        const double emitted = -std::expm1(-q.gamma() * 10.0);
        CHECK(gram[0].real() == doctest::Approx(2.0 * q.gamma_plus / q.gamma() * emitted));
        CHECK(gram[3].real() == doctest::Approx(2.0 * q.gamma_minus / q.gamma() * emitted));
        CHECK_THROWS_AS(wavepacket_norms(q, 10.0, EntanglementMode::FrequencyOnly),
                        std::invalid_argument);
    }
}

TEST_CASE("photon number: emission saturates at one photon") {
    const SystemParams p = test_support::paper_params();
    CHECK(photon_number(p, 0.0) == 0.0);
    CHECK(photon_number(p, 12.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
    CHECK(photon_number(p, 1e5) == doctest::Approx(1.0));
}

TEST_CASE("eta: degeneracy erases which-path information exactly") {
    SystemParams p = test_support::paper_params();
    p.delta_omega = 0.0;
    for (double t : {1e-6, 0.5, 12.0, 300.0}) {
        CHECK(eta(p, t) == complexd{1.0, 0.0});
    }
}

TEST_CASE("eta: which-path floor and a frozen mid-time value") {
    const SystemParams p = test_support::ratio92_params();
    CHECK(std::abs(eta(p, 2000.0)) == doctest::Approx(0.10805918076841919).epsilon(1e-10));

    // Independent high-precision evaluation of η at Γt = 1/2, frozen.
    const complexd mid = eta(p, 6.0);
    CHECK(mid.real() == doctest::Approx(-0.13285726808716502).epsilon(1e-12));
    CHECK(mid.imag() == doctest::Approx(-0.30948193556911943).epsilon(1e-12));
    CHECK(std::abs(mid) == doctest::Approx(0.33679388671291738).epsilon(1e-12));

    CHECK_THROWS_AS(eta(p, 0.0), std::invalid_argument);
}

TEST_CASE("eta matches the split long-double evaluation across a grid") {
    for (double ratio : {0.1, 1.0, 9.2, 40.0}) {
        SystemParams p = test_support::paper_params();
        p.delta_omega = ratio * p.gamma();
        for (double gt = 0.05; gt <= 12.0; gt *= 1.7) {
            const double t = gt / p.gamma();
            CHECK(rel_diff(eta(p, t), eta_long_double(p, t)) < 1e-12);
        }
    }
}

TEST_CASE("eta magnitude stays bounded and converges as splitting vanishes") {
    double prev_worst = 1.0;
    for (double dw : {1e-2, 1e-4, 1e-6}) {
        SystemParams p = test_support::paper_params();
        p.delta_omega = dw;
        double worst = 0.0;
        for (double gt = 0.1; gt <= 10.0; gt += 0.1) {
            worst = std::max(worst, std::abs(eta(p, gt / p.gamma()) - 1.0));
        }
        CHECK(worst < prev_worst);
        prev_worst = worst;
    }
    CHECK(prev_worst < 1e-4);
}

TEST_CASE("rho_fo: zero start, pure degenerate limit, which-path suppression") {
    SUBCASE("zero matrix at t = 0") {
        CHECK(rho_frequency_only(test_support::paper_params(), 0.0).is_zero());
    }

    SUBCASE("degenerate asymptote is the projector onto (|+1>+|-1>)/sqrt(2)") {
        SystemParams p = test_support::paper_params();
        p.delta_omega = 0.0;
        const QubitDensityMatrix rho = rho_frequency_only(p, 2000.0);
        CHECK(rho.population_plus() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho.coherence().real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho.coherence().imag() == doctest::Approx(0.0));
        CHECK(rho.normalized().purity() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("splitting ratio 9.2 leaves five percent coherence") {
        const QubitDensityMatrix rho = rho_frequency_only(test_support::ratio92_params(), 2000.0);
        CHECK(rho.population_plus() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(rho.coherence()) ==
              doctest::Approx(0.5 * 0.10805918076841919).epsilon(1e-10));
    }

    SUBCASE("unequal widths are not derived and must be rejected") {
        const SystemParams q = validate_params({100.0, 0.5, 0.06, 0.03});
        CHECK_THROWS_WITH_AS(rho_frequency_only(q, 1.0), doctest::Contains("not derived"),
                             std::invalid_argument);
    }
}

TEST_CASE("rho_fp: branching-ratio diagonal with no coherence") {
    SUBCASE("equal widths late time") {
        const QubitDensityMatrix rho =
            rho_frequency_polarization(test_support::paper_params(), 2000.0);
        CHECK(rho.population_plus() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho.population_minus() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(rho.coherence() == complexd{0.0, 0.0});
    }
    SUBCASE("zero at t = 0") {
        CHECK(rho_frequency_polarization(test_support::paper_params(), 0.0).is_zero());
    }
    SUBCASE("2:1 branching") {
        const SystemParams q = validate_params({100.0, 0.5, 0.08, 0.04});
        const QubitDensityMatrix rho = rho_frequency_polarization(q, 1e4);
        CHECK(rho.population_plus() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(rho.population_minus() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("trace identity and PSD across the sweep grid") {
    for (double ratio : {0.0, 0.5, 1.0, 9.2, 100.0}) {
        SystemParams p = test_support::paper_params();
        p.delta_omega = ratio * p.gamma();
        for (double gt = 0.0; gt <= 10.0; gt += 0.05) {
            const double t = gt / p.gamma();
            const double n = photon_number(p, t);
            const QubitDensityMatrix fo = rho_frequency_only(p, t);
            const QubitDensityMatrix fp = rho_frequency_polarization(p, t);
            REQUIRE(std::abs(fo.trace() - n) <= 1e-12);
            REQUIRE(std::abs(fp.trace() - n) <= 1e-12);
            // Construction already enforces PSD within 1e-12; recheck smallest
            // eigenvalue explicitly.
            const EigenDecomposition e = hermitian_eigen(fo);
            REQUIRE(e.values[1] >= -1e-12);
        }
    }
}

TEST_CASE("Gram-matrix consistency with the frequency-only coherence") {
    const SystemParams p = test_support::ratio92_params();
    for (double t : {0.4, 3.0, 17.0, 90.0}) {
        const auto gram = wavepacket_norms(p, t, EntanglementMode::FrequencyOnly);
        const complexd phase{std::cos(p.delta_omega * t), std::sin(p.delta_omega * t)};
        const complexd expect = 0.5 * gram[2] * phase;
        CHECK(std::abs(rho_frequency_only(p, t).coherence() - expect) <= 1e-12);
    }
}

TEST_CASE("three-level state keeps total trace one in both modes") {
    const SystemParams p = test_support::paper_params();
    for (double t : {0.0, 12.0, 500.0}) {
        for (auto mode :
             {EntanglementMode::FrequencyOnly, EntanglementMode::FrequencyPolarization}) {
            const ThreeLevelState state = three_level_state(p, t, mode);
            CHECK(std::abs(state.excited_population + state.qubit_block.trace() - 1.0) <=
                  1e-12);
        }
    }
    CHECK(three_level_state(p, 0.0, EntanglementMode::FrequencyOnly).excited_population ==
          1.0);
    CHECK(three_level_state(p, 12.0, EntanglementMode::FrequencyOnly).excited_population ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
}

TEST_CASE("formulas stay finite under extreme exponent underflow") {
    const SystemParams p = test_support::ratio92_params();
    const double t = 800.0 / p.gamma();  // e^{-800} underflows to zero
    CHECK(photon_number(p, t) == 1.0);
    CHECK(std::abs(eta(p, t)) == doctest::Approx(0.10805918076841919).epsilon(1e-12));
    CHECK(std::isfinite(rho_frequency_only(p, t).coherence().real()));
}
