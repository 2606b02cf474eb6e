#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lambda_entangle/eraser.hpp"
#include "lambda_entangle/quadrature.hpp"
#include "lambda_entangle/ww_dynamics.hpp"
#include "test_support.hpp"

using namespace lambda_entangle;
using namespace lambda_entangle::eraser;
using test_support::rel_diff;

namespace {

DetectorParams detector(Polarization filter = Polarization::H, double t_d = 7.0,
                        double efficiency = 1.0) {
    return DetectorParams{efficiency, t_d, filter};
}

}  // namespace

TEST_CASE("shutter invariant gate") {
    const SystemParams p = test_support::paper_params();  // Γ = 1/12, Δω ≈ 0.767
    CHECK(shutter_invariant_ok(p, {10.0, 0.03}));
    CHECK_FALSE(shutter_invariant_ok(p, {10.0, 0.1}));  // Δω·δt = 0.077 > 0.05
    CHECK_FALSE(shutter_invariant_ok(p, {10.0, 0.0}));
    CHECK_THROWS_WITH_AS(rho_erased(p, detector(), {10.0, 1.0}),
                         doctest::Contains("blurred_density_matrix"), std::invalid_argument);
}

TEST_CASE("rho_erased: causality, trace factor, and purity") {
    const SystemParams p = test_support::paper_params();
    const ShutterSpec s{12.0, 0.03};

    CHECK(rho_erased(p, detector(Polarization::H, 12.0), s).is_zero());
    CHECK(rho_erased(p, detector(Polarization::H, 20.0), s).is_zero());

    // (Γδt)e^{−Γτ} at Γ = 1/12, δt = 0.3 ns, τ = 5 ns — the experiment's bin.
    SystemParams loose = p;
    loose.delta_omega = 0.1;  // keep Δω·δt inside the eraser regime
    const ShutterSpec bin{12.0, 0.3};
    const QubitDensityMatrix rho = rho_erased(loose, detector(), bin);
    CHECK(rho.trace() == doctest::Approx(0.016481015755011094).epsilon(1e-13));

    SUBCASE("normalized matrix is the pure equal superposition with delay phase") {
        const QubitDensityMatrix unit = rho_erased(p, detector(), s).normalized();
        CHECK(unit.population_plus() == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(unit.coherence()) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::arg(unit.coherence()) ==
              doctest::Approx(std::remainder(p.delta_omega * 7.0, 2.0 * M_PI)).epsilon(1e-12));
        CHECK(unit.purity() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("the coherence phase depends on t_d, not on t_D") {
        const QubitDensityMatrix a = rho_erased(p, detector(), {11.0, 0.03});
        const QubitDensityMatrix b = rho_erased(p, detector(), {14.5, 0.03});
        CHECK(std::abs(std::arg(a.coherence()) - std::arg(b.coherence())) < 1e-12);
    }
}

TEST_CASE("purified state reproduces rho_erased as a rank-one outer product") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> tau_dist(0.1, 40.0);
    std::uniform_real_distribution<double> dt_dist(0.01, 0.06);
    for (int trial = 0; trial < 50; ++trial) {
        SystemParams p = test_support::paper_params();
        if (trial % 3 == 0) {
            p.gamma_plus = 0.06;  // unequal widths purify too
            p.gamma_minus = 0.03;
        }
        const Polarization pol = trial % 2 == 0 ? Polarization::H : Polarization::V;
        const DetectorParams d = detector(pol);
        const ShutterSpec s{d.t_d + tau_dist(rng), dt_dist(rng)};
        if (!shutter_invariant_ok(p, s)) continue;

        const PureQubitState state = purified_state(p, d, s);
        const QubitDensityMatrix rho = rho_erased(p, d, s);
        CHECK(std::abs(state.weight - rho.trace()) <= 1e-14);
        const complexd outer01 = state.amplitudes[0] * std::conj(state.amplitudes[1]);
        CHECK(std::abs(state.weight * outer01 - rho.coherence()) <= 1e-12);
        CHECK(std::abs(state.weight * std::norm(state.amplitudes[0]) -
                       rho.population_plus()) <= 1e-12);
        CHECK(rho.normalized().purity() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("purified state phases: zero delay, V flip, half-period delay") {
    SystemParams p = test_support::paper_params();
    const ShutterSpec s{8.0, 0.03};

    SUBCASE("t_d = 0 gives the equal-amplitude state") {
        const PureQubitState st = purified_state(p, detector(Polarization::H, 0.0), s);
        CHECK(st.amplitudes[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(st.amplitudes[1].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
        CHECK(std::abs(st.amplitudes[0].imag()) < 1e-15);
    }

    SUBCASE("V filter flips the |-1> amplitude") {
        const PureQubitState h = purified_state(p, detector(Polarization::H, 0.0), s);
        const PureQubitState v = purified_state(p, detector(Polarization::V, 0.0), s);
        CHECK(v.amplitudes[0] == h.amplitudes[0]);
        CHECK(v.amplitudes[1] == -h.amplitudes[1]);
    }

    SUBCASE("delta_omega * t_d = pi gives (1, -1)/sqrt(2) up to global phase") {
        const double t_d = M_PI / p.delta_omega;
        const PureQubitState st =
            purified_state(p, detector(Polarization::H, t_d), {t_d + 1.0, 0.03});
        const complexd rel = st.amplitudes[1] / st.amplitudes[0];
        CHECK(rel.real() == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::abs(rel.imag()) < 1e-12);
        // |+1> amplitude phase fixed to Ω₊ t_d exactly.
        CHECK(std::remainder(std::arg(st.amplitudes[0]) - p.omega_plus() * t_d,
                             2.0 * M_PI) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("free evolution: identity, group property, relative phase advance") {
    const SystemParams p = test_support::paper_params();
    const DetectorParams d = detector();
    const ShutterSpec s{10.0, 0.03};
    const PureQubitState st = purified_state(p, d, s);

    const PureQubitState same = evolve_free(st, p, 0.0);
    CHECK(same.amplitudes[0] == st.amplitudes[0]);
    CHECK(same.amplitudes[1] == st.amplitudes[1]);

    const PureQubitState two_hops = evolve_free(evolve_free(st, p, 3.1), p, 4.2);
    const PureQubitState one_hop = evolve_free(st, p, 7.3);
    CHECK(std::abs(two_hops.amplitudes[0] - one_hop.amplitudes[0]) < 1e-12);
    CHECK(std::abs(two_hops.amplitudes[1] - one_hop.amplitudes[1]) < 1e-12);
    CHECK(two_hops.weight == st.weight);

    const double t = 2.7;
    const PureQubitState evolved = evolve_free(st, p, t);
    const double before = std::arg(st.amplitudes[0] / st.amplitudes[1]);
    const double after = std::arg(evolved.amplitudes[0] / evolved.amplitudes[1]);
    CHECK(std::remainder(after - before - p.delta_omega * t, 2.0 * M_PI) ==
          doctest::Approx(0.0).epsilon(1e-12));

    CHECK_THROWS_AS(evolve_free(st, p, -1.0), std::invalid_argument);
}

TEST_CASE("joint probability: printed cosine, branch sum, evolution invariance") {
    const SystemParams p = test_support::paper_params();
    const DetectorParams h = detector(Polarization::H);
    const DetectorParams v = detector(Polarization::V);
    const double dt = 0.03;

    SUBCASE("maximum N at tau -> 0+, zero at tau = pi/dw") {
        const double tau_eps = 1e-9;
        const ShutterSpec s0{h.t_d + tau_eps, dt};
        const double norm0 = eraser_normalization(p, h, s0);
        CHECK(joint_probability(p, h, s0, 0.0) == doctest::Approx(norm0).epsilon(1e-9));

        const double tau_pi = M_PI / p.delta_omega;  // ≈ 4.098 ns
        CHECK(tau_pi == doctest::Approx(4.0983606557).epsilon(1e-9));
        const ShutterSpec s_pi{h.t_d + tau_pi, dt};
        CHECK(joint_probability(p, h, s_pi, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(joint_probability(p, v, s_pi, 0.0) ==
              doctest::Approx(eraser_normalization(p, v, s_pi)).epsilon(1e-12));
    }

    SUBCASE("H and V branches sum to N(tau) for random tau and phi") {
        std::mt19937 rng(777);
        std::uniform_real_distribution<double> tau_dist(0.05, 50.0);
        std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * M_PI);
        for (int i = 0; i < 100; ++i) {
            const double tau = tau_dist(rng);
            const double phi = phi_dist(rng);
            const ShutterSpec s{h.t_d + tau, dt};
            const double sum =
                joint_probability(p, h, s, phi) + joint_probability(p, v, s, phi);
            REQUIRE(std::abs(sum - eraser_normalization(p, h, s)) <= 1e-12);
        }
    }

    SUBCASE("full visibility over a period") {
        const double period = 2.0 * M_PI / p.delta_omega;
        CHECK(period == doctest::Approx(8.1967213114754098).epsilon(1e-12));
        for (double phi : {0.0, 1.1}) {
            // cos(Δωτ + φ) = ±1 at these strictly positive retarded times.
            const double tau_max = (2.0 * M_PI - phi) / p.delta_omega;
            const double tau_min = (M_PI - phi) / p.delta_omega;
            const double pmax = joint_probability(p, h, {h.t_d + tau_max, dt}, phi);
            const double pmin = joint_probability(p, h, {h.t_d + tau_min, dt}, phi);
            const double visibility = (pmax - pmin) / (pmax + pmin);
            REQUIRE(std::abs(visibility - 1.0) <= 1e-9);
        }
    }

    SUBCASE("independent of the free-evolution time") {
        const ShutterSpec s{h.t_d + 11.3, dt};
        const double phi = 0.73;
        const double base = joint_probability(p, h, s, phi, 0.0);
        for (double evolve : {3.0, 17.0}) {
            REQUIRE(std::abs(joint_probability(p, h, s, phi, evolve) - base) <= 1e-12);
        }
    }

    SUBCASE("cosine argument is dw*tau + phi") {
        for (double tau : {1.3, 5.9, 21.0}) {
            for (double phi : {0.0, 0.4, 2.2}) {
                const ShutterSpec s{h.t_d + tau, dt};
                const double expect = 0.5 * eraser_normalization(p, h, s) *
                                      (1.0 + std::cos(p.delta_omega * tau + phi));
                REQUIRE(std::abs(joint_probability(p, h, s, phi) - expect) <= 1e-13);
            }
        }
    }
}

TEST_CASE("blurred density matrix: closed-form limits of the shutter integral") {
    const DetectorParams d = detector(Polarization::H, 7.0, 0.8);

    SUBCASE("tiny window reduces to rho_erased (coherence magnitude within 1e-4)") {
        // Γδt = Δωδt = 0.005 makes Δω = Γ.
        SystemParams p = test_support::paper_params();
        p.delta_omega = p.gamma();
        const double dt = 0.005 / p.gamma();
        const double t_D = d.t_d + 20.0;
        const QubitDensityMatrix numeric =
            blurred_density_matrix(p, d, t_D, dt).normalized();
        const QubitDensityMatrix closed =
            rho_erased(p, d, {t_D, dt}).normalized();
        CHECK(rel_diff(std::abs(numeric.coherence()), std::abs(closed.coherence())) < 1e-4);
        CHECK(numeric.population_plus() == doctest::Approx(0.5).epsilon(1e-12));
        // The raw trace agrees to first order in Γδt.
        const double raw_trace = blurred_density_matrix(p, d, t_D, dt).trace();
        CHECK(rel_diff(raw_trace, rho_erased(p, d, {t_D, dt}).trace()) < 0.01);
    }

    SUBCASE("window spanning the whole emission reproduces rho_detected") {
        const SystemParams p = test_support::ratio92_params();
        const double tau = 10.0 / p.gamma();
        const double t_D = d.t_d + tau;
        const QubitDensityMatrix numeric = blurred_density_matrix(p, d, t_D, t_D);
        const QubitDensityMatrix closed = photodetect::rho_detected(p, d, t_D);
        CHECK(rel_diff(numeric.trace(), closed.trace()) < 1e-6);
        CHECK(std::abs(numeric.coherence() - closed.coherence()) <
              1e-6 * std::abs(closed.coherence()));
        const double floor = 2.0 * std::abs(numeric.normalized().coherence());
        CHECK(rel_diff(floor, 0.10805918076841919) < 0.01);
    }

    SUBCASE("degenerate levels: nothing to erase, coherence magnitude one") {
        SystemParams p = test_support::paper_params();
        p.delta_omega = 0.0;
        for (double dt : {0.3, 4.0, 18.0}) {
            const QubitDensityMatrix rho = blurred_density_matrix(p, d, 25.0, dt);
            const double magnitude =
                std::abs(rho.coherence()) /
                std::sqrt(rho.population_plus() * rho.population_minus());
            REQUIRE(magnitude == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    SUBCASE("window entirely before the front gives the zero matrix") {
        const SystemParams p = test_support::paper_params();
        CHECK(blurred_density_matrix(p, d, 6.0, 3.0).is_zero());
        CHECK_THROWS_AS(blurred_density_matrix(p, d, 10.0, 0.0), std::invalid_argument);
    }
}

TEST_CASE("blurrer interpolates between eraser and which-path floor within the envelope") {
    // The rectangular window is a box filter, so the coherence magnitude
    // ripples: it returns exactly to the floor Γ/|Γ+iΔω| at Δωδt = 2πn and
    // peaks at Γ(e^{Γδt}+1)/(|Γ+iΔω|(e^{Γδt}−1)) in between. The trend decays
    // from 1 to the floor, but strict point-by-point monotonicity fails at the
    // ripples; what holds is the two-sided analytic envelope.
    const DetectorParams d = detector();
    for (double ratio : {2.0, 9.2}) {
        SystemParams p = test_support::paper_params();
        p.delta_omega = ratio * p.gamma();
        const double g = p.gamma();
        const double t_D = d.t_d + 8.0 / g;
        const double floor_mag = 1.0 / std::sqrt(1.0 + ratio * ratio);

        double first = -1.0, last = -1.0;
        for (int i = 0; i < 20; ++i) {
            const double dt = 0.1 * std::pow(std::pow(8.0 / g / 0.1, 1.0 / 19.0),
                                             static_cast<double>(i));
            const QubitDensityMatrix rho = blurred_density_matrix(p, d, t_D, dt);
            const double magnitude =
                std::abs(rho.coherence()) /
                std::sqrt(rho.population_plus() * rho.population_minus());
            const double x = g * std::min(dt, t_D - d.t_d);
            const double ceiling =
                std::min(1.0, (std::exp(x) + 1.0) / (std::exp(x) - 1.0) * floor_mag);
            REQUIRE(magnitude <= ceiling + 1e-9);
            REQUIRE(magnitude >= floor_mag - 1e-9);
            if (first < 0.0) first = magnitude;
            last = magnitude;
        }
        // Trend: starts at the erased value ~1, ends at the which-path floor.
        CHECK(first > 0.95);
        CHECK(last < 1.35 * floor_mag);
    }
}

TEST_CASE("adaptive quadrature: smooth integrands and the non-convergence path") {
    using lambda_entangle::quadrature::ConvergenceError;
    using lambda_entangle::quadrature::Options;
    using lambda_entangle::quadrature::integrate;

    SUBCASE("damped oscillation against the closed form") {
        const complexd z{0.4, 2.3};
        const auto result = integrate(
            [&](double t) { return std::exp(-z * t); }, 0.0, 5.0, Options{1e-12, 1e-10, 20});
        const complexd exact = (1.0 - std::exp(-z * 5.0)) / z;
        CHECK(std::abs(result.value - exact) < 1e-10);
        CHECK(result.evaluations > 4);
    }

    SUBCASE("depth exhaustion carries the achieved estimate and error bound") {
        // Integrable endpoint singularity; four levels cannot meet 1e-12.
        try {
            integrate([](double x) { return complexd{1.0 / std::sqrt(x + 1e-12), 0.0}; },
                      0.0, 1.0, Options{1e-12, 1e-12, 4});
            FAIL("expected ConvergenceError");
        } catch (const ConvergenceError& e) {
            CHECK(std::isfinite(e.achieved().value.real()));
            CHECK(e.achieved().value.real() > 0.0);
            CHECK(e.achieved().error_bound > 0.0);
            CHECK(e.achieved().evaluations > 8);
        }
    }

    SUBCASE("degenerate and reversed intervals") {
        const auto zero = integrate([](double) { return complexd{1.0, 0.0}; }, 2.0, 2.0);
        CHECK(zero.value == complexd{0.0, 0.0});
        CHECK_THROWS_AS(
            integrate([](double) { return complexd{1.0, 0.0}; }, 2.0, 1.0),
            std::invalid_argument);
    }
}
