// test_support.hpp — independent oracles and helpers shared by the test
// suites. The quadrature here is a plain composite Simpson rule, deliberately
// separate from the library's adaptive integrator so closed forms are checked
// against an unrelated numerical route.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "lambda_entangle/density_matrix.hpp"
#include "lambda_entangle/params.hpp"

namespace test_support {

using lambda_entangle::complexd;

// Composite Simpson with a fixed (even) panel count.
template <typename Fn>
complexd simpson(Fn&& f, double a, double b, int panels = 1 << 14) {
    const double h = (b - a) / panels;
    complexd acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    }
    return acc * (h / 3.0);
}

// Line integral of a Lorentzian-tailed integrand: Simpson over [c−W, c+W]
// plus Richardson extrapolation of the O(1/W) truncation tail from the
// doubled window, I∞ ≈ 2·I(2W) − I(W).
template <typename Fn>
complexd lorentzian_line_integral(Fn&& f, double center, double half_width,
                                  int panels = 1 << 15) {
    const complexd narrow = simpson(f, center - half_width, center + half_width, panels);
    const complexd wide =
        simpson(f, center - 2.0 * half_width, center + 2.0 * half_width, 2 * panels);
    return 2.0 * wide - narrow;
}

inline double rel_diff(double got, double expected) {
    return std::abs(got - expected) / std::max(std::abs(expected), 1e-300);
}

inline double rel_diff(complexd got, complexd expected) {
    return std::abs(got - expected) / std::max(std::abs(expected), 1e-300);
}

// Random Hermitian PSD 2×2 with trace ≤ 1: weight·(pure projector) + diagonal.
inline std::array<complexd, 4> random_psd(std::mt19937& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    const double theta = std::acos(1.0 - 2.0 * unit(rng)) / 2.0;
    const double phase = angle(rng);
    const complexd v0{std::cos(theta), 0.0};
    const complexd v1 = std::sin(theta) * complexd{std::cos(phase), std::sin(phase)};
    const double w_pure = unit(rng);
    const double w_mix = unit(rng) * (1.0 - w_pure);
    return {w_pure * v0 * std::conj(v0) + complexd{0.5 * w_mix, 0.0},
            w_pure * v0 * std::conj(v1),
            w_pure * v1 * std::conj(v0),
            w_pure * v1 * std::conj(v1) + complexd{0.5 * w_mix, 0.0}};
}

inline lambda_entangle::SystemParams paper_params() {
    lambda_entangle::SystemParams p;
    p.omega = 100.0;
    p.delta_omega = 2.0 * M_PI * 0.122;  // 2π×122 MHz in rad/ns
    p.gamma_plus = 1.0 / 24.0;
    p.gamma_minus = 1.0 / 24.0;
    return p;
}

// Δω/Γ pinned exactly to 9.2 with Γ = 1/12.
inline lambda_entangle::SystemParams ratio92_params() {
    lambda_entangle::SystemParams p;
    p.omega = 100.0;
    p.gamma_plus = 1.0 / 24.0;
    p.gamma_minus = 1.0 / 24.0;
    p.delta_omega = 9.2 / 12.0;
    return p;
}

}  // namespace test_support
