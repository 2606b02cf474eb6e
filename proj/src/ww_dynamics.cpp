#include "lambda_entangle/ww_dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace lambda_entangle::ww {

namespace {

void require_nonnegative_time(double t, const char* fn) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument(std::string(fn) + ": time must be non-negative");
    }
}

void require_equal_widths(const SystemParams& p, const char* fn) {
    if (!p.equal_widths()) {
        throw std::invalid_argument(std::string(fn) +
                                    ": closed form requires gamma_plus == gamma_minus "
                                    "(unequal-width frequency-only coherence is not derived)");
    }
}

// 1 − e^{−iΔt} e^{−Gt}, evaluated without cancellation near t = 0:
// Re = −expm1(−Gt) + e^{−Gt}·2sin²(Δt/2), Im = e^{−Gt}·sin(Δt).
complexd one_minus_rotating_decay(double delta, double g, double t) {
    const double damp = std::exp(-g * t);
    const double half = std::sin(0.5 * delta * t);
    return {-std::expm1(-g * t) + damp * 2.0 * half * half, damp * std::sin(delta * t)};
}

}  // namespace

complexd excited_amplitude(const SystemParams& p, double t) {
    require_nonnegative_time(t, "excited_amplitude");
    return {std::exp(-0.5 * p.gamma() * t), 0.0};
}

complexd photon_amplitude(const SystemParams& p, Channel ch, double k, double t) {
    require_nonnegative_time(t, "photon_amplitude");
    const double omega_ch = channel_frequency(p, ch);
    const double g = p.gamma();
    // 1 − e^{i(k−Ωch+iΓ/2)t} has the rotating-decay form with Δ = −(k − Ωch).
    const complexd numerator = one_minus_rotating_decay(-(k - omega_ch), 0.5 * g, t);
    const complexd denominator{k - omega_ch, 0.5 * g};
    return std::sqrt(channel_width(p, ch) / (2.0 * M_PI)) * numerator / denominator;
}

LineshapeOverlap lineshape_overlap(const SystemParams& p, Channel a, Channel b, double t) {
    require_nonnegative_time(t, "lineshape_overlap");
    const double omega_a = channel_frequency(p, a);
    const double omega_b = channel_frequency(p, b);
    const double delta = omega_a - omega_b;
    const double g = p.gamma();
    const complexd value =
        2.0 * M_PI * one_minus_rotating_decay(delta, g, t) / complexd{g, delta};
    return LineshapeOverlap{value, omega_a, omega_b, t};
}

std::array<complexd, 4> wavepacket_norms(const SystemParams& p, double t,
                                         EntanglementMode mode) {
    require_nonnegative_time(t, "wavepacket_norms");
    const double emitted = -std::expm1(-p.gamma() * t);
    const double diag_plus = 2.0 * p.gamma_plus / p.gamma() * emitted;
    const double diag_minus = 2.0 * p.gamma_minus / p.gamma() * emitted;
    complexd overlap{0.0, 0.0};
    if (mode == EntanglementMode::FrequencyOnly) {
        require_equal_widths(p, "wavepacket_norms");
        overlap = coherence_envelope(p, t);  // ⟨σ₂|σ₁⟩
    }
    return {complexd{diag_plus, 0.0}, std::conj(overlap), overlap, complexd{diag_minus, 0.0}};
}

double photon_number(const SystemParams& p, double t) {
    require_nonnegative_time(t, "photon_number");
    return -std::expm1(-p.gamma() * t);
}

complexd coherence_envelope(const SystemParams& p, double t) {
    require_nonnegative_time(t, "coherence_envelope");
    const double g = p.gamma();
    return one_minus_rotating_decay(p.delta_omega, g, t) /
           complexd{1.0, p.delta_omega / g};
}

complexd eta(const SystemParams& p, double t) {
    if (!(t > 0.0)) {
        throw std::invalid_argument("eta: requires t > 0 (t = 0 is a removable 0/0)");
    }
    return coherence_envelope(p, t) / -std::expm1(-p.gamma() * t);
}

QubitDensityMatrix rho_frequency_only(const SystemParams& p, double t) {
    require_nonnegative_time(t, "rho_frequency_only");
    require_equal_widths(p, "rho_frequency_only");
    const double half_emitted = 0.5 * -std::expm1(-p.gamma() * t);
    const complexd phase{std::cos(p.delta_omega * t), std::sin(p.delta_omega * t)};
    const complexd coherence = 0.5 * phase * coherence_envelope(p, t);
    return QubitDensityMatrix(half_emitted, coherence, half_emitted);
}

QubitDensityMatrix rho_frequency_polarization(const SystemParams& p, double t) {
    require_nonnegative_time(t, "rho_frequency_polarization");
    const double emitted = -std::expm1(-p.gamma() * t);
    return QubitDensityMatrix(p.gamma_plus / p.gamma() * emitted, complexd{0.0, 0.0},
                              p.gamma_minus / p.gamma() * emitted);
}

ThreeLevelState three_level_state(const SystemParams& p, double t, EntanglementMode mode) {
    require_nonnegative_time(t, "three_level_state");
    const QubitDensityMatrix qubit = mode == EntanglementMode::FrequencyOnly
                                         ? rho_frequency_only(p, t)
                                         : rho_frequency_polarization(p, t);
    return make_three_level_state(std::exp(-p.gamma() * t), qubit);
}

}  // namespace lambda_entangle::ww
