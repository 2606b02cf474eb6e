#include "lambda_entangle/eraser.hpp"

#include <cmath>
#include <stdexcept>

#include "lambda_entangle/quadrature.hpp"

namespace lambda_entangle::eraser {

namespace {

complexd polar_phase(double theta) {
    return {std::cos(theta), std::sin(theta)};
}

void require_shutter(const SystemParams& p, const ShutterSpec& s, const char* fn) {
    if (!shutter_invariant_ok(p, s)) {
        throw std::invalid_argument(
            std::string(fn) +
            ": shutter window violates gamma*delta_t < 0.05 and delta_omega*delta_t < 0.05; "
            "use blurred_density_matrix for wide windows");
    }
}

}  // namespace

bool shutter_invariant_ok(const SystemParams& p, const ShutterSpec& s) {
    return s.delta_t > 0.0 && p.gamma() * s.delta_t < 0.05 &&
           p.delta_omega * s.delta_t < 0.05;
}

QubitDensityMatrix rho_erased(const SystemParams& p, const DetectorParams& d,
                              const ShutterSpec& s) {
    require_shutter(p, s, "rho_erased");
    const double tau = s.t_D - d.t_d;
    if (tau <= 0.0) return QubitDensityMatrix{};

    const double window_weight = d.efficiency * s.delta_t * std::exp(-p.gamma() * tau);
    const complexd coherence = static_cast<double>(coherence_sign(d.filter)) *
                               std::sqrt(p.gamma_plus * p.gamma_minus) * window_weight *
                               polar_phase(p.delta_omega * d.t_d);
    return QubitDensityMatrix(p.gamma_plus * window_weight, coherence,
                              p.gamma_minus * window_weight);
}

PureQubitState purified_state(const SystemParams& p, const DetectorParams& d,
                              const ShutterSpec& s) {
    require_shutter(p, s, "purified_state");
    const double g = p.gamma();
    PureQubitState state;
    state.amplitudes = {std::sqrt(p.gamma_plus / g) * polar_phase(p.omega_plus() * d.t_d),
                        static_cast<double>(coherence_sign(d.filter)) *
                            std::sqrt(p.gamma_minus / g) *
                            polar_phase(p.omega_minus() * d.t_d)};
    const double tau = s.t_D - d.t_d;
    state.weight = tau > 0.0 ? d.efficiency * g * s.delta_t * std::exp(-g * tau) : 0.0;
    return state;
}

PureQubitState evolve_free(const PureQubitState& state, const SystemParams& p, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("evolve_free: time must be non-negative");
    }
    PureQubitState out = state;
    out.amplitudes[0] *= polar_phase(p.omega_plus() * t);
    out.amplitudes[1] *= polar_phase(p.omega_minus() * t);
    return out;
}

std::array<complexd, 2> microwave_state(const SystemParams& p, double t, double phi) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return {inv_sqrt2 * polar_phase(p.omega_plus() * t),
            inv_sqrt2 * polar_phase(p.omega_minus() * t - phi)};
}

double eraser_normalization(const SystemParams& p, const DetectorParams& d,
                            const ShutterSpec& s) {
    const double tau = s.t_D - d.t_d;
    if (tau <= 0.0) return 0.0;
    return 0.5 * d.efficiency * p.gamma() * s.delta_t * std::exp(-p.gamma() * tau);
}

double joint_probability(const SystemParams& p, const DetectorParams& d,
                         const ShutterSpec& s, double phi, double evolve_ns) {
    require_shutter(p, s, "joint_probability");
    const double tau = s.t_D - d.t_d;
    if (tau <= 0.0) return 0.0;

    const PureQubitState evolved = evolve_free(purified_state(p, d, s), p, evolve_ns);
    const std::array<complexd, 2> m = microwave_state(p, s.t_D + evolve_ns, phi);
    const complexd overlap = std::conj(m[0]) * evolved.amplitudes[0] +
                             std::conj(m[1]) * evolved.amplitudes[1];
    return 0.5 * evolved.weight * std::norm(overlap);
}

QubitDensityMatrix blurred_density_matrix(const SystemParams& p, const DetectorParams& d,
                                          double t_D, double delta_t) {
    if (!(delta_t > 0.0)) {
        throw std::invalid_argument("blurred_density_matrix: delta_t must be positive");
    }
    const double lo = std::max(t_D - delta_t, d.t_d);
    const double hi = t_D;
    if (hi <= lo) return QubitDensityMatrix{};

    // Single-time detection integrals over the open window; the correlator is
    // 2Γ± e^{−Γ(t−t_d)} on the diagonal and 2√(Γ₊Γ₋) e^{−(Γ+iΔω)(t−t_d)} on the
    // coherence, both zero before the photon front.
    const double g = p.gamma();
    const quadrature::Options opts{1e-10, 1e-6, 20};
    const auto diag = [&](Channel ch) {
        const double width = channel_width(p, ch);
        return quadrature::integrate(
                   [&](double t) {
                       return complexd{2.0 * width * std::exp(-g * (t - d.t_d)), 0.0};
                   },
                   lo, hi, opts)
            .value.real();
    };
    const complexd cross =
        quadrature::integrate(
            [&](double t) {
                const double s = t - d.t_d;
                return 2.0 * std::sqrt(p.gamma_plus * p.gamma_minus) * std::exp(-g * s) *
                       polar_phase(-p.delta_omega * s);
            },
            lo, hi, opts)
            .value;

    const double half_eff = 0.5 * d.efficiency;
    const double pop_plus = half_eff * diag(Channel::Plus);
    const double pop_minus = half_eff * diag(Channel::Minus);
    complexd coherence = static_cast<double>(coherence_sign(d.filter)) * half_eff *
                         polar_phase(p.delta_omega * t_D) * cross;
    // The exact integrals satisfy |c|² ≤ d₊d₋ (equality at Δω = 0); quadrature
    // noise may cross the boundary, so project back onto the physical cone.
    const double cap = std::sqrt(pop_plus * pop_minus);
    if (std::abs(coherence) > cap) {
        coherence *= cap / std::abs(coherence);
    }
    return QubitDensityMatrix(pop_plus, coherence, pop_minus);
}

}  // namespace lambda_entangle::eraser
