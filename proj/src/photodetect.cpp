#include "lambda_entangle/photodetect.hpp"

#include <cmath>
#include <stdexcept>

#include "lambda_entangle/entropy.hpp"
#include "lambda_entangle/ww_dynamics.hpp"

namespace lambda_entangle::photodetect {

namespace {

// 1 − e^{−iΔt}e^{−Gt} without cancellation near t = 0.
complexd one_minus_rotating_decay(double delta, double g, double t) {
    const double damp = std::exp(-g * t);
    const double half = std::sin(0.5 * delta * t);
    return {-std::expm1(-g * t) + damp * 2.0 * half * half, damp * std::sin(delta * t)};
}

}  // namespace

DetectorParams validate_detector(const DetectorParams& d) {
    if (!(d.efficiency > 0.0 && d.efficiency <= 1.0)) {
        throw std::invalid_argument("validate_detector: efficiency must be in (0, 1]");
    }
    if (!(d.t_d >= 0.0)) {
        throw std::invalid_argument("validate_detector: t_d must be non-negative");
    }
    return d;
}

complexd detector_amplitude(const SystemParams& p, const DetectorParams& d, Channel ch,
                            double nu, double t) {
    if (t <= d.t_d) return {0.0, 0.0};
    const double s = t - d.t_d;
    const double omega_ch = channel_frequency(p, ch);
    const double g = p.gamma();
    const complexd numerator = one_minus_rotating_decay(-(nu - omega_ch), 0.5 * g, s);
    const complexd denominator{nu - omega_ch, 0.5 * g};
    const complexd delay_phase{std::cos(nu * d.t_d), std::sin(nu * d.t_d)};
    return static_cast<double>(detector_sign(d.filter, ch)) *
           std::sqrt(channel_width(p, ch) / (2.0 * M_PI)) * delay_phase * numerator /
           denominator;
}

complexd cross_spectral_integral(const SystemParams& p, Channel a, Channel b, double tau) {
    if (!(tau >= 0.0)) {
        throw std::invalid_argument("cross_spectral_integral: tau must be non-negative");
    }
    const double delta_ab = channel_frequency(p, a) - channel_frequency(p, b);
    const double g = p.gamma();
    return std::sqrt(channel_width(p, a) * channel_width(p, b)) / g *
           one_minus_rotating_decay(delta_ab, g, tau) / complexd{1.0, delta_ab / g};
}

QubitDensityMatrix rho_detected(const SystemParams& p, const DetectorParams& d, double t_D) {
    const double tau = t_D - d.t_d;
    if (tau <= 0.0) return QubitDensityMatrix{};

    const int sign = coherence_sign(d.filter);
    const complexd detection_phase{std::cos(p.delta_omega * t_D),
                                   std::sin(p.delta_omega * t_D)};
    if (p.equal_widths()) {
        const double half_emitted = 0.5 * -std::expm1(-p.gamma() * tau);
        const complexd coherence = 0.5 * static_cast<double>(sign) * detection_phase *
                                   ww::coherence_envelope(p, tau);
        return QubitDensityMatrix(d.efficiency * half_emitted, d.efficiency * coherence,
                                  d.efficiency * half_emitted);
    }
    const complexd pop_plus = cross_spectral_integral(p, Channel::Plus, Channel::Plus, tau);
    const complexd pop_minus = cross_spectral_integral(p, Channel::Minus, Channel::Minus, tau);
    const complexd coherence = static_cast<double>(sign) * detection_phase *
                               cross_spectral_integral(p, Channel::Plus, Channel::Minus, tau);
    return QubitDensityMatrix(d.efficiency * pop_plus.real(), d.efficiency * coherence,
                              d.efficiency * pop_minus.real());
}

double conditional_probability(const SystemParams& p, const DetectorParams& d, double t_D,
                               double phi) {
    if (t_D <= d.t_d) return 0.0;
    const QubitDensityMatrix rho = rho_detected(p, d, t_D);
    const complexd phase{std::cos(phi), std::sin(phi)};
    return 0.5 * rho.trace() + (phase * rho.coherence()).real();
}

double post_detection_entropy(const SystemParams& p, double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("post_detection_entropy: requires tau > 0");
    }
    if (!p.equal_widths()) {
        throw std::invalid_argument(
            "post_detection_entropy: requires gamma_plus == gamma_minus");
    }
    const double mag = std::abs(ww::eta(p, tau));
    const double eps[2] = {0.5 * (1.0 + mag), 0.5 * (1.0 - mag)};
    return entropy::vn_entropy(eps);
}

}  // namespace lambda_entangle::photodetect
