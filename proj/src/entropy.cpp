#include "lambda_entangle/entropy.hpp"

#include <cmath>
#include <stdexcept>

#include "lambda_entangle/ww_dynamics.hpp"

namespace lambda_entangle::entropy {

namespace {

double plogp(double p) {
    return p > 0.0 ? -p * std::log(p) : 0.0;
}

void require_equal_widths(const SystemParams& p, const char* fn) {
    if (!p.equal_widths()) {
        throw std::invalid_argument(std::string(fn) +
                                    ": requires gamma_plus == gamma_minus");
    }
}

void require_nonnegative_time(double t, const char* fn) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument(std::string(fn) + ": time must be non-negative");
    }
}

}  // namespace

double vn_entropy(std::span<const double> probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= -1e-12)) {
            throw std::invalid_argument("vn_entropy: probability below -1e-12");
        }
        if (p > 1.0 + 1e-9) {
            throw std::invalid_argument("vn_entropy: probability above 1");
        }
        sum += plogp(std::min(std::max(p, 0.0), 1.0));
    }
    return sum;
}

double entropy_frequency_only(const SystemParams& p, double t) {
    require_nonnegative_time(t, "entropy_frequency_only");
    require_equal_widths(p, "entropy_frequency_only");
    const double g = p.gamma();
    const double emitted = -std::expm1(-g * t);
    const double env = std::abs(ww::coherence_envelope(p, t));
    const double lam1 = 0.5 * (emitted + env);
    const double lam2 = 0.5 * (emitted - env);
    return g * t * std::exp(-g * t) + plogp(lam1) + plogp(std::max(lam2, 0.0));
}

double entropy_frequency_only_asymptote(const SystemParams& p) {
    require_equal_widths(p, "entropy_frequency_only_asymptote");
    const double r = p.splitting_ratio();
    const double eta_inf = 1.0 / std::sqrt(1.0 + r * r);
    return plogp(0.5 * (1.0 + eta_inf)) + plogp(0.5 * (1.0 - eta_inf));
}

double entropy_frequency_polarization(const SystemParams& p, double t) {
    require_nonnegative_time(t, "entropy_frequency_polarization");
    const double g = p.gamma();
    const double emitted = -std::expm1(-g * t);
    return g * t * std::exp(-g * t) + plogp(p.gamma_plus / g * emitted) +
           plogp(p.gamma_minus / g * emitted);
}

double entropy_frequency_polarization_asymptote(const SystemParams& p) {
    const double g = p.gamma();
    return plogp(p.gamma_plus / g) + plogp(p.gamma_minus / g);
}

double entropy_gap(const SystemParams& p, double t) {
    return entropy_frequency_polarization(p, t) - entropy_frequency_only(p, t);
}

EntropyCurve make_entropy_curve(std::vector<double> times, std::vector<double> values,
                                CurveLabel label) {
    if (times.size() != values.size()) {
        throw std::invalid_argument("make_entropy_curve: times/values length mismatch");
    }
    const double ln3 = std::log(3.0);
    for (double v : values) {
        if (!(v >= -1e-12 && v <= ln3 + 1e-12)) {
            throw std::invalid_argument(
                "make_entropy_curve: entropy outside the three-level band [0, ln 3]");
        }
    }
    return EntropyCurve{std::move(times), std::move(values), label};
}

}  // namespace lambda_entangle::entropy
