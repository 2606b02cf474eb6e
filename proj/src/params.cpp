#include "lambda_entangle/params.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace lambda_entangle {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        throw std::invalid_argument(std::string("validate_params: ") + field +
                                    " must be finite");
    }
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::map<std::string, std::string>& kv, const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        throw std::invalid_argument(std::string("params_from_key_values: missing key ") + key);
    }
    std::size_t pos = 0;
    double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) {
        throw std::invalid_argument(std::string("params_from_key_values: bad value for ") + key);
    }
    return v;
}

}  // namespace

bool SystemParams::equal_widths() const {
    return std::abs(gamma_plus - gamma_minus) <= 1e-12 * gamma();
}

SystemParams validate_params(const SystemParams& p) {
    require_finite(p.omega, "omega");
    require_finite(p.delta_omega, "delta_omega");
    require_finite(p.gamma_plus, "gamma_plus");
    require_finite(p.gamma_minus, "gamma_minus");
    if (p.omega <= 0.0) {
        throw std::invalid_argument("validate_params: omega must be positive");
    }
    if (p.delta_omega < 0.0) {
        throw std::invalid_argument("validate_params: delta_omega must be non-negative");
    }
    if (p.gamma_plus <= 0.0) {
        throw std::invalid_argument("validate_params: gamma_plus must be positive");
    }
    if (p.gamma_minus <= 0.0) {
        throw std::invalid_argument("validate_params: gamma_minus must be positive");
    }
    return p;
}

double channel_frequency(const SystemParams& p, Channel ch) {
    return ch == Channel::Plus ? p.omega_plus() : p.omega_minus();
}

double channel_width(const SystemParams& p, Channel ch) {
    return ch == Channel::Plus ? p.gamma_plus : p.gamma_minus;
}

int coherence_sign(Polarization pol) {
    return pol == Polarization::H ? +1 : -1;
}

int detector_sign(Polarization pol, Channel ch) {
    if (pol == Polarization::H) return +1;
    return ch == Channel::Plus ? -1 : +1;
}

const char* to_string(Polarization pol) {
    return pol == Polarization::H ? "H" : "V";
}

Polarization polarization_from_string(const std::string& s) {
    if (s == "H" || s == "h") return Polarization::H;
    if (s == "V" || s == "v") return Polarization::V;
    throw std::invalid_argument("polarization_from_string: expected H or V, got '" + s + "'");
}

std::map<std::string, std::string> params_to_key_values(const SystemParams& p) {
    return {
        {"omega", format_exact(p.omega)},
        {"delta_omega", format_exact(p.delta_omega)},
        {"gamma_plus", format_exact(p.gamma_plus)},
        {"gamma_minus", format_exact(p.gamma_minus)},
    };
}

SystemParams params_from_key_values(const std::map<std::string, std::string>& kv) {
    SystemParams p;
    p.omega = parse_double(kv, "omega");
    p.delta_omega = parse_double(kv, "delta_omega");
    p.gamma_plus = parse_double(kv, "gamma_plus");
    p.gamma_minus = parse_double(kv, "gamma_minus");
    return p;
}

}  // namespace lambda_entangle
