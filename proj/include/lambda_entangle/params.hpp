// params.hpp — Λ-emitter parameters, decay-channel conventions, filter signs.
#pragma once

#include <map>
#include <string>

namespace lambda_entangle {

// Unit convention: times in ns, angular frequencies in rad/ns, widths in 1/ns.
// The experimentally quoted numbers (Γ = 1/12 ns⁻¹, Δω = 2π×122 MHz,
// t_d ≃ 7 ns) are then literal inputs.
struct SystemParams {
    double omega = 0.0;        // mean optical transition frequency Ω
    double delta_omega = 0.0;  // Zeeman splitting Δω; Ω± = Ω ± Δω/2
    double gamma_plus = 0.0;   // partial width Γ₊, channel |A⟩→|+1⟩ (σ₋ photon)
    double gamma_minus = 0.0;  // partial width Γ₋, channel |A⟩→|−1⟩ (σ₊ photon)

    double gamma() const { return gamma_plus + gamma_minus; }
    double omega_plus() const { return omega + 0.5 * delta_omega; }
    double omega_minus() const { return omega - 0.5 * delta_omega; }
    double splitting_ratio() const { return delta_omega / gamma(); }  // Δω/Γ

    bool equal_widths() const;

    // Γ ≪ Ω and Δω ≪ Ω. Only the discretized-mode oracle needs this; the
    // closed forms accept any positive widths.
    bool narrow_width_regime() const {
        return gamma() < 0.05 * omega && delta_omega < 0.05 * omega;
    }
};

// Returns p unchanged when all invariants hold, otherwise throws
// std::invalid_argument naming the offending field. NaN/Inf anywhere rejects.
SystemParams validate_params(const SystemParams& p);

// Plus: decay to |+1⟩ emitting a σ₋ photon at Ω₊ with width Γ₊.
// Minus: decay to |−1⟩ emitting a σ₊ photon at Ω₋ with width Γ₋.
enum class Channel { Plus, Minus };

double channel_frequency(const SystemParams& p, Channel ch);  // Ω±
double channel_width(const SystemParams& p, Channel ch);      // Γ±

enum class Polarization { H, V };

// δ^P₋: sign of the |+1⟩⟨−1| coherence behind an H/V filter (+1 for H, −1 for V).
int coherence_sign(Polarization pol);

// δ^P∓ carried by the channel-ch detector amplitude: the V filter flips the
// sign of the Plus channel only.
int detector_sign(Polarization pol, Channel ch);

const char* to_string(Polarization pol);
Polarization polarization_from_string(const std::string& s);

// Flat key-value form used by config files and output metadata. Values are
// printed with 17 significant digits so doubles round-trip bit-exactly.
std::map<std::string, std::string> params_to_key_values(const SystemParams& p);
SystemParams params_from_key_values(const std::map<std::string, std::string>& kv);

}  // namespace lambda_entangle
