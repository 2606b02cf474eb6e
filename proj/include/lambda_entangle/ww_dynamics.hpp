// ww_dynamics.hpp — closed-form Wigner-Weisskopf amplitudes, wavepacket
// overlaps, photon number, the which-path factor η(t), and the pre-measurement
// reduced density matrices of the spin qubit.
#pragma once

#include <array>

#include "lambda_entangle/density_matrix.hpp"
#include "lambda_entangle/params.hpp"

namespace lambda_entangle::ww {

enum class EntanglementMode { FrequencyOnly, FrequencyPolarization };

// C_A(t) = e^{−Γt/2}. Real and in (0, 1]; |C_A|² is the surviving population.
complexd excited_amplitude(const SystemParams& p, double t);

// C_{k,ch}(t) with the coupling replaced by √(Γch/2π), which makes the
// spectral amplitude self-normalizing: ∫|C_k|² dk = (Γch/Γ)(1 − e^{−Γt}).
complexd photon_amplitude(const SystemParams& p, Channel ch, double k, double t);

// ∫ G_a(ω,t) G*_b(ω,t) dω by contour integration; the Lorentzian lineshape
// product that carries the which-path suppression.
struct LineshapeOverlap {
    complexd value;
    double omega_a = 0.0;
    double omega_b = 0.0;
    double t = 0.0;
};
LineshapeOverlap lineshape_overlap(const SystemParams& p, Channel a, Channel b, double t);

// Gram matrix ⟨σ_a|σ_b⟩ of the single-photon wavepackets, row-major over
// (σ₁, σ₂) = (Plus-channel, Minus-channel packets). In FrequencyOnly mode the
// packets share one mode ladder and the off-diagonal is [1 − e^{−iΔωt}e^{−Γt}]
// / (1 + iΔω/Γ); in FrequencyPolarization mode it is exactly zero.
std::array<complexd, 4> wavepacket_norms(const SystemParams& p, double t,
                                         EntanglementMode mode);

// N_γ(t) = 1 − e^{−Γt}; equals the trace of both reduced density matrices.
double photon_number(const SystemParams& p, double t);

// η(t) = [1 − e^{−iΔωt}e^{−Γt}] / [(1 − e^{−Γt})(1 + iΔω/Γ)], t > 0.
// The t = 0 point is a 0/0 removable singularity and is rejected here; the
// density matrices use coherence_envelope instead.
complexd eta(const SystemParams& p, double t);

// (1 − e^{−Γt})·η(t) in cancellation-free form, total on t ≥ 0.
complexd coherence_envelope(const SystemParams& p, double t);

// Frequency-only entanglement: diag (1/2)(1 − e^{−Γt}), coherence
// (1/2)(1 − e^{−Γt}) e^{iΔωt} η(t). Only derived for Γ₊ = Γ₋; unequal widths
// are rejected rather than guessed.
QubitDensityMatrix rho_frequency_only(const SystemParams& p, double t);

// Frequency+polarization entanglement: orthogonal circular polarizations wipe
// the coherence, diag (Γ±/Γ)(1 − e^{−Γt}).
QubitDensityMatrix rho_frequency_polarization(const SystemParams& p, double t);

// ρ(t) = e^{−Γt}|A⟩⟨A| + qubit block; total trace 1.
ThreeLevelState three_level_state(const SystemParams& p, double t, EntanglementMode mode);

}  // namespace lambda_entangle::ww
