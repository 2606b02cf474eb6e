// photodetect.hpp — broadband Glauber photodetection of the polarization-
// entangled state: detector spectral amplitudes, the projected post-measurement
// density matrix, conditional probabilities, and the post-detection entropy.
#pragma once

#include "lambda_entangle/density_matrix.hpp"
#include "lambda_entangle/params.hpp"

namespace lambda_entangle::photodetect {

struct DetectorParams {
    double efficiency = 1.0;                  // 𝒟(Ω) ∈ (0, 1]; κ's absorbed here
    double t_d = 0.0;                         // propagation delay x_d/c, ns
    Polarization filter = Polarization::H;    // H/V linear filter
};

DetectorParams validate_detector(const DetectorParams& d);

// D_{j,ch}(t) with κ_j ≡ 1: zero for t ≤ t_d (hard causal gate before any
// arithmetic), else δ^P √(Γch/2π) e^{iνt_d} [1−e^{i(ν−Ωch+iΓ/2)(t−t_d)}]
// / (ν−Ωch+iΓ/2).
complexd detector_amplitude(const SystemParams& p, const DetectorParams& d, Channel ch,
                            double nu, double t);

// ∫ F_a F*_b dω = (√(ΓaΓb)/Γ)[1−e^{−iΔab·τ}e^{−Γτ}]/(1+iΔab/Γ), τ ≥ 0.
complexd cross_spectral_integral(const SystemParams& p, Channel a, Channel b, double tau);

// ρ_D(t_D): zero for t_D ≤ t_d; trace = efficiency(1−e^{−Γτ}); the coherence
// phase carries the full detection time e^{iΔω·t_D} while η sees only the
// retarded τ = t_D − t_d. The V filter flips the coherence sign. General
// widths are assembled from cross_spectral_integral; Γ₊ = Γ₋ takes the printed
// closed form.
QubitDensityMatrix rho_detected(const SystemParams& p, const DetectorParams& d, double t_D);

// Tr ρ_D |M⟩⟨M| with |M⟩ = (|+1⟩ + e^{iφ}|−1⟩)/√2. Raw probability in
// [0, efficiency]; the paper plots P/𝒟(Ω), which the CLI emits.
double conditional_probability(const SystemParams& p, const DetectorParams& d, double t_D,
                               double phi);

// S̃_D(τ) = vn_entropy({½(1±|η(τ)|)}); asymptotically equals S_fo(∞). τ > 0,
// equal widths.
double post_detection_entropy(const SystemParams& p, double tau);

}  // namespace lambda_entangle::photodetect
