// eraser.hpp — the shutter-function quantum eraser: time-binned detection
// density matrix, its purification, free post-detection evolution, the
// microwave-projection joint probability, and the variable-width "blurrer".
#pragma once

#include <array>

#include "lambda_entangle/density_matrix.hpp"
#include "lambda_entangle/params.hpp"
#include "lambda_entangle/photodetect.hpp"

namespace lambda_entangle::eraser {

using photodetect::DetectorParams;

struct ShutterSpec {
    double t_D = 0.0;      // shutter closing time, ns
    double delta_t = 0.0;  // window length; shutter open on [t_D − δt, t_D]
};

// Γδt ≪ Δωδt ≪ 1, enforced as Γδt < 0.05 and Δω·δt < 0.05. The analytic
// eraser path demands this; blurred_density_matrix accepts any δt > 0.
bool shutter_invariant_ok(const SystemParams& p, const ShutterSpec& s);

// ρ_D(t_D) = (𝒟/2)(Γδt)e^{−Γτ}Θ(τ){1 + δ^P(|+1⟩⟨−1|e^{iΔω·t_d} + h.c.)} in the
// equal-width case; general widths carry Γ±δt populations and a √(Γ₊Γ₋)δt
// coherence. The phase depends on t_d only: the shutter has erased the
// which-path frequency information and the normalized state is pure.
QubitDensityMatrix rho_erased(const SystemParams& p, const DetectorParams& d,
                              const ShutterSpec& s);

struct PureQubitState {
    std::array<complexd, 2> amplitudes{};  // unit-norm over (|+1⟩, |−1⟩)
    double weight = 0.0;                   // weight·(vv†) reproduces rho_erased
};

// (√(Γ₊/Γ) e^{iΩ₊t_d}, δ^P √(Γ₋/Γ) e^{iΩ₋t_d}) with weight = trace(ρ_D); the
// |+1⟩ amplitude phase is fixed to Ω₊t_d exactly.
PureQubitState purified_state(const SystemParams& p, const DetectorParams& d,
                              const ShutterSpec& s);

// Free evolution: amplitudes pick up e^{iΩ±·t}; the relative phase advances by
// Δω·t and the weight is untouched.
PureQubitState evolve_free(const PureQubitState& state, const SystemParams& p, double t);

// The microwave transfer state |M(t)⟩ = (e^{iΩ₊t}|+1⟩ + e^{iΩ₋t}e^{−iφ}|−1⟩)/√2
// at absolute time t; the −φ convention makes the joint probability oscillate
// as cos(Δωτ + φ).
std::array<complexd, 2> microwave_state(const SystemParams& p, double t, double phi);

// 𝒩(τ) = (𝒟/2)(Γδt)e^{−Γτ}Θ(τ).
double eraser_normalization(const SystemParams& p, const DetectorParams& d,
                            const ShutterSpec& s);

// P_{M|H,V}(τ) = (𝒩(τ)/2)[1 ± cos(Δωτ + φ)]: projection of the freely evolved
// purified state onto |M(t)⟩, independent of the evolution time evolve_ns
// because the Ω± phases cancel.
double joint_probability(const SystemParams& p, const DetectorParams& d,
                         const ShutterSpec& s, double phi, double evolve_ns = 0.0);

// The quantum blurrer: numeric quadrature of the single-time detection
// integral over an arbitrary-width rectangular window. Reduces to rho_erased
// for Γδt, Δωδt ≪ 1 and to the rho_detected which-path floor when the window
// spans the whole emission.
QubitDensityMatrix blurred_density_matrix(const SystemParams& p, const DetectorParams& d,
                                          double t_D, double delta_t);

}  // namespace lambda_entangle::eraser
