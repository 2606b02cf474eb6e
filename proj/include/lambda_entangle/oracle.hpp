// oracle.hpp — independent brute-force validator: the photon field is
// discretized onto a finite frequency lattice, the exact coupled amplitude
// equations are integrated as an ODE system, and the trajectories are compared
// against every closed-form Wigner-Weisskopf result.
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lambda_entangle/density_matrix.hpp"
#include "lambda_entangle/ode.hpp"
#include "lambda_entangle/params.hpp"
#include "lambda_entangle/photodetect.hpp"

namespace lambda_entangle::oracle {

struct ModeGrid {
    std::vector<double> frequencies;  // uniform lattice over [Ω − W, Ω + W]
    double spacing = 0.0;             // Δk ≤ Γ/10
    double half_width = 0.0;          // W ≥ 40Γ
    double omega_center = 0.0;
    double coupling_plus = 0.0;   // flat per-mode coupling g = √(ΓchΔk/2π)
    double coupling_minus = 0.0;

    std::size_t mode_count() const { return frequencies.size(); }
    double recurrence_time() const;  // 2π/Δk
    double golden_rule_width(Channel ch) const;  // 2π g²/Δk, reproduces Γch
};

// Floors: half_width ≥ 40 (lineshape capture), modes_per_gamma ≥ 10 (resolve
// the linewidth). The lattice must stay at positive frequencies.
ModeGrid build_grid(const SystemParams& p, double half_width_in_gammas,
                    double modes_per_gamma);

enum class Execution { Serial, OpenMP };

struct Options {
    Execution execution = Execution::OpenMP;
    double sample_spacing = 0.25;  // ns between stored scalar samples
    double snapshot_spacing = 5.0;     // ns between stored full amplitude vectors
    double front_window_half_width = 2.0;  // densely sampled span around t_d
    double front_sample_spacing = 0.05;
    ode::Options ode{1e-9, 1e-12, 1e-4, 0.0, 200'000'000};
};

// Scalar summaries stored on the fine time grid.
struct Sample {
    double t = 0.0;
    complexd excited;          // C_A(t)
    double norm = 0.0;         // |C_A|² + Σ|C|² (detector block excluded)
    // Wavepacket Gram entries ⟨σ_a|σ_b⟩ = 2Σ_k C_{k,b}C*_{k,a}.
    double gram_plus = 0.0;    // ⟨σ₁|σ₁⟩
    double gram_minus = 0.0;   // ⟨σ₂|σ₂⟩
    complexd gram_cross;       // ⟨σ₂|σ₁⟩
    // Detector pair sums Σ_j D_{j,a}D*_{j,b}; zero without a detector block.
    double det_plus = 0.0;
    double det_minus = 0.0;
    complexd det_cross;
    double det_total = 0.0;
};

// Full amplitude vectors at coarse checkpoints.
struct Snapshot {
    double t = 0.0;
    std::vector<complexd> plus;
    std::vector<complexd> minus;
    std::vector<complexd> detector_plus;
    std::vector<complexd> detector_minus;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<Snapshot> snapshots;
    ode::Stats stats;
    bool with_detector = false;
};

// Adaptive integration of the interaction-picture system with initial
// condition C_A = 1, everything else 0. Requires the narrow-width regime and
// horizon < T_rec/2. With a detector the mirror lattice of excited detector
// states is driven by the retarded field at x_d; its back-action on the field
// is dropped, so the norm check covers the emitter+photon block only.
Trajectory integrate(const SystemParams& p, const ModeGrid& grid, double horizon,
                     const std::optional<photodetect::DetectorParams>& detector,
                     const Options& opts = {});

struct CheckResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Cross-checks a completed trajectory against the closed forms: excited-state
// decay, wavepacket Gram matrix, reconstructed ρ_fo/ρ_fp, detector pair sums
// vs cross_spectral_integral, causal onset, norm conservation, golden rule.
ValidationReport validate(const SystemParams& p, const ModeGrid& grid,
                          const Trajectory& trajectory,
                          const std::optional<photodetect::DetectorParams>& detector);

// Scaled desk parameters: Γ = 0.1/ns split equally, Δω = ratio·Γ, and Ω high
// enough (≥ 100Γ) that the narrow-width admissibility flag holds.
SystemParams desk_params(double splitting_ratio);

}  // namespace lambda_entangle::oracle
