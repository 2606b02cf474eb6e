// entropy.hpp — Von Neumann entanglement entropies of the reduced states.
// All entropies are in nats; Fig.-2-style "S = ln 2" plateaus come out verbatim.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "lambda_entangle/params.hpp"

namespace lambda_entangle::entropy {

// −Σ p ln p with 0·ln 0 := 0. Accepts sub-normalized sets (the three-level
// entropy sums weighted sub-ensembles); eigenvalues in [−1e-12, 0) are clipped
// to 0, anything above 1 + 1e-9 is rejected.
double vn_entropy(std::span<const double> probs);

// S_fo(t) = Γt e^{−Γt} − λ₁ln λ₁ − λ₂ln λ₂, λ_{1,2} = ½(1−e^{−Γt})(1±|η(t)|).
// Includes the excited-state term, matching the early-time hump of the curve.
// Requires Γ₊ = Γ₋.
double entropy_frequency_only(const SystemParams& p, double t);

// S_fo(∞) with |η∞| = 1/√(1+Δω²/Γ²). Monotone in Δω/Γ, → ln 2 as Δω/Γ → ∞.
double entropy_frequency_only_asymptote(const SystemParams& p);

// Generalized S_fp(t) with Γ±/Γ branching weights; reduces to the equal-width
// closed form Γt e^{−Γt} − (1−e^{−Γt}) ln[(1−e^{−Γt})/2] when Γ₊ = Γ₋.
double entropy_frequency_polarization(const SystemParams& p, double t);

double entropy_frequency_polarization_asymptote(const SystemParams& p);

// S_fp(t) − S_fo(t) ≥ 0; requires Γ₊ = Γ₋ (through S_fo).
double entropy_gap(const SystemParams& p, double t);

enum class CurveLabel { fo, fp, post_detection };

struct EntropyCurve {
    std::vector<double> times;   // ns, ordered
    std::vector<double> values;  // nats, bounded by ln 3
    CurveLabel label = CurveLabel::fo;
};

// Validates lengths and the [0, ln 3] band before returning.
EntropyCurve make_entropy_curve(std::vector<double> times, std::vector<double> values,
                                CurveLabel label);

}  // namespace lambda_entangle::entropy
