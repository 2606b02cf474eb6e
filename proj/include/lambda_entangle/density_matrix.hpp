// density_matrix.hpp — 2×2 spin-qubit density matrices over (|+1⟩, |−1⟩) and
// the closed-form Hermitian eigendecomposition.
#pragma once

#include <array>
#include <complex>

namespace lambda_entangle {

using complexd = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;

// Basis order is (|+1⟩, |−1⟩); entry (0,1) is the coherence ⟨+1|ρ|−1⟩, so the
// e^{iΔωt}η(t) term of the frequency-only state lands there with the printed
// sign. Sub-normalized matrices (trace < 1) are first-class: the trace carries
// the emitted or detected population, never a hidden renormalization.
class QubitDensityMatrix {
public:
    QubitDensityMatrix() = default;  // zero matrix

    // Hermitian by construction. Throws when the PSD or trace invariant fails.
    QubitDensityMatrix(double population_plus, complexd coherence, double population_minus);

    // Full-matrix entry point; rejects inputs that are not Hermitian within
    // kHermitianTol (max-norm of ρ − ρ†).
    static QubitDensityMatrix from_elements(const std::array<complexd, 4>& m);

    complexd operator()(int row, int col) const;
    std::array<complexd, 4> elements() const;  // row-major

    double population_plus() const { return pop_plus_; }
    double population_minus() const { return pop_minus_; }
    complexd coherence() const { return coherence_; }

    double trace() const { return pop_plus_ + pop_minus_; }
    double purity() const;  // Tr(ρ²), no normalization applied

    // ρ / Tr(ρ); throws std::domain_error when the trace is numerically zero.
    QubitDensityMatrix normalized() const;

    bool is_zero() const;

private:
    double pop_plus_ = 0.0;
    double pop_minus_ = 0.0;
    complexd coherence_{0.0, 0.0};
};

struct EigenDecomposition {
    std::array<double, 2> values;                    // descending
    std::array<std::array<complexd, 2>, 2> vectors;  // vectors[i] pairs with values[i]
};

// Closed-form 2×2 Hermitian eigensolver. Rejects non-Hermitian input beyond
// kHermitianTol; eigenvectors are orthonormal and Σᵢ λᵢ vᵢvᵢ† reconstructs m.
EigenDecomposition hermitian_eigen(const std::array<complexd, 4>& m);
EigenDecomposition hermitian_eigen(const QubitDensityMatrix& rho);

// ρ(t) = e^{−Γt}|A⟩⟨A| + qubit block. Unitarity ties the two weights together.
struct ThreeLevelState {
    double excited_population = 1.0;
    QubitDensityMatrix qubit_block;
};

// Checks excited_population + trace(qubit_block) = 1 within 1e-9.
ThreeLevelState make_three_level_state(double excited_population,
                                       const QubitDensityMatrix& qubit_block);

}  // namespace lambda_entangle
