#include "lambda_entangle/density_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace lambda_entangle {

namespace {

// Eigenvalues of [[a, c], [c*, b]]: (a+b)/2 ± r with r = √(((a−b)/2)² + |c|²).
void eigenvalues_2x2(double a, double b, complexd c, double& lo, double& hi) {
    const double mid = 0.5 * (a + b);
    const double r = std::hypot(0.5 * (a - b), std::abs(c));
    lo = mid - r;
    hi = mid + r;
}

}  // namespace

QubitDensityMatrix::QubitDensityMatrix(double population_plus, complexd coherence,
                                       double population_minus)
    : pop_plus_(population_plus), pop_minus_(population_minus), coherence_(coherence) {
    if (!std::isfinite(pop_plus_) || !std::isfinite(pop_minus_) ||
        !std::isfinite(coherence_.real()) || !std::isfinite(coherence_.imag())) {
        throw std::invalid_argument("QubitDensityMatrix: non-finite entry");
    }
    double lo = 0.0, hi = 0.0;
    eigenvalues_2x2(pop_plus_, pop_minus_, coherence_, lo, hi);
    if (lo < -kPsdTol) {
        throw std::invalid_argument("QubitDensityMatrix: matrix is not positive semidefinite");
    }
    const double tr = trace();
    if (tr < -kTraceTol || tr > 1.0 + kTraceTol) {
        throw std::invalid_argument("QubitDensityMatrix: trace outside [0, 1]");
    }
}

QubitDensityMatrix QubitDensityMatrix::from_elements(const std::array<complexd, 4>& m) {
    const double herm = std::max({std::abs(m[0].imag()), std::abs(m[3].imag()),
                                  std::abs(m[1] - std::conj(m[2]))});
    if (herm > kHermitianTol) {
        throw std::invalid_argument("QubitDensityMatrix::from_elements: input is not Hermitian");
    }
    return QubitDensityMatrix(m[0].real(), m[1], m[3].real());
}

complexd QubitDensityMatrix::operator()(int row, int col) const {
    if (row == 0 && col == 0) return {pop_plus_, 0.0};
    if (row == 0 && col == 1) return coherence_;
    if (row == 1 && col == 0) return std::conj(coherence_);
    if (row == 1 && col == 1) return {pop_minus_, 0.0};
    throw std::out_of_range("QubitDensityMatrix: index out of range");
}

std::array<complexd, 4> QubitDensityMatrix::elements() const {
    return {complexd{pop_plus_, 0.0}, coherence_, std::conj(coherence_),
            complexd{pop_minus_, 0.0}};
}

double QubitDensityMatrix::purity() const {
    return pop_plus_ * pop_plus_ + pop_minus_ * pop_minus_ + 2.0 * std::norm(coherence_);
}

QubitDensityMatrix QubitDensityMatrix::normalized() const {
    const double tr = trace();
    if (tr <= kTraceTol) {
        throw std::domain_error("QubitDensityMatrix::normalized: vanishing trace");
    }
    return QubitDensityMatrix(pop_plus_ / tr, coherence_ / tr, pop_minus_ / tr);
}

bool QubitDensityMatrix::is_zero() const {
    return pop_plus_ == 0.0 && pop_minus_ == 0.0 && coherence_ == complexd{0.0, 0.0};
}

EigenDecomposition hermitian_eigen(const std::array<complexd, 4>& m) {
    const double herm = std::max({std::abs(m[0].imag()), std::abs(m[3].imag()),
                                  std::abs(m[1] - std::conj(m[2]))});
    if (herm > kHermitianTol) {
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian");
    }
    const double a = m[0].real();
    const double b = m[3].real();
    const complexd c = m[1];

    EigenDecomposition out;
    const double mid = 0.5 * (a + b);
    const double half_gap = 0.5 * (a - b);
    const double r = std::hypot(half_gap, std::abs(c));
    out.values = {mid + r, mid - r};

    // Degenerate within rounding: any orthonormal pair diagonalizes.
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    if (r <= 1e-15 * std::max(scale, 1e-300)) {
        out.vectors = {{{complexd{1.0, 0.0}, complexd{0.0, 0.0}},
                        {complexd{0.0, 0.0}, complexd{1.0, 0.0}}}};
        return out;
    }

    // Dominant eigenvector from the numerically larger residual column.
    std::array<complexd, 2> v1;
    if (half_gap >= 0.0) {
        v1 = {complexd{r + half_gap, 0.0}, std::conj(c)};
    } else {
        v1 = {c, complexd{r - half_gap, 0.0}};
    }
    const double n1 = std::hypot(std::abs(v1[0]), std::abs(v1[1]));
    v1[0] /= n1;
    v1[1] /= n1;
    // Orthogonal complement of (x, y) in C²: (−ȳ, x̄).
    const std::array<complexd, 2> v2 = {-std::conj(v1[1]), std::conj(v1[0])};
    out.vectors = {v1, v2};
    return out;
}

EigenDecomposition hermitian_eigen(const QubitDensityMatrix& rho) {
    return hermitian_eigen(rho.elements());
}

ThreeLevelState make_three_level_state(double excited_population,
                                       const QubitDensityMatrix& qubit_block) {
    const double total = excited_population + qubit_block.trace();
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::invalid_argument(
            "make_three_level_state: excited population and qubit trace must sum to 1");
    }
    return ThreeLevelState{excited_population, qubit_block};
}

}  // namespace lambda_entangle
