// quadrature.hpp — adaptive Simpson quadrature for smooth complex integrands.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace lambda_entangle::quadrature {

struct Result {
    std::complex<double> value{0.0, 0.0};
    double error_bound = 0.0;
    std::size_t evaluations = 0;
};

struct Options {
    double abs_tol = 1e-10;
    double rel_tol = 1e-6;
    int max_depth = 20;
};

// Thrown when an interval cannot meet tolerance within max_depth subdivisions;
// carries the estimate achieved so far and its error bound.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, Result achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    const Result& achieved() const { return achieved_; }

private:
    Result achieved_;
};

Result integrate(const std::function<std::complex<double>(double)>& f, double a, double b,
                 const Options& opts = {});

}  // namespace lambda_entangle::quadrature
