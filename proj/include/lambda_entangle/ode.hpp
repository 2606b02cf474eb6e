// ode.hpp — adaptive Dormand–Prince 5(4) integration of complex linear systems.
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace lambda_entangle::ode {

using State = std::vector<std::complex<double>>;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;
using Observer = std::function<void(double t, const State& y)>;

struct Options {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_step = 1e-4;
    double max_step = 0.0;  // 0 = unbounded
    std::size_t max_steps = 200'000'000;
};

// Step-size underflow or step budget exhausted; reports how far we got.
class StepFailure : public std::runtime_error {
public:
    StepFailure(const std::string& what, double time_reached)
        : std::runtime_error(what), time_reached_(time_reached) {}
    double time_reached() const { return time_reached_; }

private:
    double time_reached_ = 0.0;
};

struct Stats {
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
    std::size_t rhs_evaluations = 0;
};

// Integrates y' = rhs(t, y) from t0, landing exactly on each entry of
// sample_times (ascending, first ≥ t0) and invoking the observer there.
// Error control is the standard mixed test err_i/(atol + rtol·|y_i|) with a
// smoothed I controller; everything is deterministic for a fixed rhs.
Stats integrate(const Rhs& rhs, State& y, double t0, std::span<const double> sample_times,
                const Observer& observer, const Options& opts = {});

}  // namespace lambda_entangle::ode
