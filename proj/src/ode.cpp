#include "lambda_entangle/ode.hpp"

#include <algorithm>
#include <cmath>

namespace lambda_entangle::ode {

namespace {

// Dormand–Prince 5(4) tableau (Hairer–Nørsett–Wanner notation), FSAL.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
// b − b̂ (5th minus embedded 4th order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stepper {
    const Rhs& rhs;
    const Options& opts;
    std::size_t n;
    State k1, k2, k3, k4, k5, k6, k7, scratch, y_next;
    Stats stats;

    Stepper(const Rhs& rhs_, const Options& opts_, std::size_t n_)
        : rhs(rhs_), opts(opts_), n(n_) {
        for (State* s : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &scratch, &y_next}) {
            s->assign(n, {0.0, 0.0});
        }
    }

    void eval(double t, const State& y, State& out) {
        rhs(t, y, out);
        ++stats.rhs_evaluations;
    }

    // One trial step of size h from (t, y) with k1 = f(t, y) already current.
    // Returns the scaled error norm; fills y_next and k7 = f(t + h, y_next).
    double trial(double t, const State& y, double h) {
        for (std::size_t i = 0; i < n; ++i) scratch[i] = y[i] + h * a21 * k1[i];
        eval(t + c2 * h, scratch, k2);
        for (std::size_t i = 0; i < n; ++i)
            scratch[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(t + c3 * h, scratch, k3);
        for (std::size_t i = 0; i < n; ++i)
            scratch[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(t + c4 * h, scratch, k4);
        for (std::size_t i = 0; i < n; ++i)
            scratch[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(t + c5 * h, scratch, k5);
        for (std::size_t i = 0; i < n; ++i)
            scratch[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                     a64 * k4[i] + a65 * k5[i]);
        eval(t + h, scratch, k6);
        for (std::size_t i = 0; i < n; ++i)
            y_next[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                    b6 * k6[i]);
        eval(t + h, y_next, k7);

        double err_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> diff =
                h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                     e7 * k7[i]);
            const double scale =
                opts.abs_tol +
                opts.rel_tol * std::max(std::abs(y[i]), std::abs(y_next[i]));
            const double r = std::abs(diff) / scale;
            err_sq += r * r;
        }
        return std::sqrt(err_sq / static_cast<double>(n));
    }
};

}  // namespace

Stats integrate(const Rhs& rhs, State& y, double t0, std::span<const double> sample_times,
                const Observer& observer, const Options& opts) {
    Stepper st(rhs, opts, y.size());
    double t = t0;
    double h = opts.initial_step;
    bool k1_fresh = false;

    for (double target : sample_times) {
        if (target < t - 1e-12 * std::max(1.0, std::abs(t))) {
            throw std::invalid_argument("ode::integrate: sample_times must be ascending");
        }
        // Targets within rounding of the current time are just re-observed.
        const double close = 1e-12 * std::max(1.0, std::abs(target));
        while (target - t > close) {
            if (st.stats.steps_accepted + st.stats.steps_rejected >= opts.max_steps) {
                throw StepFailure("ode::integrate: step budget exhausted", t);
            }
            if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
            const bool clipped = h > target - t;
            const double h_step = clipped ? target - t : h;
            const double floor = 1e-14 * std::max(std::abs(t), 1.0);
            if (h_step < floor) {
                throw StepFailure("ode::integrate: step size underflow", t);
            }
            if (!k1_fresh) {
                st.eval(t, y, st.k1);
                k1_fresh = true;
            }
            const double err = st.trial(t, y, h_step);
            const double grow =
                std::clamp(err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0, 0.2, 5.0);
            if (err <= 1.0) {
                t += h_step;
                y.swap(st.y_next);
                st.k1.swap(st.k7);  // FSAL
                ++st.stats.steps_accepted;
                // A boundary-clipped accept says nothing about the free step.
                if (!clipped) h = h_step * grow;
            } else {
                ++st.stats.steps_rejected;
                h = h_step * grow;
            }
        }
        observer(t, y);
    }
    return st.stats;
}

}  // namespace lambda_entangle::ode
