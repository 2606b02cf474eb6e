#include "lambda_entangle/quadrature.hpp"

#include <cmath>

namespace lambda_entangle::quadrature {

namespace {

using complexd = std::complex<double>;

struct Worker {
    const std::function<complexd(double)>& f;
    const Options& opts;
    std::size_t evaluations = 0;
    bool failed = false;
    double unresolved = 0.0;  // error bound of intervals given up on

    complexd eval(double x) {
        ++evaluations;
        return f(x);
    }

    // Classic adaptive Simpson with Richardson error estimate |S2 − S1|/15.
    complexd refine(double a, double b, complexd fa, complexd fm, complexd fb, complexd whole,
                    double tol, int depth) {
        const double m = 0.5 * (a + b);
        const double h = b - a;
        const complexd fl = eval(0.5 * (a + m));
        const complexd fr = eval(0.5 * (m + b));
        const complexd left = h / 12.0 * (fa + 4.0 * fl + fm);
        const complexd right = h / 12.0 * (fm + 4.0 * fr + fb);
        const complexd split = left + right;
        const double err = std::abs(split - whole) / 15.0;
        if (err <= tol || depth >= opts.max_depth) {
            if (err > tol) {
                failed = true;
                unresolved += err;
            }
            return split + (split - whole) / 15.0;
        }
        return refine(a, m, fa, fl, fm, left, 0.5 * tol, depth + 1) +
               refine(m, b, fm, fr, fb, right, 0.5 * tol, depth + 1);
    }
};

}  // namespace

Result integrate(const std::function<complexd(double)>& f, double a, double b,
                 const Options& opts) {
    if (!(b >= a)) {
        throw std::invalid_argument("quadrature::integrate: requires b >= a");
    }
    if (a == b) return Result{};

    Worker w{f, opts};
    const complexd fa = w.eval(a);
    const complexd fm = w.eval(0.5 * (a + b));
    const complexd fb = w.eval(b);
    const complexd whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double tol = std::max(opts.abs_tol, opts.rel_tol * std::abs(whole));
    const complexd value = w.refine(a, b, fa, fm, fb, whole, tol, 0);

    Result out{value, std::max(w.unresolved, tol), w.evaluations};
    if (w.failed) {
        throw ConvergenceError("quadrature::integrate: tolerance not met within max_depth",
                               out);
    }
    return out;
}

}  // namespace lambda_entangle::quadrature
