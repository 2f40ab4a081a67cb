#include "matcomp/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace matcomp {

void SolverConfig::validate() const {
    if (step_mode == StepMode::Fixed && !(mu > 0.0))
        throw std::invalid_argument("SolverConfig: mu must be > 0");
    if (step_mode == StepMode::Armijo) {
        if (!(armijo_sigma > 0.0 && armijo_sigma < 1.0))
            throw std::invalid_argument("SolverConfig: armijo_sigma must be in (0, 1)");
        if (!(armijo_mu0 > 0.0)) throw std::invalid_argument("SolverConfig: armijo_mu0 must be > 0");
        if (max_halvings < 0) throw std::invalid_argument("SolverConfig: max_halvings must be >= 0");
    }
    if (!(rel_tol > 0.0)) throw std::invalid_argument("SolverConfig: rel_tol must be > 0");
    if (max_iters < 1) throw std::invalid_argument("SolverConfig: max_iters must be >= 1");
}

double masked_error(const Matrix& x, const Matrix& m, const ObservationSet& omega) {
    require_same_shape(x, m, "masked_error");
    if (x.rows() != omega.rows() || x.cols() != omega.cols()) {
        throw std::invalid_argument("masked_error: observation set is " +
                                    std::to_string(omega.rows()) + "x" +
                                    std::to_string(omega.cols()) + " but matrices are " +
                                    std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    }
    double sq = 0.0;
    for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < x.cols(); ++j)
            if (omega.contains(i, j)) {
                const double d = x(i, j) - m(i, j);
                sq += d * d;
            }
    return std::sqrt(sq);
}

Matrix objective_gradient(const Matrix& x, const Matrix& m, const ObservationSet& omega) {
    require_same_shape(x, m, "objective_gradient");
    return apply_mask(x - m, omega);
}

Matrix fixed_step_iterate(const Matrix& x, const Matrix& m, const ObservationSet& omega,
                          const Constraint& c, double mu) {
    return project(x - mu * objective_gradient(x, m, omega), c).x;
}

ArmijoStep armijo_step(const Matrix& x, const Matrix& m, const ObservationSet& omega,
                       const Constraint& c, const SolverConfig& cfg) {
    if (cfg.step_mode != SolverConfig::StepMode::Armijo)
        throw std::invalid_argument("armijo_step: config step_mode is not Armijo");
    cfg.validate();

    const Matrix grad = objective_gradient(x, m, omega);
    const double e = masked_error(x, m, omega);
    const double fx = 0.5 * e * e;

    ArmijoStep best;
    double best_f = std::numeric_limits<double>::infinity();
    double mu = cfg.armijo_mu0;
    for (int j = 0; j <= cfg.max_halvings; ++j, mu *= 0.5) {
        Matrix z = project(x - mu * grad, c).x;
        const double ez = masked_error(z, m, omega);
        const double fz = 0.5 * ez * ez;
        const double decrease = (grad.array() * (x - z).array()).sum();
        if (fz <= fx - cfg.armijo_sigma * decrease) {
            return {std::move(z), mu, true};
        }
        if (fz < best_f) {
            best_f = fz;
            best = {std::move(z), mu, false};
        }
    }
    return best;
}

namespace {

ApproximationSolution run(const Matrix& m, const ObservationSet& omega, const Constraint& c,
                          const SolverConfig& cfg, const Matrix& start) {
    cfg.validate();
    c.check_applicable(m.rows(), m.cols());

    const Matrix pm = apply_mask(m, omega);
    const double tol = cfg.tol >= 0.0 ? cfg.tol : 1e-6 * std::max(1.0, pm.norm());

    Matrix x = project(start, c).x;
    IterationTrace trace;
    double err = masked_error(x, m, omega);
    trace.errors.push_back(err);
    const double stagnation = cfg.rel_tol * std::max(1.0, err);

    if (err <= tol) {
        trace.converged = true;
        trace.stop_reason = StopReason::Tolerance;
        return {std::move(x), std::move(trace)};
    }

    for (int n = 0; n < cfg.max_iters; ++n) {
        Matrix next;
        double mu_used;
        if (cfg.step_mode == SolverConfig::StepMode::Fixed) {
            next = fixed_step_iterate(x, m, omega, c, cfg.mu);
            mu_used = cfg.mu;
        } else {
            ArmijoStep s = armijo_step(x, m, omega, c, cfg);
            next = std::move(s.x);
            mu_used = s.mu;
        }
        const double next_err = masked_error(next, m, omega);
        if (next_err > err) {
            // Only possible on rounding noise at a plateau (or an off-contract
            // step size); keep the monotone trace and stop here.
            trace.converged = true;
            trace.stop_reason = StopReason::Stagnation;
            return {std::move(x), std::move(trace)};
        }
        x = std::move(next);
        trace.errors.push_back(next_err);
        trace.steps.push_back(mu_used);
        const double delta = err - next_err;
        err = next_err;
        if (err <= tol) {
            trace.converged = true;
            trace.stop_reason = StopReason::Tolerance;
            return {std::move(x), std::move(trace)};
        }
        if (delta <= stagnation) {
            trace.converged = true;
            trace.stop_reason = StopReason::Stagnation;
            return {std::move(x), std::move(trace)};
        }
    }
    trace.converged = false;
    trace.stop_reason = StopReason::MaxIterations;
    return {std::move(x), std::move(trace)};
}

} // namespace

ApproximationSolution solve_approximation(const Matrix& m, const ObservationSet& omega,
                                          const Constraint& c, const SolverConfig& cfg) {
    return run(m, omega, c, cfg, apply_mask(m, omega));
}

ApproximationSolution solve_approximation(const Matrix& m, const ObservationSet& omega,
                                          const Constraint& c, const SolverConfig& cfg,
                                          const Matrix& x0) {
    require_same_shape(x0, m, "solve_approximation");
    return run(m, omega, c, cfg, x0);
}

} // namespace matcomp
