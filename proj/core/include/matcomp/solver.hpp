#ifndef MATCOMP_SOLVER_HPP
#define MATCOMP_SOLVER_HPP

#include "matcomp/constraint.hpp"
#include "matcomp/matrix.hpp"
#include "matcomp/observation_set.hpp"
#include "matcomp/projections.hpp"

#include <vector>

namespace matcomp {

struct SolverConfig {
    enum class StepMode { Fixed, Armijo };

    StepMode step_mode = StepMode::Fixed;
    double mu = 1.0; // fixed step size

    // Armijo backtracking: try mu0 * 2^-j, j = 0..max_halvings, accept the
    // first j with sufficient decrease.
    double armijo_sigma = 0.1; // sufficient-decrease fraction, in (0, 1)
    double armijo_mu0 = 1.0;
    int max_halvings = 30;

    double tol = -1.0; // absolute masked-error target; < 0 = auto, 1e-6 * max(1, ||P M||_F)
    double rel_tol = 1e-10; // stagnation threshold on successive errors
    int max_iters = 5000;

    void validate() const;
};

enum class StopReason { Tolerance, Stagnation, MaxIterations };

/// Per-iteration masked errors; errors[n] is the error of iterate n, so the
/// trace always includes the initial iterate and is nonincreasing.
struct IterationTrace {
    std::vector<double> errors;
    std::vector<double> steps;
    bool converged = false;
    StopReason stop_reason = StopReason::MaxIterations;

    std::size_t iterations() const { return errors.empty() ? 0 : errors.size() - 1; }
    double final_error() const { return errors.empty() ? 0.0 : errors.back(); }
};

struct ApproximationSolution {
    Matrix x;
    IterationTrace trace;
};

/// ||P(x - m)||_F restricted to the observed entries.
double masked_error(const Matrix& x, const Matrix& m, const ObservationSet& omega);

/// Gradient of f(x) = 0.5 * masked_error(x, m, omega)^2, i.e. P(x - m).
Matrix objective_gradient(const Matrix& x, const Matrix& m, const ObservationSet& omega);

/// One projected-gradient step with step size mu.
Matrix fixed_step_iterate(const Matrix& x, const Matrix& m, const ObservationSet& omega,
                          const Constraint& c, double mu);

struct ArmijoStep {
    Matrix x;
    double mu = 0.0;
    bool sufficient_decrease = true; // false when backtracking ran out; x is then the best try
};

ArmijoStep armijo_step(const Matrix& x, const Matrix& m, const ObservationSet& omega,
                       const Constraint& c, const SolverConfig& cfg);

/// Projected-gradient approximation of m on the observed entries subject to c.
/// Starts from project(P m, c) (or a caller-provided x0, projected), stops on
/// tolerance, stagnation of the error, or max_iters.
ApproximationSolution solve_approximation(const Matrix& m, const ObservationSet& omega,
                                          const Constraint& c, const SolverConfig& cfg = {});
ApproximationSolution solve_approximation(const Matrix& m, const ObservationSet& omega,
                                          const Constraint& c, const SolverConfig& cfg,
                                          const Matrix& x0);

} // namespace matcomp

#endif
