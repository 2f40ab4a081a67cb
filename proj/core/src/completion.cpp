#include "matcomp/completion.hpp"

#include "matcomp/constraint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace matcomp {

void CompletionConfig::validate() const {
    if (norm.type == NormType::Frobenius)
        throw std::invalid_argument("completion norm must be spectral, nuclear, or ky-fan");
    if (!(tol > 0.0)) throw std::invalid_argument("CompletionConfig: tol must be > 0");
    if (!(lambda_tol > 0.0)) throw std::invalid_argument("CompletionConfig: lambda_tol must be > 0");
    if (max_bisections < 1)
        throw std::invalid_argument("CompletionConfig: max_bisections must be >= 1");
}

double completable_norm_bound(const Matrix& m, const ObservationSet& omega, NormKind kind) {
    return norm(apply_mask(m, omega), kind);
}

namespace {

bool history_monotone(std::vector<std::pair<double, double>> history, double slack) {
    std::sort(history.begin(), history.end());
    for (std::size_t i = 1; i < history.size(); ++i) {
        if (history[i].second > history[i - 1].second + slack) return false;
    }
    return true;
}

} // namespace

CompletionResult complete(const Matrix& m, const ObservationSet& omega,
                          const CompletionConfig& cfg) {
    cfg.validate();
    if (omega.empty()) {
        throw std::invalid_argument("complete: observation set is empty, nothing to complete");
    }
    if (m.rows() != omega.rows() || m.cols() != omega.cols()) {
        throw std::invalid_argument("complete: matrix is " + std::to_string(m.rows()) + "x" +
                                    std::to_string(m.cols()) + " but observation set is " +
                                    std::to_string(omega.rows()) + "x" +
                                    std::to_string(omega.cols()));
    }

    const Matrix pm = apply_mask(m, omega);
    const double lambda_max_initial = norm(pm, cfg.norm);

    CompletionResult result;
    if (lambda_max_initial == 0.0) {
        // Every observed entry is zero; the zero matrix completes exactly.
        result.x = Matrix::Zero(m.rows(), m.cols());
        result.converged = true;
        return result;
    }

    SolverConfig inner = cfg.solver;
    if (inner.tol < 0.0) inner.tol = cfg.tol;

    double lambda_min = 0.0;
    double lambda_max = lambda_max_initial;
    double lambda = 0.0;

    // P m is feasible at the initial radius with zero masked error, so a
    // feasible witness exists from the start.
    Matrix best_x = pm;
    double best_lambda = lambda_max_initial;
    double best_error = 0.0;

    Matrix warm = pm;
    bool converged = false;

    for (int iter = 0; iter < cfg.max_bisections; ++iter) {
        const double lambda_prev = lambda;
        lambda = 0.5 * (lambda_min + lambda_max);
        const Constraint c = Constraint::ball(cfg.norm, lambda);
        ApproximationSolution sol = solve_approximation(m, omega, c, inner, warm);
        const double err = sol.trace.final_error();
        result.bisection_history.emplace_back(lambda, err);
        warm = sol.x;

        if (err > cfg.tol) {
            lambda_min = lambda;
        } else {
            lambda_max = lambda;
            best_x = sol.x;
            best_lambda = lambda;
            best_error = err;
        }

        if (std::abs(lambda - lambda_prev) < cfg.lambda_tol) {
            if (err < cfg.tol) {
                best_x = std::move(sol.x);
                best_lambda = lambda;
                best_error = err;
            }
            // Otherwise the bracket is already tighter than lambda_tol and the
            // feasible endpoint carries the answer.
            converged = true;
            break;
        }
    }

    result.x = std::move(best_x);
    result.lambda_star = best_lambda;
    result.final_error = best_error;
    result.converged = converged;
    result.error_monotone = history_monotone(result.bisection_history, cfg.tol);
    return result;
}

} // namespace matcomp
