#ifndef MATCOMP_COMPLETION_HPP
#define MATCOMP_COMPLETION_HPP

#include "matcomp/matrix.hpp"
#include "matcomp/norms.hpp"
#include "matcomp/observation_set.hpp"
#include "matcomp/solver.hpp"

#include <utility>
#include <vector>

namespace matcomp {

struct CompletionConfig {
    NormKind norm = NormKind::nuclear(); // nuclear, spectral, or ky_fan(k)
    double tol = 1e-6;        // admissible masked approximation error
    double lambda_tol = 1e-6; // admissible accuracy of the constraint radius
    int max_bisections = 60;
    SolverConfig solver; // solver.tol < 0 inherits tol above

    void validate() const;
};

struct CompletionResult {
    Matrix x;
    double lambda_star = 0.0;
    double final_error = 0.0;
    std::vector<std::pair<double, double>> bisection_history; // (lambda, error) per bisection
    bool converged = false;
    // Error should not increase with lambda; a violation means an inner solve
    // did not converge and the result deserves scrutiny.
    bool error_monotone = true;
};

/// Smallest-radius ball completion of the observed entries: binary search on
/// the radius lambda in [0, ||P m||], solving the masked approximation
/// problem at each midpoint. Requires a nonempty observation set.
CompletionResult complete(const Matrix& m, const ObservationSet& omega,
                          const CompletionConfig& cfg = {});

/// Norm of the masked matrix; an upper bound for the completion radius since
/// P m itself matches the observations exactly.
double completable_norm_bound(const Matrix& m, const ObservationSet& omega, NormKind kind);

} // namespace matcomp

#endif
