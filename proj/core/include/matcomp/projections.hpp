#ifndef MATCOMP_PROJECTIONS_HPP
#define MATCOMP_PROJECTIONS_HPP

#include "matcomp/constraint.hpp"
#include "matcomp/matrix.hpp"

namespace matcomp {

/// Result of projecting onto a constraint set. active is false iff the input
/// was already feasible, in which case x is the input, unchanged. unique is
/// false only for the orthonormal projection of a column-rank-deficient
/// matrix, where the nearest orthonormal matrix is not unique.
struct ProjectionResult {
    Matrix x;
    bool active = false;
    bool unique = true;
};

ProjectionResult project_frobenius_ball(const Matrix& m, double lambda);
ProjectionResult project_spectral_ball(const Matrix& m, double lambda);
ProjectionResult project_nuclear_ball(const Matrix& m, double lambda);
ProjectionResult project_ky_fan_ball(const Matrix& m, Index k, double lambda);
ProjectionResult project_rank(const Matrix& m, Index k);
ProjectionResult project_orthonormal(const Matrix& m);

/// Dispatches on the constraint kind.
ProjectionResult project(const Matrix& m, const Constraint& c);

/// Nearest (Euclidean) vector to sigma with sum <= lambda and entries >= 0.
/// sigma must be sorted nonincreasing and nonnegative; so is the result.
Vector project_singular_values_nuclear(const Vector& sigma, double lambda);

/// Nearest vector to sigma whose k largest entries sum to at most lambda,
/// entries >= 0. Same ordering contract as the nuclear variant. k = 1 gives
/// the entrywise cap min(sigma_i, lambda); k = n gives the nuclear result.
Vector project_singular_values_ky_fan(const Vector& sigma, Index k, double lambda);

/// The quantity the constraint bounds: the matching norm for ball
/// constraints, the numerical rank for RankAtMost, and ||m^T m - I||_F for
/// Orthonormal (0 when feasible).
double constraint_measure(const Matrix& m, const Constraint& c);

} // namespace matcomp

#endif
