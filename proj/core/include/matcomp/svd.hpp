#ifndef MATCOMP_SVD_HPP
#define MATCOMP_SVD_HPP

#include "matcomp/matrix.hpp"

namespace matcomp {

/// Thin SVD factors: u is m x r, vt is r x n, r = min(m, n).
/// sigma is sorted nonincreasing and nonnegative.
struct SvdFactors {
    Matrix u;
    Vector sigma;
    Matrix vt;

    Matrix reconstruct() const { return u * sigma.asDiagonal() * vt; }
};

SvdFactors svd(const Matrix& x);

Vector singular_values(const Matrix& x);

/// Singular values below 1e-12 * sigma_1 count as zero.
Index numerical_rank(const Vector& sigma);
Index numerical_rank(const Matrix& x);

inline constexpr double kRankCutoff = 1e-12;

} // namespace matcomp

#endif
