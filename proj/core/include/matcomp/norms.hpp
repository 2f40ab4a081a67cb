#ifndef MATCOMP_NORMS_HPP
#define MATCOMP_NORMS_HPP

#include "matcomp/matrix.hpp"

#include <string>

namespace matcomp {

enum class NormType { Frobenius, Spectral, Nuclear, KyFan };

/// A norm selector; k is only meaningful for the Ky-Fan k-norm.
struct NormKind {
    NormType type = NormType::Frobenius;
    Index k = 1;

    static NormKind frobenius() { return {NormType::Frobenius, 1}; }
    static NormKind spectral() { return {NormType::Spectral, 1}; }
    static NormKind nuclear() { return {NormType::Nuclear, 1}; }
    static NormKind ky_fan(Index k);

    std::string name() const;
    bool operator==(const NormKind&) const = default;
};

/// Frobenius = sqrt of sum of squares; spectral = sigma_1; nuclear = sum of all
/// singular values; Ky-Fan k = sum of the k largest. Requires k <= min(m, n).
double norm(const Matrix& x, NormKind kind);

double frobenius_norm(const Matrix& x);
double spectral_norm(const Matrix& x);
double nuclear_norm(const Matrix& x);
double ky_fan_norm(const Matrix& x, Index k);

} // namespace matcomp

#endif
