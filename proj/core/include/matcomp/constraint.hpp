#ifndef MATCOMP_CONSTRAINT_HPP
#define MATCOMP_CONSTRAINT_HPP

#include "matcomp/matrix.hpp"
#include "matcomp/norms.hpp"

#include <string>

namespace matcomp {

/// A feasible set for matrix approximation. Ball constraints carry a radius
/// lambda; KyFanBall and RankAtMost carry a count k.
///
/// KyFanBall(1, l) describes the same set as SpectralBall(l), and
/// KyFanBall(min(m,n), l) the same set as NuclearBall(l).
struct Constraint {
    enum class Kind { FrobeniusBall, SpectralBall, NuclearBall, KyFanBall, RankAtMost, Orthonormal };

    Kind kind = Kind::FrobeniusBall;
    double lambda = 0.0;
    Index k = 0;

    static Constraint frobenius_ball(double lambda);
    static Constraint spectral_ball(double lambda);
    static Constraint nuclear_ball(double lambda);
    static Constraint ky_fan_ball(Index k, double lambda);
    static Constraint rank_at_most(Index k);
    static Constraint orthonormal();

    /// Ball constraint for a completion norm (spectral / nuclear / Ky-Fan).
    static Constraint ball(NormKind norm, double lambda);

    /// Throws std::invalid_argument if the constraint cannot apply to an
    /// m x n matrix (k out of range, or Orthonormal with rows < cols).
    void check_applicable(Index rows, Index cols) const;

    bool is_convex() const { return kind != Kind::RankAtMost && kind != Kind::Orthonormal; }
    std::string describe() const;
    bool operator==(const Constraint&) const = default;
};

} // namespace matcomp

#endif
