#include "matcomp/constraint.hpp"

#include <stdexcept>

namespace matcomp {

namespace {

void require_positive_lambda(double lambda, const char* what) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument(std::string(what) + ": lambda must be > 0, got " +
                                    std::to_string(lambda));
    }
}

void require_positive_k(Index k, const char* what) {
    if (k < 1) {
        throw std::invalid_argument(std::string(what) + ": k must be >= 1, got " +
                                    std::to_string(k));
    }
}

} // namespace

Constraint Constraint::frobenius_ball(double lambda) {
    require_positive_lambda(lambda, "frobenius_ball");
    return {Kind::FrobeniusBall, lambda, 0};
}

Constraint Constraint::spectral_ball(double lambda) {
    require_positive_lambda(lambda, "spectral_ball");
    return {Kind::SpectralBall, lambda, 0};
}

Constraint Constraint::nuclear_ball(double lambda) {
    require_positive_lambda(lambda, "nuclear_ball");
    return {Kind::NuclearBall, lambda, 0};
}

Constraint Constraint::ky_fan_ball(Index k, double lambda) {
    require_positive_k(k, "ky_fan_ball");
    require_positive_lambda(lambda, "ky_fan_ball");
    return {Kind::KyFanBall, lambda, k};
}

Constraint Constraint::rank_at_most(Index k) {
    require_positive_k(k, "rank_at_most");
    return {Kind::RankAtMost, 0.0, k};
}

Constraint Constraint::orthonormal() { return {Kind::Orthonormal, 0.0, 0}; }

Constraint Constraint::ball(NormKind norm, double lambda) {
    switch (norm.type) {
        case NormType::Spectral: return spectral_ball(lambda);
        case NormType::Nuclear: return nuclear_ball(lambda);
        case NormType::KyFan: return ky_fan_ball(norm.k, lambda);
        case NormType::Frobenius: return frobenius_ball(lambda);
    }
    throw std::invalid_argument("Constraint::ball: unknown norm kind");
}

void Constraint::check_applicable(Index rows, Index cols) const {
    const Index r = std::min(rows, cols);
    switch (kind) {
        case Kind::KyFanBall:
        case Kind::RankAtMost:
            if (k > r) {
                throw std::invalid_argument(describe() + ": k exceeds min(rows, cols) = " +
                                            std::to_string(r));
            }
            break;
        case Kind::Orthonormal:
            if (rows < cols) {
                throw std::invalid_argument("orthonormal constraint requires rows >= cols, got " +
                                            std::to_string(rows) + "x" + std::to_string(cols));
            }
            break;
        default:
            break;
    }
}

std::string Constraint::describe() const {
    switch (kind) {
        case Kind::FrobeniusBall: return "frobenius_ball(" + std::to_string(lambda) + ")";
        case Kind::SpectralBall: return "spectral_ball(" + std::to_string(lambda) + ")";
        case Kind::NuclearBall: return "nuclear_ball(" + std::to_string(lambda) + ")";
        case Kind::KyFanBall:
            return "ky_fan_ball(" + std::to_string(k) + ", " + std::to_string(lambda) + ")";
        case Kind::RankAtMost: return "rank_at_most(" + std::to_string(k) + ")";
        case Kind::Orthonormal: return "orthonormal";
    }
    return "?";
}

} // namespace matcomp
