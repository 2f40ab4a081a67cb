#include "matcomp/projections.hpp"

#include "matcomp/norms.hpp"
#include "matcomp/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace matcomp {

namespace {

// Relative slack when deciding whether the input is already feasible.
constexpr double kActiveSlack = 1e-12;

void validate_sigma(const Vector& sigma, const char* what) {
    for (Index i = 0; i < sigma.size(); ++i) {
        if (!(sigma(i) >= 0.0)) {
            throw std::invalid_argument(std::string(what) + ": singular values must be >= 0");
        }
        if (i > 0 && sigma(i) > sigma(i - 1)) {
            throw std::invalid_argument(std::string(what) +
                                        ": singular values must be sorted nonincreasing");
        }
    }
}

Matrix recompose(const SvdFactors& f, const Vector& y) {
    return f.u * y.asDiagonal() * f.vt;
}

double top_k_sum(const Vector& y, Index k) {
    Vector s = y;
    std::sort(s.data(), s.data() + s.size(), std::greater<double>());
    return s.head(k).sum();
}

} // namespace

ProjectionResult project_frobenius_ball(const Matrix& m, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("project_frobenius_ball: lambda must be > 0");
    const double f = m.norm();
    if (f <= lambda * (1.0 + kActiveSlack)) return {m, false, true};
    return {m * (lambda / f), true, true};
}

ProjectionResult project_spectral_ball(const Matrix& m, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("project_spectral_ball: lambda must be > 0");
    SvdFactors f = svd(m);
    if (f.sigma.size() == 0 || f.sigma(0) <= lambda * (1.0 + kActiveSlack)) return {m, false, true};
    Vector y = f.sigma.cwiseMin(lambda);
    return {recompose(f, y), true, true};
}

Vector project_singular_values_nuclear(const Vector& sigma, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("project_singular_values_nuclear: lambda must be > 0");
    validate_sigma(sigma, "project_singular_values_nuclear");
    const Index n = sigma.size();
    if (n == 0 || sigma.sum() <= lambda * (1.0 + kActiveSlack)) return sigma;

    // Soft threshold: y_i = max(sigma_i - theta, 0) with sum(y) = lambda.
    // The breakpoint scan works because sigma arrives sorted.
    double prefix = 0.0;
    double theta = 0.0;
    for (Index j = 0; j < n; ++j) {
        prefix += sigma(j);
        const double cand = (prefix - lambda) / static_cast<double>(j + 1);
        if (sigma(j) > cand) theta = cand;
    }
    return (sigma.array() - theta).cwiseMax(0.0).matrix();
}

ProjectionResult project_nuclear_ball(const Matrix& m, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("project_nuclear_ball: lambda must be > 0");
    SvdFactors f = svd(m);
    if (f.sigma.sum() <= lambda * (1.0 + kActiveSlack)) return {m, false, true};
    Vector y = project_singular_values_nuclear(f.sigma, lambda);
    return {recompose(f, y), true, true};
}

Vector project_singular_values_ky_fan(const Vector& sigma, Index k, double lambda) {
    if (!(lambda > 0.0))
        throw std::invalid_argument("project_singular_values_ky_fan: lambda must be > 0");
    validate_sigma(sigma, "project_singular_values_ky_fan");
    const Index n = sigma.size();
    if (k < 1 || k > n) {
        throw std::invalid_argument("project_singular_values_ky_fan: k must be in [1, " +
                                    std::to_string(n) + "], got " + std::to_string(k));
    }
    if (sigma.head(k).sum() <= lambda * (1.0 + kActiveSlack)) return sigma;

    // KKT structure of the minimizer: a top block (i <= p) lowered by a common
    // theta, a tie block (p < i <= q) pinned at a common value c carrying the
    // remaining subgradient budget k - p, and entries below left at
    // min(sigma_i, c). Candidates over 0 <= p <= k <= q <= n are solved in
    // closed form and screened against the KKT inequalities; ties at zero
    // (c = 0) satisfy the budget as an inequality and form their own family.
    const double scale = std::max(1.0, sigma(0));
    const double eps = 1e-10 * scale;

    Vector prefix(n + 1);
    prefix(0) = 0.0;
    for (Index i = 0; i < n; ++i) prefix(i + 1) = prefix(i) + sigma(i);

    auto build = [&](Index p, Index q, double theta, double c) {
        Vector y(n);
        for (Index i = 0; i < p; ++i) y(i) = sigma(i) - theta;
        for (Index i = p; i < q; ++i) y(i) = c;
        for (Index i = q; i < n; ++i) y(i) = std::min(sigma(i), c);
        y = y.cwiseMax(0.0);
        std::sort(y.data(), y.data() + n, std::greater<double>());
        return y;
    };

    Vector best;
    double best_dist = std::numeric_limits<double>::infinity();
    auto consider = [&](const Vector& y) {
        if (top_k_sum(y, k) > lambda * (1.0 + 1e-9) + eps) return;
        const double d = (y - sigma).squaredNorm();
        if (d < best_dist) {
            best_dist = d;
            best = y;
        }
    };

    for (Index p = 0; p < k; ++p) {
        const double s1 = prefix(p);
        const double b = static_cast<double>(k - p);
        for (Index q = k; q <= n; ++q) {
            const double s2 = prefix(q) - prefix(p);
            const double a = static_cast<double>(q - p);
            const double denom = b * b + static_cast<double>(p) * a;
            const double c = (b * (lambda - s1) + static_cast<double>(p) * s2) / denom;
            const double theta = (s2 - a * c) / b;
            if (theta < -eps || c < -eps) continue;
            if (p >= 1 && sigma(p - 1) - theta < c - eps) continue;
            if (q > p && (sigma(p) - c > theta + eps || sigma(q - 1) < c - eps)) continue;
            if (q < n && sigma(q) > c + eps) continue;
            Vector y = build(p, q, theta, c);
            consider(y);
            if (best_dist < std::numeric_limits<double>::infinity()) return best;
        }
    }

    // p = k: exactly the k largest are lowered, no tie block.
    {
        const double theta = (prefix(k) - lambda) / static_cast<double>(k);
        if (theta >= -eps && sigma(k - 1) - theta >= -eps &&
            (k == n || sigma(k - 1) - theta >= sigma(k) - eps)) {
            Vector y(n);
            for (Index i = 0; i < k; ++i) y(i) = std::max(sigma(i) - theta, 0.0);
            for (Index i = k; i < n; ++i) y(i) = sigma(i);
            std::sort(y.data(), y.data() + n, std::greater<double>());
            consider(y);
            if (best_dist < std::numeric_limits<double>::infinity()) return best;
        }
    }

    // Ties at zero: p entries lowered by theta, everything else clipped to 0.
    for (Index p = 1; p <= k; ++p) {
        const double theta = (prefix(p) - lambda) / static_cast<double>(p);
        if (theta < -eps) continue;
        if (sigma(p - 1) - theta < -eps) continue;
        if (p < n && sigma(p) > theta + eps) continue;
        if (prefix(n) - prefix(p) > static_cast<double>(k - p) * theta + eps * n) continue;
        Vector y = Vector::Zero(n);
        for (Index i = 0; i < p; ++i) y(i) = std::max(sigma(i) - theta, 0.0);
        consider(y);
        if (best_dist < std::numeric_limits<double>::infinity()) return best;
    }

    // Fallback: screen every candidate plus a safe radial shrink by distance.
    consider(sigma * (lambda / sigma.head(k).sum()));
    for (Index p = 0; p < k; ++p) {
        const double s1 = prefix(p);
        const double b = static_cast<double>(k - p);
        for (Index q = k; q <= n; ++q) {
            const double s2 = prefix(q) - prefix(p);
            const double a = static_cast<double>(q - p);
            const double denom = b * b + static_cast<double>(p) * a;
            const double c = (b * (lambda - s1) + static_cast<double>(p) * s2) / denom;
            const double theta = (s2 - a * c) / b;
            if (theta < -eps || c < -eps) continue;
            consider(build(p, q, theta, c));
        }
    }
    for (Index p = 1; p <= k; ++p) {
        const double theta = (prefix(p) - lambda) / static_cast<double>(p);
        if (theta < -eps) continue;
        Vector y = Vector::Zero(n);
        for (Index i = 0; i < p; ++i) y(i) = std::max(sigma(i) - theta, 0.0);
        consider(y);
    }
    return best;
}

ProjectionResult project_ky_fan_ball(const Matrix& m, Index k, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("project_ky_fan_ball: lambda must be > 0");
    const Index r = std::min(m.rows(), m.cols());
    if (k < 1 || k > r) {
        throw std::invalid_argument("project_ky_fan_ball: k must be in [1, " + std::to_string(r) +
                                    "], got " + std::to_string(k));
    }
    SvdFactors f = svd(m);
    if (f.sigma.head(k).sum() <= lambda * (1.0 + kActiveSlack)) return {m, false, true};
    Vector y = project_singular_values_ky_fan(f.sigma, k, lambda);
    return {recompose(f, y), true, true};
}

ProjectionResult project_rank(const Matrix& m, Index k) {
    const Index r = std::min(m.rows(), m.cols());
    if (k < 1 || k > r) {
        throw std::invalid_argument("project_rank: k must be in [1, " + std::to_string(r) +
                                    "], got " + std::to_string(k));
    }
    SvdFactors f = svd(m);
    if (numerical_rank(f.sigma) <= k) return {m, false, true};
    Matrix x = f.u.leftCols(k) * f.sigma.head(k).asDiagonal() * f.vt.topRows(k);
    return {x, true, true};
}

ProjectionResult project_orthonormal(const Matrix& m) {
    if (m.rows() < m.cols()) {
        throw std::invalid_argument("project_orthonormal: requires rows >= cols, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const Index n = m.cols();
    const double dev = (m.transpose() * m - Matrix::Identity(n, n)).norm();
    if (dev <= 1e-12 * std::max(1.0, m.squaredNorm())) return {m, false, true};
    SvdFactors f = svd(m);
    const bool full_column_rank = f.sigma(n - 1) > kRankCutoff * f.sigma(0);
    return {f.u * f.vt, true, full_column_rank};
}

ProjectionResult project(const Matrix& m, const Constraint& c) {
    c.check_applicable(m.rows(), m.cols());
    switch (c.kind) {
        case Constraint::Kind::FrobeniusBall: return project_frobenius_ball(m, c.lambda);
        case Constraint::Kind::SpectralBall: return project_spectral_ball(m, c.lambda);
        case Constraint::Kind::NuclearBall: return project_nuclear_ball(m, c.lambda);
        case Constraint::Kind::KyFanBall: return project_ky_fan_ball(m, c.k, c.lambda);
        case Constraint::Kind::RankAtMost: return project_rank(m, c.k);
        case Constraint::Kind::Orthonormal: return project_orthonormal(m);
    }
    throw std::invalid_argument("project: unknown constraint kind");
}

double constraint_measure(const Matrix& m, const Constraint& c) {
    switch (c.kind) {
        case Constraint::Kind::FrobeniusBall: return m.norm();
        case Constraint::Kind::SpectralBall: return spectral_norm(m);
        case Constraint::Kind::NuclearBall: return nuclear_norm(m);
        case Constraint::Kind::KyFanBall: return ky_fan_norm(m, c.k);
        case Constraint::Kind::RankAtMost: return static_cast<double>(numerical_rank(m));
        case Constraint::Kind::Orthonormal: {
            const Index n = m.cols();
            return (m.transpose() * m - Matrix::Identity(n, n)).norm();
        }
    }
    throw std::invalid_argument("constraint_measure: unknown constraint kind");
}

} // namespace matcomp
