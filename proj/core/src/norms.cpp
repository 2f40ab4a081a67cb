#include "matcomp/norms.hpp"

#include "matcomp/svd.hpp"

#include <stdexcept>

namespace matcomp {

NormKind NormKind::ky_fan(Index k) {
    if (k < 1) throw std::invalid_argument("NormKind::ky_fan: k must be >= 1, got " + std::to_string(k));
    return {NormType::KyFan, k};
}

std::string NormKind::name() const {
    switch (type) {
        case NormType::Frobenius: return "frobenius";
        case NormType::Spectral: return "spectral";
        case NormType::Nuclear: return "nuclear";
        case NormType::KyFan: return "kyfan(" + std::to_string(k) + ")";
    }
    return "?";
}

double frobenius_norm(const Matrix& x) { return x.norm(); }

double spectral_norm(const Matrix& x) {
    Vector s = singular_values(x);
    return s.size() ? s(0) : 0.0;
}

double nuclear_norm(const Matrix& x) { return singular_values(x).sum(); }

double ky_fan_norm(const Matrix& x, Index k) {
    const Index r = std::min(x.rows(), x.cols());
    if (k < 1 || k > r) {
        throw std::invalid_argument("ky_fan_norm: k must be in [1, " + std::to_string(r) +
                                    "], got " + std::to_string(k));
    }
    return singular_values(x).head(k).sum();
}

double norm(const Matrix& x, NormKind kind) {
    switch (kind.type) {
        case NormType::Frobenius: return frobenius_norm(x);
        case NormType::Spectral: return spectral_norm(x);
        case NormType::Nuclear: return nuclear_norm(x);
        case NormType::KyFan: return ky_fan_norm(x, kind.k);
    }
    throw std::invalid_argument("norm: unknown norm kind");
}

} // namespace matcomp
