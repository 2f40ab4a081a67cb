#include "matcomp/svd.hpp"

#include <Eigen/SVD>

#include <stdexcept>

namespace matcomp {

SvdFactors svd(const Matrix& x) {
    if (!is_finite(x)) throw std::invalid_argument("svd: input has non-finite entries");
    Eigen::BDCSVD<Matrix> dec(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) throw std::runtime_error("svd: decomposition did not converge");
    return SvdFactors{dec.matrixU(), dec.singularValues(), dec.matrixV().transpose()};
}

Vector singular_values(const Matrix& x) {
    if (!is_finite(x)) throw std::invalid_argument("singular_values: input has non-finite entries");
    Eigen::BDCSVD<Matrix> dec(x);
    if (dec.info() != Eigen::Success)
        throw std::runtime_error("singular_values: decomposition did not converge");
    return dec.singularValues();
}

Index numerical_rank(const Vector& sigma) {
    if (sigma.size() == 0) return 0;
    const double cutoff = kRankCutoff * sigma(0);
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff) ++r;
    return sigma(0) == 0.0 ? 0 : r;
}

Index numerical_rank(const Matrix& x) { return numerical_rank(singular_values(x)); }

} // namespace matcomp
