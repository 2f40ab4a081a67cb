#ifndef MATCOMP_MATRIX_HPP
#define MATCOMP_MATRIX_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace matcomp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline bool is_finite(const Matrix& x) { return x.allFinite(); }

/// Throws std::invalid_argument naming both shapes when a and b differ.
inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(what) + ": shape mismatch, " +
                                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                    " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()));
    }
}

} // namespace matcomp

#endif
