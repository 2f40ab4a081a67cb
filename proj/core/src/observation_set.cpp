#include "matcomp/observation_set.hpp"

#include <stdexcept>
#include <string>

namespace matcomp {

ObservationSet::ObservationSet(Index rows, Index cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("ObservationSet: dimensions must be positive, got " +
                                    std::to_string(rows) + "x" + std::to_string(cols));
    }
    mask_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

ObservationSet ObservationSet::full(Index rows, Index cols) {
    ObservationSet s(rows, cols);
    s.mask_.assign(s.mask_.size(), 1);
    s.count_ = s.mask_.size();
    return s;
}

double ObservationSet::observed_fraction() const {
    return static_cast<double>(count_) / static_cast<double>(mask_.size());
}

std::size_t ObservationSet::flat(Index i, Index j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
        throw std::out_of_range("ObservationSet: index (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") outside " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
    }
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) +
           static_cast<std::size_t>(j);
}

bool ObservationSet::insert(Index i, Index j) {
    auto p = flat(i, j);
    if (mask_[p]) return false;
    mask_[p] = 1;
    ++count_;
    return true;
}

bool ObservationSet::erase(Index i, Index j) {
    auto p = flat(i, j);
    if (!mask_[p]) return false;
    mask_[p] = 0;
    --count_;
    return true;
}

std::vector<std::pair<Index, Index>> ObservationSet::indices() const {
    std::vector<std::pair<Index, Index>> out;
    out.reserve(count_);
    for (Index i = 0; i < rows_; ++i)
        for (Index j = 0; j < cols_; ++j)
            if (mask_[static_cast<std::size_t>(i) * cols_ + j]) out.emplace_back(i, j);
    return out;
}

Matrix apply_mask(const Matrix& x, const ObservationSet& omega) {
    if (x.rows() != omega.rows() || x.cols() != omega.cols()) {
        throw std::invalid_argument(
            "apply_mask: matrix is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
            " but observation set is " + std::to_string(omega.rows()) + "x" +
            std::to_string(omega.cols()));
    }
    Matrix out = Matrix::Zero(x.rows(), x.cols());
    for (Index i = 0; i < x.rows(); ++i)
        for (Index j = 0; j < x.cols(); ++j)
            if (omega.contains(i, j)) out(i, j) = x(i, j);
    return out;
}

} // namespace matcomp
