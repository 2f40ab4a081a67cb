#ifndef MATCOMP_OBSERVATION_SET_HPP
#define MATCOMP_OBSERVATION_SET_HPP

#include "matcomp/matrix.hpp"

#include <cstdint>
#include <vector>

namespace matcomp {

/// The index set of observed entries of an m x n matrix, with O(1) membership.
/// Indices are 0-based.
class ObservationSet {
  public:
    ObservationSet(Index rows, Index cols); // starts empty
    static ObservationSet full(Index rows, Index cols);

    Index rows() const { return rows_; }
    Index cols() const { return cols_; }
    std::size_t count() const { return count_; }
    bool empty() const { return count_ == 0; }
    bool is_full() const { return count_ == static_cast<std::size_t>(rows_ * cols_); }
    double observed_fraction() const;

    bool contains(Index i, Index j) const { return mask_[flat(i, j)] != 0; }

    /// Returns false if (i, j) was already present. Throws on out-of-range indices.
    bool insert(Index i, Index j);
    /// Returns false if (i, j) was not present.
    bool erase(Index i, Index j);

    /// Observed index pairs in row-major order.
    std::vector<std::pair<Index, Index>> indices() const;

    bool operator==(const ObservationSet& other) const = default;

  private:
    std::size_t flat(Index i, Index j) const;

    Index rows_;
    Index cols_;
    std::vector<std::uint8_t> mask_; // row-major
    std::size_t count_ = 0;
};

/// P_Omega: keeps observed entries, zeroes the rest. Idempotent and linear.
Matrix apply_mask(const Matrix& x, const ObservationSet& omega);

} // namespace matcomp

#endif
