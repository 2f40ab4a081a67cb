#ifndef MATCOMP_IO_HPP
#define MATCOMP_IO_HPP

#include "matcomp/matrix.hpp"
#include "matcomp/observation_set.hpp"

#include <cstdint>
#include <string>

namespace matcomp {

/// A matrix together with the set of entries that were actually present in
/// the file; unobserved positions hold zero.
struct MaskedMatrixFile {
    Matrix matrix;
    ObservationSet omega;
};

/// Comma-separated values, one row per line. Empty fields and the token
/// "nan" (any case) are unobserved. Rejects ragged rows, naming the line.
MaskedMatrixFile read_matrix_csv(const std::string& path);

/// Writes with 17 significant digits so finite values round-trip exactly.
void write_matrix_csv(const std::string& path, const Matrix& m);

/// As write_matrix_csv but leaves unobserved positions empty.
void write_masked_matrix_csv(const std::string& path, const Matrix& m, const ObservationSet& omega);

/// Lines of "i,j" (0-based). Duplicates and out-of-range pairs are rejected
/// with the offending line number. An empty file is an empty set.
ObservationSet read_mask_csv(const std::string& path, Index rows, Index cols);
void write_mask_csv(const std::string& path, const ObservationSet& omega);

/// PGM (P2 ASCII or P5 binary), maxval <= 255. Pixel (i, j) becomes entry
/// (i, j) in [0, 255].
Matrix read_pgm(const std::string& path);

/// Writes binary P5 with maxval 255. Entries are rounded; out-of-range
/// values are clamped to [0, 255] when clamp is true and rejected otherwise.
void write_pgm(const std::string& path, const Matrix& m, bool clamp = true);

bool looks_like_pgm(const std::string& path);

/// Removes square x square blocks at seeded-uniform-random positions
/// (mt19937_64; top-left row then column, each drawn modulo the valid
/// range) until at least `fraction` of the entries are unobserved, and
/// returns the surviving observation set. Overlapping blocks are allowed.
ObservationSet corrupt_squares(const Matrix& m, Index square, double fraction,
                               std::uint64_t seed);

/// One "index,value" line per singular value, largest first.
void write_spectrum_csv(const std::string& path, const Matrix& m);

} // namespace matcomp

#endif
