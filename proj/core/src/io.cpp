#include "matcomp/io.hpp"

#include "matcomp/svd.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace matcomp {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw std::runtime_error("failed reading " + path);
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

void finish_out(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = end + 1;
    }
    return lines;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

bool is_nan_token(std::string_view s) {
    if (s.size() != 3) return false;
    auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
    return lower(s[0]) == 'n' && lower(s[1]) == 'a' && lower(s[2]) == 'n';
}

double parse_double(std::string_view s, const std::string& where) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error(where + ": cannot parse '" + std::string(s) + "' as a number");
    }
    return v;
}

long parse_index(std::string_view s, const std::string& where) {
    long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw std::runtime_error(where + ": cannot parse '" + std::string(s) + "' as an index");
    }
    return v;
}

} // namespace

MaskedMatrixFile read_matrix_csv(const std::string& path) {
    const auto lines = split_lines(read_file(path));
    if (lines.empty()) throw std::runtime_error(path + ": empty matrix file");
    const Index rows = static_cast<Index>(lines.size());

    std::vector<std::vector<std::string_view>> fields(lines.size());
    for (std::size_t r = 0; r < lines.size(); ++r) {
        std::string_view line = lines[r];
        std::size_t start = 0;
        while (true) {
            std::size_t end = line.find(',', start);
            fields[r].push_back(trim(line.substr(start, end - start)));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
        if (fields[r].size() != fields[0].size()) {
            throw std::runtime_error(path + ": ragged row at line " + std::to_string(r + 1) +
                                     " (expected " + std::to_string(fields[0].size()) +
                                     " fields, got " + std::to_string(fields[r].size()) + ")");
        }
    }
    const Index cols = static_cast<Index>(fields[0].size());

    MaskedMatrixFile out{Matrix::Zero(rows, cols), ObservationSet(rows, cols)};
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            std::string_view f = fields[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (f.empty() || is_nan_token(f)) continue;
            const std::string where =
                path + ": row " + std::to_string(i + 1) + ", column " + std::to_string(j + 1);
            const double v = parse_double(f, where);
            if (!std::isfinite(v)) throw std::runtime_error(where + ": non-finite value");
            out.matrix(i, j) = v;
            out.omega.insert(i, j);
        }
    }
    return out;
}

void write_matrix_csv(const std::string& path, const Matrix& m) {
    auto out = open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
    finish_out(out, path);
}

void write_masked_matrix_csv(const std::string& path, const Matrix& m,
                             const ObservationSet& omega) {
    if (m.rows() != omega.rows() || m.cols() != omega.cols()) {
        throw std::invalid_argument("write_masked_matrix_csv: matrix and mask shapes differ");
    }
    auto out = open_out(path);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            if (omega.contains(i, j)) out << format_double(m(i, j));
        }
        out << '\n';
    }
    finish_out(out, path);
}

ObservationSet read_mask_csv(const std::string& path, Index rows, Index cols) {
    const auto lines = split_lines(read_file(path));
    ObservationSet omega(rows, cols);
    for (std::size_t n = 0; n < lines.size(); ++n) {
        const std::string where = path + ": line " + std::to_string(n + 1);
        std::string_view line = lines[n];
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos) {
            throw std::runtime_error(where + ": expected 'i,j'");
        }
        const long i = parse_index(trim(line.substr(0, comma)), where);
        const long j = parse_index(trim(line.substr(comma + 1)), where);
        if (i < 0 || i >= rows || j < 0 || j >= cols) {
            throw std::runtime_error(where + ": index (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ") outside " + std::to_string(rows) +
                                     "x" + std::to_string(cols));
        }
        if (!omega.insert(i, j)) {
            throw std::runtime_error(where + ": duplicate index (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ")");
        }
    }
    return omega;
}

void write_mask_csv(const std::string& path, const ObservationSet& omega) {
    auto out = open_out(path);
    for (const auto& [i, j] : omega.indices()) out << i << ',' << j << '\n';
    finish_out(out, path);
}

namespace {

struct PgmTokenizer {
    const std::string& data;
    std::size_t pos = 0;

    // Skips whitespace and '#' comments.
    void skip() {
        while (pos < data.size()) {
            const char c = data[pos];
            if (c == '#') {
                while (pos < data.size() && data[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const std::string& path) {
        skip();
        std::size_t start = pos;
        while (pos < data.size() && std::isdigit(static_cast<unsigned char>(data[pos]))) ++pos;
        if (pos == start) throw std::runtime_error(path + ": truncated or malformed PGM header");
        return std::stol(data.substr(start, pos - start));
    }
};

} // namespace

bool looks_like_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    char magic[2] = {0, 0};
    in.read(magic, 2);
    return in.gcount() == 2 && magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5');
}

Matrix read_pgm(const std::string& path) {
    const std::string data = read_file(path);
    if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
        throw std::runtime_error(path + ": not a P2/P5 PGM file");
    }
    const bool binary = data[1] == '5';
    PgmTokenizer tok{data, 2};
    const long width = tok.next_int(path);
    const long height = tok.next_int(path);
    const long maxval = tok.next_int(path);
    if (width < 1 || height < 1) throw std::runtime_error(path + ": invalid PGM dimensions");
    if (maxval < 1 || maxval > 255) {
        throw std::runtime_error(path + ": unsupported PGM depth (maxval " +
                                 std::to_string(maxval) + ", only <= 255 supported)");
    }

    Matrix m(height, width);
    if (binary) {
        // Exactly one whitespace byte separates the header from the payload.
        std::size_t start = tok.pos + 1;
        const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
        if (start + need > data.size()) throw std::runtime_error(path + ": truncated PGM payload");
        for (long i = 0; i < height; ++i)
            for (long j = 0; j < width; ++j)
                m(i, j) = static_cast<double>(
                    static_cast<unsigned char>(data[start + static_cast<std::size_t>(i) * width + j]));
    } else {
        for (long i = 0; i < height; ++i) {
            for (long j = 0; j < width; ++j) {
                const long v = tok.next_int(path);
                if (v > maxval) {
                    throw std::runtime_error(path + ": pixel value " + std::to_string(v) +
                                             " exceeds maxval " + std::to_string(maxval));
                }
                m(i, j) = static_cast<double>(v);
            }
        }
    }
    return m;
}

void write_pgm(const std::string& path, const Matrix& m, bool clamp) {
    auto out = open_out(path);
    out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            long v = std::lround(m(i, j));
            if (v < 0 || v > 255) {
                if (!clamp) {
                    throw std::runtime_error(path + ": entry (" + std::to_string(i) + ", " +
                                             std::to_string(j) + ") = " +
                                             format_double(m(i, j)) + " outside [0, 255]");
                }
                v = std::clamp(v, 0L, 255L);
            }
            out.put(static_cast<char>(static_cast<unsigned char>(v)));
        }
    }
    finish_out(out, path);
}

ObservationSet corrupt_squares(const Matrix& m, Index square, double fraction,
                               std::uint64_t seed) {
    const Index rows = m.rows();
    const Index cols = m.cols();
    if (square < 1 || square > rows || square > cols) {
        throw std::invalid_argument("corrupt_squares: square size " + std::to_string(square) +
                                    " does not fit a " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " matrix");
    }
    if (!(fraction > 0.0 && fraction < 1.0)) {
        throw std::invalid_argument("corrupt_squares: fraction must be in (0, 1)");
    }

    ObservationSet omega = ObservationSet::full(rows, cols);
    const auto total = static_cast<double>(rows) * static_cast<double>(cols);
    std::mt19937_64 rng(seed);
    const auto row_range = static_cast<std::uint64_t>(rows - square + 1);
    const auto col_range = static_cast<std::uint64_t>(cols - square + 1);

    std::size_t attempts = 0;
    const std::size_t max_attempts = 1000 + 100 * static_cast<std::size_t>(total);
    while (static_cast<double>(rows * cols - static_cast<Index>(omega.count())) < fraction * total) {
        if (++attempts > max_attempts) {
            throw std::runtime_error("corrupt_squares: target fraction not reached");
        }
        const Index r = static_cast<Index>(rng() % row_range);
        const Index c = static_cast<Index>(rng() % col_range);
        for (Index i = r; i < r + square; ++i)
            for (Index j = c; j < c + square; ++j) omega.erase(i, j);
    }
    return omega;
}

void write_spectrum_csv(const std::string& path, const Matrix& m) {
    const Vector s = singular_values(m);
    auto out = open_out(path);
    for (Index i = 0; i < s.size(); ++i) out << i << ',' << format_double(s(i)) << '\n';
    finish_out(out, path);
}

} // namespace matcomp
