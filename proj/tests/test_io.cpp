#include <doctest.h>

#include "matcomp/io.hpp"
#include "matcomp/svd.hpp"
#include "support/random.hpp"

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace matcomp;
namespace mt = matcomp::testing;

namespace {

std::string scratch(const std::string& name) {
    static const std::filesystem::path dir = [] {
        auto d = std::filesystem::temp_directory_path() /
                 ("matcomp_io_" + std::to_string(::getpid()));
        std::filesystem::create_directories(d);
        return d;
    }();
    return (dir / name).string();
}

void put_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// what() of the exception f throws, or "" when it doesn't.
template <class F>
std::string error_message(F&& f) {
    try {
        f();
    } catch (const std::exception& e) {
        return e.what();
    }
    return {};
}

bool mentions(const std::string& msg, const std::string& needle) {
    return msg.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("matrix csv round trips exactly") {
    mt::Rng rng(1);
    Matrix m = mt::random_matrix(rng, 4, 5, 3.0);
    m(0, 0) = 1e-300;
    m(1, 1) = -12345.678901234567;
    m(2, 2) = 3.0;
    const std::string path = scratch("dense.csv");
    write_matrix_csv(path, m);
    const MaskedMatrixFile back = read_matrix_csv(path);
    CHECK(back.omega.is_full());
    CHECK((back.matrix.array() == m.array()).all()); // 17 significant digits: lossless
}

TEST_CASE("empty fields and nan tokens mark holes") {
    const std::string path = scratch("holes.csv");
    put_file(path, "1,2\n2,\n");
    const MaskedMatrixFile f = read_matrix_csv(path);
    CHECK(f.matrix.rows() == 2);
    CHECK(f.matrix.cols() == 2);
    CHECK(f.omega.count() == 3);
    CHECK_FALSE(f.omega.contains(1, 1));
    CHECK(f.matrix(1, 1) == 0.0); // holes hold zero after load
    CHECK(f.matrix(1, 0) == 2.0);

    put_file(path, "NaN, 5\n0.5, nan\n");
    const MaskedMatrixFile g = read_matrix_csv(path);
    CHECK(g.omega.count() == 2);
    CHECK(g.omega.contains(0, 1));
    CHECK(g.omega.contains(1, 0));
    CHECK(g.matrix(0, 0) == 0.0);
}

TEST_CASE("masked csv writes empty fields at the holes") {
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    ObservationSet omega = ObservationSet::full(2, 2);
    omega.erase(0, 1);
    const std::string path = scratch("masked.csv");
    write_masked_matrix_csv(path, m, omega);
    CHECK(slurp(path) == "1,\n3,4\n");
    const MaskedMatrixFile back = read_matrix_csv(path);
    CHECK(back.omega == omega);
    CHECK((back.matrix - apply_mask(m, omega)).norm() == 0.0);

    CHECK_THROWS_AS(write_masked_matrix_csv(path, Matrix::Zero(3, 3), omega),
                    std::invalid_argument);
}

TEST_CASE("csv shape and syntax problems name the position") {
    const std::string path = scratch("bad.csv");
    put_file(path, "1,2\n3\n");
    CHECK(mentions(error_message([&] { read_matrix_csv(path); }), "line 2"));

    put_file(path, "1,abc\n");
    const std::string msg = error_message([&] { read_matrix_csv(path); });
    CHECK(mentions(msg, "row 1"));
    CHECK(mentions(msg, "column 2"));
    CHECK(mentions(msg, "abc"));

    put_file(path, "1,inf\n");
    CHECK(mentions(error_message([&] { read_matrix_csv(path); }), "non-finite"));

    put_file(path, "");
    CHECK(mentions(error_message([&] { read_matrix_csv(path); }), "empty"));

    CHECK(mentions(error_message([&] { read_matrix_csv(scratch("missing.csv")); }),
                   "cannot open"));
}

TEST_CASE("mask csv round trips and validates") {
    ObservationSet omega(3, 4);
    omega.insert(0, 0);
    omega.insert(2, 3);
    omega.insert(1, 1);
    const std::string path = scratch("mask.csv");
    write_mask_csv(path, omega);
    CHECK(slurp(path) == "0,0\n1,1\n2,3\n"); // row-major
    CHECK(read_mask_csv(path, 3, 4) == omega);

    put_file(path, "");
    CHECK(read_mask_csv(path, 3, 4).empty());

    put_file(path, "0,0\n0,0\n");
    CHECK(mentions(error_message([&] { read_mask_csv(path, 3, 4); }), "line 2"));

    put_file(path, "5,0\n");
    CHECK(mentions(error_message([&] { read_mask_csv(path, 2, 2); }), "outside"));

    put_file(path, "3\n");
    CHECK(mentions(error_message([&] { read_mask_csv(path, 4, 4); }), "expected"));

    put_file(path, "0, 1\n");
    CHECK(read_mask_csv(path, 2, 2).contains(0, 1)); // spaces tolerated
}

TEST_CASE("a holey matrix file equals a dense file plus its mask file") {
    mt::Rng rng(2);
    const Matrix m = mt::random_matrix(rng, 4, 4, 2.0);
    const ObservationSet omega = mt::random_mask(rng, 4, 4, 0.6);

    const std::string holey = scratch("compose_holey.csv");
    const std::string dense = scratch("compose_dense.csv");
    const std::string maskf = scratch("compose_mask.csv");
    write_masked_matrix_csv(holey, m, omega);
    write_matrix_csv(dense, m);
    write_mask_csv(maskf, omega);

    const MaskedMatrixFile a = read_matrix_csv(holey);
    const MaskedMatrixFile b = read_matrix_csv(dense);
    const ObservationSet mask = read_mask_csv(maskf, 4, 4);
    CHECK(a.omega == mask);
    CHECK((a.matrix - apply_mask(b.matrix, mask)).norm() == 0.0);
}

TEST_CASE("pgm reading handles both encodings") {
    const std::string path = scratch("img.pgm");
    put_file(path, "P2\n2 2\n255\n0 255 128 64\n");
    const Matrix m = read_pgm(path);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(m(0, 0) == 0.0);
    CHECK(m(0, 1) == 255.0);
    CHECK(m(1, 0) == 128.0);
    CHECK(m(1, 1) == 64.0);

    put_file(path, "P2\n# a comment\n2 1\n# another\n9\n3 7\n");
    const Matrix c = read_pgm(path);
    CHECK(c(0, 0) == 3.0);
    CHECK(c(0, 1) == 7.0);

    put_file(path, std::string("P5\n2 2\n255\n") + '\x01' + '\x02' + '\xff' + '\x00');
    const Matrix b = read_pgm(path);
    CHECK(b(0, 0) == 1.0);
    CHECK(b(0, 1) == 2.0);
    CHECK(b(1, 0) == 255.0);
    CHECK(b(1, 1) == 0.0);
}

TEST_CASE("pgm writing is canonical and round trips") {
    mt::Rng rng(3);
    Matrix img(3, 5);
    for (Index i = 0; i < img.rows(); ++i)
        for (Index j = 0; j < img.cols(); ++j)
            img(i, j) = static_cast<double>((i * 40 + j * 13) % 256);
    const std::string path = scratch("round.pgm");
    write_pgm(path, img, false);
    CHECK(slurp(path).substr(0, 11) == "P5\n5 3\n255\n");
    const Matrix back = read_pgm(path);
    CHECK((back - img).norm() == 0.0);
    const std::string again = scratch("round2.pgm");
    write_pgm(again, back, false);
    CHECK(slurp(path) == slurp(again)); // byte-for-byte

    Matrix wild(1, 2);
    wild << -5.0, 300.0;
    CHECK_THROWS_AS(write_pgm(path, wild, false), std::runtime_error);
    write_pgm(path, wild, true);
    const Matrix clamped = read_pgm(path);
    CHECK(clamped(0, 0) == 0.0);
    CHECK(clamped(0, 1) == 255.0);

    Matrix frac(1, 2);
    frac << 126.6, 127.4;
    write_pgm(path, frac, false);
    const Matrix rounded = read_pgm(path);
    CHECK(rounded(0, 0) == 127.0);
    CHECK(rounded(0, 1) == 127.0);
}

TEST_CASE("pgm depth and shape problems are rejected") {
    const std::string path = scratch("badimg.pgm");
    put_file(path, "P2\n1 1\n65535\n1000\n");
    CHECK(mentions(error_message([&] { read_pgm(path); }), "depth"));

    put_file(path, "P6\n1 1\n255\nx");
    CHECK(mentions(error_message([&] { read_pgm(path); }), "not a P2/P5"));

    put_file(path, "P5\n4 4\n255\n..");
    CHECK(mentions(error_message([&] { read_pgm(path); }), "truncated"));

    put_file(path, "P2\n1 1\n9\n11\n");
    CHECK(mentions(error_message([&] { read_pgm(path); }), "exceeds"));

    put_file(path, "P2\n0 2\n255\n");
    CHECK(mentions(error_message([&] { read_pgm(path); }), "dimensions"));
}

TEST_CASE("pgm detection looks at the magic number") {
    const std::string img = scratch("detect.pgm");
    put_file(img, "P5\n1 1\n255\nx");
    CHECK(looks_like_pgm(img));
    const std::string csv = scratch("detect.csv");
    put_file(csv, "1,2\n");
    CHECK_FALSE(looks_like_pgm(csv));
    CHECK_FALSE(looks_like_pgm(scratch("not_there.pgm")));
}

TEST_CASE("square corruption is seeded and hits its target") {
    mt::Rng rng(4);
    const Matrix m = mt::random_matrix(rng, 20, 20);
    const ObservationSet a = corrupt_squares(m, 3, 0.3, 99);
    const ObservationSet b = corrupt_squares(m, 3, 0.3, 99);
    CHECK(a == b);
    const ObservationSet c = corrupt_squares(m, 3, 0.3, 100);
    CHECK_FALSE(a == c);

    const double unobs = 1.0 - a.observed_fraction();
    CHECK(unobs >= 0.3);
    CHECK(unobs <= 0.3 + 9.0 / 400.0 + 1e-12); // one block of overshoot at most

    const ObservationSet ones = corrupt_squares(m, 1, 0.25, 5);
    const double u1 = 1.0 - ones.observed_fraction();
    CHECK(u1 >= 0.25);
    CHECK(u1 <= 0.25 + 1.0 / 400.0 + 1e-12);

    CHECK_THROWS_AS(corrupt_squares(m, 0, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(corrupt_squares(m, 21, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(corrupt_squares(Matrix::Zero(3, 10), 5, 0.3, 1), std::invalid_argument);
    CHECK_THROWS_AS(corrupt_squares(m, 3, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(corrupt_squares(m, 3, 1.0, 1), std::invalid_argument);
}

TEST_CASE("spectrum export lists singular values largest first") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 2;
    const std::string path = scratch("spec.csv");
    write_spectrum_csv(path, d);
    CHECK(slurp(path) == "0,3\n1,2\n");

    write_spectrum_csv(path, Matrix::Zero(2, 2));
    CHECK(slurp(path) == "0,0\n1,0\n");

    mt::Rng rng(5);
    const Vector s = mt::random_descending(rng, 3, 5.0);
    const Matrix m = mt::matrix_with_singular_values(rng, 4, 3, s);
    write_spectrum_csv(path, m);
    std::istringstream in(slurp(path));
    std::string line;
    Index i = 0;
    while (std::getline(in, line)) {
        const auto comma = line.find(',');
        CHECK(std::stol(line.substr(0, comma)) == i);
        CHECK(std::stod(line.substr(comma + 1)) == doctest::Approx(s(i)).epsilon(1e-8));
        ++i;
    }
    CHECK(i == 3);
}
