#include <doctest.h>

#include "matcomp/constraint.hpp"
#include "matcomp/matrix.hpp"
#include "matcomp/norms.hpp"
#include "matcomp/observation_set.hpp"
#include "matcomp/svd.hpp"
#include "support/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace matcomp;
namespace mt = matcomp::testing;

TEST_CASE("finiteness and shape helpers") {
    Matrix a = Matrix::Zero(2, 3);
    CHECK(is_finite(a));
    a(1, 2) = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(is_finite(a));
    a(1, 2) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(is_finite(a));

    const Matrix b = Matrix::Zero(3, 2);
    CHECK_NOTHROW(require_same_shape(Matrix::Zero(3, 2), b, "t"));
    CHECK_THROWS_WITH_AS(require_same_shape(Matrix::Zero(2, 3), b, "t"),
                         "t: shape mismatch, 2x3 vs 3x2", std::invalid_argument);
}

TEST_CASE("observation sets track membership") {
    CHECK_THROWS_AS(ObservationSet(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(ObservationSet(3, -1), std::invalid_argument);

    ObservationSet omega(2, 3);
    CHECK(omega.empty());
    CHECK(omega.count() == 0);
    CHECK(omega.rows() == 2);
    CHECK(omega.cols() == 3);

    CHECK(omega.insert(0, 1));
    CHECK_FALSE(omega.insert(0, 1)); // already present
    CHECK(omega.insert(1, 2));
    CHECK(omega.count() == 2);
    CHECK(omega.contains(0, 1));
    CHECK_FALSE(omega.contains(0, 0));
    CHECK(omega.observed_fraction() == doctest::Approx(2.0 / 6.0));

    CHECK(omega.erase(0, 1));
    CHECK_FALSE(omega.erase(0, 1));
    CHECK(omega.count() == 1);

    CHECK_THROWS_AS(omega.insert(2, 0), std::out_of_range);
    CHECK_THROWS_AS(omega.insert(0, 3), std::out_of_range);
    CHECK_THROWS_AS(omega.insert(-1, 0), std::out_of_range);

    const ObservationSet full = ObservationSet::full(2, 3);
    CHECK(full.is_full());
    CHECK(full.observed_fraction() == 1.0);
    CHECK(full.count() == 6);
}

TEST_CASE("observation set indices stream in row-major order") {
    ObservationSet omega(2, 2);
    omega.insert(1, 0);
    omega.insert(0, 1);
    omega.insert(1, 1);
    const auto idx = omega.indices();
    REQUIRE(idx.size() == 3);
    CHECK(idx[0] == std::pair<Index, Index>{0, 1});
    CHECK(idx[1] == std::pair<Index, Index>{1, 0});
    CHECK(idx[2] == std::pair<Index, Index>{1, 1});
}

TEST_CASE("masking keeps observed entries and zeroes the rest") {
    Matrix m(2, 2);
    m << 1, 2, 3, 4;
    ObservationSet omega(2, 2);
    omega.insert(0, 0);
    omega.insert(1, 1);
    const Matrix p = apply_mask(m, omega);
    CHECK(p(0, 0) == 1);
    CHECK(p(0, 1) == 0);
    CHECK(p(1, 0) == 0);
    CHECK(p(1, 1) == 4);

    CHECK_THROWS_AS(apply_mask(Matrix::Zero(3, 2), omega), std::invalid_argument);

    mt::Rng rng(41);
    for (int t = 0; t < 20; ++t) {
        const Matrix x = mt::random_matrix(rng, 4, 5);
        const Matrix y = mt::random_matrix(rng, 4, 5);
        const ObservationSet w = mt::random_mask(rng, 4, 5, 0.4);
        // linearity and idempotence
        CHECK((apply_mask(2.5 * x - y, w) - (2.5 * apply_mask(x, w) - apply_mask(y, w)))
                  .norm() == doctest::Approx(0.0));
        CHECK((apply_mask(apply_mask(x, w), w) - apply_mask(x, w)).norm() == 0.0);
    }
}

TEST_CASE("thin svd reconstructs and orders the spectrum") {
    mt::Rng rng(7);
    const Matrix x = mt::random_matrix(rng, 5, 3);
    const SvdFactors f = svd(x);
    CHECK(f.u.rows() == 5);
    CHECK(f.u.cols() == 3);
    CHECK(f.sigma.size() == 3);
    CHECK(f.vt.rows() == 3);
    CHECK(f.vt.cols() == 3);
    CHECK((f.reconstruct() - x).norm() <= 1e-10 * std::max(1.0, x.norm()));
    CHECK((f.u.transpose() * f.u - Matrix::Identity(3, 3)).norm() <= 1e-12);
    CHECK((f.vt * f.vt.transpose() - Matrix::Identity(3, 3)).norm() <= 1e-12);
    for (Index i = 0; i + 1 < f.sigma.size(); ++i) CHECK(f.sigma(i) >= f.sigma(i + 1));
    CHECK(f.sigma(f.sigma.size() - 1) >= 0.0);

    CHECK((singular_values(x) - f.sigma).norm() <= 1e-14);

    Matrix bad = x;
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(svd(bad), std::invalid_argument);
}

TEST_CASE("numerical rank counts significant singular values") {
    mt::Rng rng(11);
    const Matrix low = mt::random_rank_k(rng, 6, 5, 2);
    CHECK(numerical_rank(low) == 2);
    const Matrix zero = Matrix::Zero(4, 4);
    CHECK(numerical_rank(zero) == 0);
    Vector s(3);
    s << 1.0, 0.5, 1e-15;
    CHECK(numerical_rank(s) == 2);
}

TEST_CASE("norm values on a diagonal example") {
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = 4;
    CHECK(frobenius_norm(d) == doctest::Approx(5.0));
    CHECK(spectral_norm(d) == doctest::Approx(4.0));
    CHECK(nuclear_norm(d) == doctest::Approx(7.0));
    CHECK(ky_fan_norm(d, 1) == doctest::Approx(4.0));
    CHECK(ky_fan_norm(d, 2) == doctest::Approx(7.0));

    CHECK(norm(d, NormKind::frobenius()) == doctest::Approx(5.0));
    CHECK(norm(d, NormKind::spectral()) == doctest::Approx(4.0));
    CHECK(norm(d, NormKind::nuclear()) == doctest::Approx(7.0));
    CHECK(norm(d, NormKind::ky_fan(2)) == doctest::Approx(7.0));

    CHECK_THROWS_AS(ky_fan_norm(d, 0), std::invalid_argument);
    CHECK_THROWS_AS(ky_fan_norm(d, 3), std::invalid_argument);
    CHECK_THROWS_AS(NormKind::ky_fan(0), std::invalid_argument);

    CHECK(NormKind::nuclear().name() == "nuclear");
    CHECK(NormKind::ky_fan(2).name() == "kyfan(2)");
}

TEST_CASE("norm orderings hold on random matrices") {
    mt::Rng rng(101);
    for (int t = 0; t < 100; ++t) {
        const Matrix x = mt::random_matrix(rng, 4, 4, 2.0);
        const double sp = spectral_norm(x);
        const double fr = frobenius_norm(x);
        const double nu = nuclear_norm(x);
        const double slack = 1e-12 * std::max(1.0, nu);
        CHECK(sp <= fr + slack);
        CHECK(fr <= nu + slack);
        double prev = 0.0;
        for (Index k = 1; k <= 4; ++k) {
            const double kf = ky_fan_norm(x, k);
            CHECK(kf >= prev - slack); // nondecreasing in k
            prev = kf;
        }
        CHECK(ky_fan_norm(x, 1) == doctest::Approx(sp));
        CHECK(ky_fan_norm(x, 4) == doctest::Approx(nu));
    }
}

TEST_CASE("constraints validate their parameters") {
    CHECK_THROWS_AS(Constraint::frobenius_ball(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Constraint::spectral_ball(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Constraint::nuclear_ball(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Constraint::ky_fan_ball(0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Constraint::ky_fan_ball(2, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Constraint::rank_at_most(0), std::invalid_argument);

    CHECK(Constraint::ball(NormKind::nuclear(), 2.0) == Constraint::nuclear_ball(2.0));
    CHECK(Constraint::ball(NormKind::spectral(), 1.5) == Constraint::spectral_ball(1.5));
    CHECK(Constraint::ball(NormKind::ky_fan(3), 2.0) == Constraint::ky_fan_ball(3, 2.0));
    CHECK(Constraint::ball(NormKind::frobenius(), 1.0) == Constraint::frobenius_ball(1.0));
}

TEST_CASE("constraint applicability depends on the matrix shape") {
    CHECK_NOTHROW(Constraint::ky_fan_ball(3, 1.0).check_applicable(3, 5));
    CHECK_THROWS_AS(Constraint::ky_fan_ball(4, 1.0).check_applicable(3, 5),
                    std::invalid_argument);
    CHECK_NOTHROW(Constraint::rank_at_most(2).check_applicable(2, 4));
    CHECK_THROWS_AS(Constraint::rank_at_most(3).check_applicable(2, 4), std::invalid_argument);
    CHECK_NOTHROW(Constraint::orthonormal().check_applicable(4, 4));
    CHECK_NOTHROW(Constraint::orthonormal().check_applicable(5, 3));
    CHECK_THROWS_AS(Constraint::orthonormal().check_applicable(3, 5), std::invalid_argument);
    CHECK_NOTHROW(Constraint::frobenius_ball(1.0).check_applicable(1, 100));
}

TEST_CASE("convexity flags") {
    CHECK(Constraint::frobenius_ball(1).is_convex());
    CHECK(Constraint::spectral_ball(1).is_convex());
    CHECK(Constraint::nuclear_ball(1).is_convex());
    CHECK(Constraint::ky_fan_ball(2, 1).is_convex());
    CHECK_FALSE(Constraint::rank_at_most(1).is_convex());
    CHECK_FALSE(Constraint::orthonormal().is_convex());
}

TEST_CASE("constraint descriptions name the set") {
    CHECK(Constraint::rank_at_most(3).describe() == "rank_at_most(3)");
    CHECK(Constraint::orthonormal().describe() == "orthonormal");
    CHECK(Constraint::ky_fan_ball(2, 1.0).describe().find("ky_fan_ball(2") == 0);
}
