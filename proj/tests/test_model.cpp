#include "chiral/errors.hpp"
#include "chiral/model.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace chiral;

constexpr double kPi = std::numbers::pi;

TEST_CASE("probe condition") {
    CHECK(validate_probe_condition(DriveConfig(0.1, 0.1, 10.0, 0.0, 0.0)));
    CHECK_FALSE(validate_probe_condition(DriveConfig(0.1, 0.2, 10.0, 0.0, 0.0)));
    CHECK(validate_probe_condition(DriveConfig(0.1, 0.1, 10.0, 0.0, 2.0 * kPi)));
    CHECK_FALSE(validate_probe_condition(DriveConfig(0.1, 0.1, 10.0, 0.0, kPi)));
    CHECK(validate_probe_condition(DriveConfig(0.1, 0.1, 10.0, 0.0, -4.0 * kPi)));
}

TEST_CASE("drive validation and phase wrapping") {
    CHECK_THROWS_AS(DriveConfig(-0.1, 0.1, 10.0, 0.0, 0.0), ConfigError);
    CHECK_THROWS_AS(DriveConfig(0.1, 0.1, 10.0, std::nan(""), 0.0), ConfigError);
    const DriveConfig d(0.1, 0.1, 10.0, 0.0, 2.5 * kPi);
    CHECK(d.theta() == doctest::Approx(0.5 * kPi));
    CHECK(DriveConfig(0.1, 0.1, 1.0, 0.0, -0.5 * kPi).theta() == doctest::Approx(1.5 * kPi));
}

TEST_CASE("default_closed satisfies the radiative relations exactly") {
    const auto mol = MoleculeParams::default_closed(0.7, 1.3, 2.1);
    CHECK(mol.gamma12() == 1.3 / 2.0);
    CHECK(mol.gamma13() == (0.7 + 2.1) / 2.0);
    CHECK(mol.gamma23() == (1.3 + 0.7 + 2.1) / 2.0);
}

TEST_CASE("molecule rates are validated") {
    CHECK_THROWS_AS(MoleculeParams(1, 1, 1, -0.1, 1, 1), ConfigError);
    CHECK_THROWS_AS(MoleculeParams(0, 0, 0, 1, 1, 1), ConfigError);
    CHECK_NOTHROW(MoleculeParams(0, 1, 0, 0, 0, 0));
}

TEST_CASE("handedness phase map is an involution modulo 2 pi") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int k = 0; k < 200; ++k) {
        const double theta = u(rng);
        CHECK(effective_theta(Handedness::Left, theta) == doctest::Approx(wrap_phase(theta)));
        const double twice =
            effective_theta(Handedness::Right, effective_theta(Handedness::Right, theta));
        const double gap = std::abs(twice - wrap_phase(theta));
        CHECK(std::min(gap, 2.0 * kPi - gap) < 1e-12);
    }
    CHECK(chirality_sign(Handedness::Left) == 1);
    CHECK(chirality_sign(Handedness::Right) == -1);
}

TEST_CASE("medium fractions") {
    CHECK_THROWS_AS(MediumConfig(0.6, 0.5, 0.1), ConfigError);
    CHECK_THROWS_AS(MediumConfig(1.2, -0.2, 0.1), ConfigError);
    CHECK_THROWS_AS(MediumConfig(0.5, 0.5, -0.1), ConfigError);
    CHECK_THROWS_AS(MediumConfig(0.5, 0.5, 0.1, 0.0), ConfigError);
    CHECK_THROWS_AS(MediumConfig::from_delta_p(1.5, 0.1), ConfigError);

    const auto m = MediumConfig::from_delta_p(0.5, 0.2);
    CHECK(m.p_plus() == doctest::Approx(0.75));
    CHECK(m.p_minus() == doctest::Approx(0.25));
    CHECK(m.delta_p() == doctest::Approx(0.5));
    CHECK(m.dipole_ratio() == 1.0);
    CHECK(MediumConfig::from_delta_p(-1.0, 0.0).p_plus() == 0.0);
}

TEST_CASE("density matrix diagnostics") {
    const auto ground = DensityMatrix::pure(1);
    CHECK(ground.is_physical());
    CHECK(ground(1, 1) == cplx(1.0));
    CHECK_THROWS_AS(DensityMatrix::pure(4), ConfigError);

    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(0, 0) = 1.2;
    m(1, 1) = -0.2;
    const DensityMatrix negative(m);
    CHECK(negative.min_eigenvalue() == doctest::Approx(-0.2));
    CHECK_FALSE(negative.is_physical());

    m = Eigen::Matrix3cd::Identity() / 3.0;
    m(1, 0) = cplx(0.1, 0.1);
    CHECK(DensityMatrix(m).hermiticity_error() == doctest::Approx(std::abs(cplx(0.1, 0.1))));
}
