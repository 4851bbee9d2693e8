#include "chiral/analytic.hpp"
#include "chiral/bloch.hpp"
#include "chiral/doppler.hpp"
#include "chiral/errors.hpp"
#include "chiral/propagation.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace chiral;
using doppler::DopplerConfig;

namespace {

const MoleculeParams kMol = MoleculeParams::default_closed();
const DriveConfig kFig2(0.1, 0.1, 10.0, 0.0, 0.0);

// Detuning of the local maximum of f nearest to `guess`, scanned at step h.
template <class F>
double local_peak(F&& f, double guess, double radius, double h) {
    double best = guess - radius;
    double best_value = f(best);
    for (double d = guess - radius; d <= guess + radius + 1e-12; d += h) {
        const double v = f(d);
        if (v > best_value) best_value = v, best = d;
    }
    return best;
}

}  // namespace

TEST_CASE("Gauss-Hermite rule integrates Gaussian moments") {
    for (int n : {8, 16, 64, 128, 256, 512}) {
        const auto rule = doppler::gauss_hermite(n);
        double m0 = 0, m1 = 0, m2 = 0, m4 = 0;
        for (int i = 0; i < n; ++i) {
            const double x = rule.nodes[i], w = rule.weights[i];
            m0 += w;
            m1 += w * x;
            m2 += w * x * x;
            m4 += w * x * x * x * x;
        }
        CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(std::abs(m1) < 1e-13);
        CHECK(m2 == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(m4 == doctest::Approx(0.75).epsilon(1e-12));
    }
    const auto rule = doppler::gauss_hermite(8);
    for (int i = 1; i < 8; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
}

TEST_CASE("Doppler configuration") {
    const DopplerConfig c(2.0, 1.5);
    CHECK(c.ku_d31() == 3.5);
    CHECK(c.node_count() == doppler::kDefaultNodes);
    const auto v = doppler::velocity_class(c, 0.4);
    CHECK(v.shift31 == doctest::Approx(v.shift21 + v.shift32));
    CHECK_THROWS_AS(DopplerConfig(1.0, 1.0, 7), ConfigError);
    CHECK_THROWS_AS(DopplerConfig(1.0, 1.0, 10).with_nodes(6), ConfigError);
    CHECK_THROWS_AS(DopplerConfig(-1.0, 1.0), ConfigError);
}

TEST_CASE("cold limit recovers the rest-frame response") {
    for (double delta : {-5.0, 0.0, 2.5, 5.0}) {
        const DriveConfig d = kFig2.with_delta(delta);
        const cplx rest = analytic::sigma21_weak(kMol, d, +1);
        CHECK(doppler::averaged_sigma21(kMol, d, +1, DopplerConfig(0.0, 0.0)) == rest);
        const cplx cold = doppler::averaged_sigma21(kMol, d, +1, DopplerConfig(1e-9, 1e-9));
        CHECK(std::abs(cold - rest) <= 1e-10);
    }
    const MediumConfig medium(0.7, 0.3, 0.2, 1.0);
    const cplx o32 = propagation::entry_fields(kFig2).omega32;
    const Eigen::Matrix2cd K = propagation::linear_coupling(kMol, medium, -5.0, o32);
    const Eigen::Matrix2cd Kc =
        doppler::averaged_coupling(kMol, medium, -5.0, o32, DopplerConfig(1e-9, 1e-9));
    CHECK((K - Kc).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("constant response is returned unchanged") {
    const DopplerConfig c(3.0, 2.0, 64);
    const auto v = doppler::doppler_average([](const doppler::VelocityClass&) { return cplx(0.3, -0.2); }, c);
    CHECK(std::abs(v - cplx(0.3, -0.2)) < 1e-15);
}

TEST_CASE("quadrature agrees with a dense trapezoid oracle") {
    for (const DopplerConfig& c : {DopplerConfig(0.5, 0.5), DopplerConfig(2.0, 0.0),
                                   DopplerConfig(2.0, 2.0), DopplerConfig(5.0, 0.0),
                                   DopplerConfig(1.0, 4.0)}) {
        for (double delta : {-8.0, -5.0, -1.0, 0.0, 3.0, 5.0}) {
            const DriveConfig d = kFig2.with_delta(delta);
            const cplx gh = doppler::averaged_sigma21(kMol, d, +1, c);
            const cplx tz = oracle::trapezoid_gaussian([&](double x) {
                const auto v = doppler::velocity_class(c, x);
                return analytic::weak_probe(kMol, d, +1, v.probe_shift()).sigma21;
            });
            CHECK(std::abs(gh - tz) <= 1e-6 * std::abs(tz));
        }
    }
}

TEST_CASE("characteristic peaks survive moderate broadening") {
    const DopplerConfig c(2.0, 2.0);
    auto im = [&](double omega32, int sign) {
        return [=, &c](double delta) {
            const DriveConfig d(0.1, 0.1, omega32, delta, 0.0);
            return doppler::averaged_sigma21(kMol, d, sign, c).imag();
        };
    };
    auto racemic = [&](double omega32) {
        return [=, &c](double delta) {
            const DriveConfig d(0.1, 0.1, omega32, delta, 0.0);
            return 0.5 * (doppler::averaged_sigma21(kMol, d, +1, c).imag() +
                          doppler::averaged_sigma21(kMol, d, -1, c).imag());
        };
    };

    // Control 10: peak positions within 0.5 of -+5, heights below the rest frame.
    const double left = local_peak(im(10.0, +1), -5.0, 2.0, 0.05);
    const double right = local_peak(im(10.0, -1), 5.0, 2.0, 0.05);
    CHECK(std::abs(left + 5.0) <= 0.5);
    CHECK(std::abs(right - 5.0) <= 0.5);
    CHECK(im(10.0, +1)(left) < analytic::sigma21_weak(kMol, kFig2.with_delta(-5.0), +1).imag());
    CHECK(im(10.0, +1)(left) > 0.0);

    // Control 40: both peaks of the racemic response are interior local maxima.
    for (double centre : {-20.0, 20.0}) {
        const auto f = racemic(40.0);
        const double at = local_peak(f, centre, 1.0, 0.05);
        CHECK(std::abs(at - centre) < 1.0 - 1e-9);
        CHECK(f(at) > f(at - 0.05));
        CHECK(f(at) > f(at + 0.05));
    }
    const double l40 = local_peak(im(40.0, +1), -20.0, 1.0, 0.05);
    const double r40 = local_peak(im(40.0, -1), 20.0, 1.0, 0.05);
    CHECK(std::abs(l40 + 20.0) < 1.0 - 1e-9);
    CHECK(std::abs(r40 - 20.0) < 1.0 - 1e-9);
}

TEST_CASE("quadrature convergence is checked") {
    // Widths up to k31 u_D = 5 converge at the default order.
    for (const DopplerConfig& c : {DopplerConfig(1.0, 1.0), DopplerConfig(2.5, 2.5),
                                   DopplerConfig(5.0, 0.0), DopplerConfig(0.0, 5.0)}) {
        for (double delta = -15.0; delta <= 15.0; delta += 2.5) {
            CHECK_NOTHROW(doppler::averaged_sigma21(kMol, kFig2.with_delta(delta), +1, c));
        }
    }
    CHECK_THROWS_AS(doppler::averaged_sigma21(kMol, kFig2.with_delta(-5.0), +1,
                                              DopplerConfig(40.0, 40.0, 8)),
                    QuadratureNotConverged);
}

TEST_CASE("velocity-averaged steady state keeps unit trace") {
    // With no shift on the control transition every class sees one common
    // detuning, so the rest-frame generator applies class by class.
    const DopplerConfig c(3.0, 0.0);
    const DriveConfig weak = kFig2.with_probes(0.01, 0.01);
    for (double delta : {-5.0, 0.0, 4.0}) {
        auto rho = [&](const doppler::VelocityClass& v) -> Eigen::Matrix3cd {
            const DriveConfig d = weak.with_delta(delta + v.shift21);
            return bloch::steady_state(kMol, d, Handedness::Left).matrix();
        };
        const Eigen::Matrix3cd avg = doppler::doppler_average(rho, c);
        CHECK(std::abs(avg.trace() - 1.0) <= 1e-12);
        CHECK((avg - avg.adjoint()).cwiseAbs().maxCoeff() <= 1e-13);
        const cplx expected = doppler::averaged_sigma21(kMol, weak.with_delta(delta), +1, c);
        CHECK(std::abs(avg(1, 0) - expected) <= 0.01 * std::abs(expected));
    }
}
