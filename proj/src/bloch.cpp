#include "chiral/bloch.hpp"

#include "chiral/errors.hpp"

#include <cmath>
#include <sstream>

namespace chiral::bloch {

namespace {

// Coordinate slots.
constexpr int kS11 = 0;
constexpr int kS22 = 1;
constexpr int kRe21 = 2;
constexpr int kIm21 = 3;
constexpr int kRe31 = 4;
constexpr int kIm31 = 5;
constexpr int kRe32 = 6;
constexpr int kIm32 = 7;

}  // namespace

Vector8 to_coordinates(const DensityMatrix& sigma) {
    Vector8 x;
    x[kS11] = sigma(1, 1).real();
    x[kS22] = sigma(2, 2).real();
    x[kRe21] = sigma(2, 1).real();
    x[kIm21] = sigma(2, 1).imag();
    x[kRe31] = sigma(3, 1).real();
    x[kIm31] = sigma(3, 1).imag();
    x[kRe32] = sigma(3, 2).real();
    x[kIm32] = sigma(3, 2).imag();
    return x;
}

DensityMatrix from_coordinates(const Vector8& x) {
    Eigen::Matrix3cd m;
    const cplx s21(x[kRe21], x[kIm21]);
    const cplx s31(x[kRe31], x[kIm31]);
    const cplx s32(x[kRe32], x[kIm32]);
    m(0, 0) = x[kS11];
    m(1, 1) = x[kS22];
    m(2, 2) = 1.0 - x[kS11] - x[kS22];
    m(1, 0) = s21;
    m(0, 1) = std::conj(s21);
    m(2, 0) = s31;
    m(0, 2) = std::conj(s31);
    m(2, 1) = s32;
    m(1, 2) = std::conj(s32);
    return DensityMatrix(m);
}

Liouvillian build_liouvillian(const MoleculeParams& mol, const DriveConfig& drive,
                              Handedness hand) {
    const double a21 = drive.omega21_abs();
    const double a31 = drive.omega31_abs();
    const double a32 = drive.omega32_abs();
    const double delta = drive.delta();
    const double theta = effective_theta(hand, drive.theta());
    const double c = std::cos(theta);
    const double s = std::sin(theta);

    const double G31 = mol.Gamma31();
    const double G21 = mol.Gamma21();
    const double G32 = mol.Gamma32();

    Liouvillian gen;
    Matrix8& M = gen.M;
    Vector8& b = gen.b;

    // s11' = G31 s33 + G21 s22 - |O31| Im s31 - |O21| Im s21
    M(kS11, kS11) = -G31;
    M(kS11, kS22) = G21 - G31;
    M(kS11, kIm31) = -a31;
    M(kS11, kIm21) = -a21;
    b[kS11] = G31;

    // s22' = -G21 s22 + G32 s33 + |O21| Im s21 - |O32| Im s32
    M(kS22, kS11) = -G32;
    M(kS22, kS22) = -G21 - G32;
    M(kS22, kIm21) = a21;
    M(kS22, kIm32) = -a32;
    b[kS22] = G32;

    // s21' = -(g12 - i D) s21 + (i/2)[|O32| e^{iT} s31 - |O31| e^{iT} s23 - |O21| (s22 - s11)]
    M(kRe21, kRe21) = -mol.gamma12();
    M(kRe21, kIm21) = -delta;
    M(kRe21, kRe31) = -0.5 * a32 * s;
    M(kRe21, kIm31) = -0.5 * a32 * c;
    M(kRe21, kRe32) = 0.5 * a31 * s;
    M(kRe21, kIm32) = -0.5 * a31 * c;

    M(kIm21, kRe21) = delta;
    M(kIm21, kIm21) = -mol.gamma12();
    M(kIm21, kRe31) = 0.5 * a32 * c;
    M(kIm21, kIm31) = -0.5 * a32 * s;
    M(kIm21, kRe32) = -0.5 * a31 * c;
    M(kIm21, kIm32) = -0.5 * a31 * s;
    M(kIm21, kS11) = 0.5 * a21;
    M(kIm21, kS22) = -0.5 * a21;

    // s31' = -(g13 - i D) s31 + (i/2)[|O32| e^{-iT} s21 - |O21| e^{-iT} s32 - |O31| (s33 - s11)]
    M(kRe31, kRe31) = -mol.gamma13();
    M(kRe31, kIm31) = -delta;
    M(kRe31, kRe21) = 0.5 * a32 * s;
    M(kRe31, kIm21) = -0.5 * a32 * c;
    M(kRe31, kRe32) = -0.5 * a21 * s;
    M(kRe31, kIm32) = 0.5 * a21 * c;

    M(kIm31, kRe31) = delta;
    M(kIm31, kIm31) = -mol.gamma13();
    M(kIm31, kRe21) = 0.5 * a32 * c;
    M(kIm31, kIm21) = 0.5 * a32 * s;
    M(kIm31, kRe32) = -0.5 * a21 * c;
    M(kIm31, kIm32) = -0.5 * a21 * s;
    M(kIm31, kS11) = a31;
    M(kIm31, kS22) = 0.5 * a31;
    b[kIm31] = -0.5 * a31;

    // s32' = -g23 s32 + (i/2)[|O31| e^{iT} s12 - |O21| e^{iT} s31 - |O32| (s33 - s22)]
    M(kRe32, kRe32) = -mol.gamma23();
    M(kRe32, kRe21) = -0.5 * a31 * s;
    M(kRe32, kIm21) = 0.5 * a31 * c;
    M(kRe32, kRe31) = 0.5 * a21 * s;
    M(kRe32, kIm31) = 0.5 * a21 * c;

    M(kIm32, kIm32) = -mol.gamma23();
    M(kIm32, kRe21) = 0.5 * a31 * c;
    M(kIm32, kIm21) = 0.5 * a31 * s;
    M(kIm32, kRe31) = -0.5 * a21 * c;
    M(kIm32, kIm31) = 0.5 * a21 * s;
    M(kIm32, kS11) = 0.5 * a32;
    M(kIm32, kS22) = a32;
    b[kIm32] = -0.5 * a32;

    return gen;
}

double residual(const Liouvillian& gen, const DensityMatrix& sigma) {
    return gen.apply(to_coordinates(sigma)).cwiseAbs().maxCoeff();
}

DensityMatrix steady_state(const Liouvillian& gen) {
    Eigen::FullPivLU<Matrix8> lu(gen.M);
    // Rank test relative to the largest pivot; the generator entries are O(rates, drives).
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) {
        throw SingularGenerator("generator is rank deficient: no unique steady state");
    }
    Vector8 x = lu.solve(-gen.b);
    // One step of iterative refinement.
    const Vector8 r = gen.apply(x);
    x -= lu.solve(r);
    return from_coordinates(x);
}

DensityMatrix steady_state(const MoleculeParams& mol, const DriveConfig& drive,
                           Handedness hand) {
    return steady_state(build_liouvillian(mol, drive, hand));
}

DensityMatrix evolve(const DensityMatrix& sigma0, const Liouvillian& gen, double t_final,
                     double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be > 0");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ConfigError("t_final must be >= 0");

    Vector8 x = to_coordinates(sigma0);
    double t = 0.0;
    while (t < t_final) {
        const double h = std::min(dt, t_final - t);
        const Vector8 k1 = gen.apply(x);
        const Vector8 k2 = gen.apply(x + 0.5 * h * k1);
        const Vector8 k3 = gen.apply(x + 0.5 * h * k2);
        const Vector8 k4 = gen.apply(x + h * k3);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t = (t_final - t <= dt) ? t_final : t + h;

        const double p11 = x[kS11];
        const double p22 = x[kS22];
        const double p33 = 1.0 - p11 - p22;
        for (double p : {p11, p22, p33}) {
            if (!(p >= -0.01 && p <= 1.01)) {
                std::ostringstream msg;
                msg << "population " << p << " left [-0.01, 1.01] at t = " << t
                    << "; reduce dt (" << dt << ")";
                throw StepTooLarge(msg.str());
            }
        }
    }
    return from_coordinates(x);
}

DensityMatrix evolve(const DensityMatrix& sigma0, const MoleculeParams& mol,
                     const DriveConfig& drive, Handedness hand, double t_final, double dt) {
    return evolve(sigma0, build_liouvillian(mol, drive, hand), t_final, dt);
}

}  // namespace chiral::bloch
