#include "chiral/analytic.hpp"

#include "chiral/errors.hpp"

#include <cmath>

namespace chiral::analytic {

namespace {

constexpr cplx I{0.0, 1.0};

double coherence_sum(const MoleculeParams& mol) {
    const double g = mol.gamma12() + mol.gamma13();
    if (!(g > 0.0)) throw DegenerateDenominator("gamma12 + gamma13 must be > 0");
    return g;
}

// (e^x - 1)/x, second-order series near zero.
double expm1_over_x(double x) {
    if (std::abs(x) < 1e-5) return 1.0 + x / 2.0 + x * x / 6.0;
    return std::expm1(x) / x;
}

double peak_height(const PeakHeightConstants& k, double kappa, double zeta, double dp,
                   int sign, PeakFormula formula) {
    const double u = 1.0 - k.A + 2.0 * sign * dp;
    const double x = k.D * zeta;
    double bracket_sq_over_4B;
    const bool direct = formula == PeakFormula::Direct ||
                        (formula == PeakFormula::Auto && k.B >= 1e-12);
    if (direct) {
        if (k.B <= 0.0) throw DegenerateDenominator("direct peak formula needs B > 0");
        const double root_b = std::sqrt(k.B);
        const double bracket = u * (1.0 - std::exp(x)) + root_b * (1.0 + std::exp(x));
        bracket_sq_over_4B = bracket * bracket / (4.0 * k.B);
    } else {
        // bracket / sqrt(B) = 1 + e^x - u kappa zeta (e^x - 1)/x, finite as B -> 0.
        const double reduced = 1.0 + std::exp(x) - u * kappa * zeta * expm1_over_x(x);
        bracket_sq_over_4B = reduced * reduced / 4.0;
    }
    return 1.0 - std::exp(-k.C * zeta) * bracket_sq_over_4B;
}

}  // namespace

WeakProbeCoherences weak_probe(const MoleculeParams& mol, const DriveConfig& drive,
                               int chirality_sign, DetuningShift shift) {
    if (chirality_sign != 1 && chirality_sign != -1) {
        throw ConfigError("chirality sign must be +1 or -1");
    }
    const double a21 = drive.omega21_abs();
    const double a31 = drive.omega31_abs();
    const double a32 = drive.omega32_abs();
    const cplx lambda21(mol.gamma12(), -(drive.delta() + shift.shift21));
    const cplx lambda31(mol.gamma13(), -(drive.delta() + shift.shift31));
    const cplx Z = 0.25 * a32 * a32 + lambda21 * lambda31;
    if (std::abs(Z) < 1e-14) {
        throw DegenerateDenominator("weak-probe denominator Z vanishes");
    }
    const cplx loop = std::polar(1.0, drive.theta());
    const double s = chirality_sign;

    WeakProbeCoherences out;
    out.Z = Z;
    out.sigma21_eit = I * lambda31 * a21 / (2.0 * Z);
    out.sigma21_para = -s * a31 * a32 * loop / (4.0 * Z);
    out.sigma21 = out.sigma21_eit + out.sigma21_para;
    out.sigma31 = I * lambda21 * a31 / (2.0 * Z) - s * a21 * a32 * std::conj(loop) / (4.0 * Z);
    return out;
}

cplx sigma21_weak(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign) {
    return weak_probe(mol, drive, chirality_sign).sigma21;
}

cplx sigma31_weak(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign) {
    return weak_probe(mol, drive, chirality_sign).sigma31;
}

PeakHeightConstants peak_height_constants(const MoleculeParams& mol,
                                          const MediumConfig& medium) {
    const double g = coherence_sum(mol);
    const double A = medium.dipole_ratio();
    const double dp = medium.delta_p();
    PeakHeightConstants k;
    k.A = A;
    k.B = (1.0 - A) * (1.0 - A) + 4.0 * A * dp * dp;
    const double root_b = std::sqrt(k.B);
    k.C = mol.Gamma21() * (1.0 + A + root_b) / (2.0 * g);
    k.D = mol.Gamma21() * root_b / (2.0 * g);
    return k;
}

PeakHeights peak_heights(const MoleculeParams& mol, const MediumConfig& medium,
                         PeakFormula formula) {
    const PeakHeightConstants k = peak_height_constants(mol, medium);
    const double kappa = mol.Gamma21() / (2.0 * coherence_sum(mol));
    const double zeta = medium.zeta();
    const double dp = medium.delta_p();
    return {peak_height(k, kappa, zeta, dp, +1, formula), peak_height(k, kappa, zeta, dp, -1, formula)};
}

PeakHeights peak_heights_linear(const MoleculeParams& mol, const MediumConfig& medium) {
    const double slope = 2.0 * mol.Gamma21() * medium.zeta() / coherence_sum(mol);
    return {slope * medium.p_plus(), slope * medium.p_minus()};
}

}  // namespace chiral::analytic
