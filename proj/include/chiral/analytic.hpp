// Closed-form weak-probe results.
//
// To first order in the probe amplitudes, with lambda21 = gamma12 - i Delta,
// lambda31 = gamma13 - i Delta and Z = |Omega32|^2/4 + lambda21 lambda31:
//
//   sigma21 = i lambda31 |O21| / (2Z)  -  s |O31| |O32| e^{+i Theta} / (4Z)
//   sigma31 = i lambda21 |O31| / (2Z)  -  s |O21| |O32| e^{-i Theta} / (4Z)
//
// where s = +1 for the Left enantiomer and -1 for the Right one. The first
// term is the ladder-EIT response, the second the two-photon parametric one.

#pragma once

#include "chiral/model.hpp"

namespace chiral::analytic {

/// Extra detuning seen by one velocity class on each probe transition
/// (k21 v_z and k31 v_z in units gamma). Zero for molecules at rest.
struct DetuningShift {
    double shift21 = 0.0;
    double shift31 = 0.0;
};

struct WeakProbeCoherences {
    cplx sigma21;
    cplx sigma31;
    cplx Z;
    cplx sigma21_eit;
    cplx sigma21_para;
};

/// First-order coherences for chirality_sign = +1 (Left) or -1 (Right).
/// Throws DegenerateDenominator if |Z| < 1e-14.
WeakProbeCoherences weak_probe(const MoleculeParams& mol, const DriveConfig& drive,
                               int chirality_sign, DetuningShift shift = {});

cplx sigma21_weak(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign);
cplx sigma31_weak(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign);

/// Dimensionless constants of the closed-form peak heights.
struct PeakHeightConstants {
    double A = 1.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
};

PeakHeightConstants peak_height_constants(const MoleculeParams& mol, const MediumConfig& medium);

struct PeakHeights {
    double plus = 0.0;   ///< absorption at Delta = -|Omega32|/2
    double minus = 0.0;  ///< absorption at Delta = +|Omega32|/2
};

/// Which branch of the closed form to use. Auto picks Series for B < 1e-12.
enum class PeakFormula { Auto, Direct, Series };

/// Closed-form characteristic peak heights in the strong-control limit
/// |Omega32| >> gamma12, gamma13:
///   h = 1 - e^{-C zeta}/(4B) [ (1 - A +- 2 dp)(1 - e^{D zeta}) + sqrt(B)(1 + e^{D zeta}) ]^2.
/// For B < 1e-12 (A = 1, racemic) the 0/0 form is replaced by its series limit.
PeakHeights peak_heights(const MoleculeParams& mol, const MediumConfig& medium,
                         PeakFormula formula = PeakFormula::Auto);

/// Optically thin limit h = 2 Gamma21 zeta p / (gamma12 + gamma13).
PeakHeights peak_heights_linear(const MoleculeParams& mol, const MediumConfig& medium);

}  // namespace chiral::analytic
