// Probe propagation through a mixture of enantiomers.
//
// The coordinate is the optical depth zeta. Per unit zeta the Omega21 probe
// picks up i Gamma21 <sigma21> e^{-i theta21} and the Omega31 probe
// i A Gamma21 <sigma31> e^{-i theta31}, where <.> is the fraction-weighted
// average over the two enantiomers and Omega_ij = |Omega_ij| e^{-i theta_ij}.
// The control field Omega32 is not depleted.

#pragma once

#include "chiral/analytic.hpp"
#include "chiral/model.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace chiral::propagation {

struct FieldState {
    cplx omega21;
    cplx omega31;
    cplx omega32;
    double zeta = 0.0;
};

/// Entry fields for a drive: probes real, control carrying the loop phase
/// (theta21 = theta31 = 0, theta32 = Theta).
FieldState entry_fields(const DriveConfig& drive);

/// Total loop phase theta32 + theta21 - theta31 of complex fields.
double loop_phase(const FieldState& fields);

enum class LambdaModel {
    Exact,          ///< lambda21 = gamma12 - i Delta, lambda31 = gamma13 - i Delta
    StrongControl,  ///< lambda ~ -i Delta, Z ~ -i Delta (gamma12 + gamma13); valid at Delta = -+|Omega32|/2
};

/// First-order coupling matrix K with d/dzeta (Omega21, Omega31)^T = K (Omega21, Omega31)^T.
Eigen::Matrix2cd linear_coupling(const MoleculeParams& mol, const MediumConfig& medium,
                                 double delta, cplx omega32,
                                 LambdaModel model = LambdaModel::Exact,
                                 analytic::DetuningShift shift = {});

/// exp(K t) for a 2x2 complex matrix, closed form.
Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& K, double t);

/// Linearised propagation solved in closed form; one state per grid point.
std::vector<FieldState> propagate_linear(const MediumConfig& medium, const MoleculeParams& mol,
                                         const DriveConfig& drive_at_entry,
                                         std::span<const double> zeta_grid,
                                         LambdaModel model = LambdaModel::Exact);

/// Propagation with an arbitrary (e.g. Doppler-averaged) coupling matrix.
std::vector<FieldState> propagate_with_coupling(const Eigen::Matrix2cd& K,
                                                const FieldState& entry,
                                                std::span<const double> zeta_grid);

struct FullOptions {
    double step = 0.01;
    /// Re-run with half the step and compare; throws StepTooLarge on mismatch.
    bool self_check = false;
    double self_check_tol = 1e-8;
};

/// Nonlinear propagation: each RK4 stage solves both enantiomer steady states
/// for the local field amplitudes and loop phase.
std::vector<FieldState> propagate_full(const MediumConfig& medium, const MoleculeParams& mol,
                                       const DriveConfig& drive_at_entry,
                                       std::span<const double> zeta_grid,
                                       const FullOptions& options = {});

/// |Omega21(exit)|^2 / |Omega21(entry)|^2. Throws ZeroEntryField for a dark entry probe.
double transmission(const FieldState& entry, const FieldState& exit);

}  // namespace chiral::propagation
