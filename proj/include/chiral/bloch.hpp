// Optical Bloch equations of the driven, damped three-level loop.
//
// The state is carried as eight real coordinates
//   x = (s11, s22, Re s21, Im s21, Re s31, Im s31, Re s32, Im s32)
// with s33 = 1 - s11 - s22 eliminated through the trace, so the dynamics is
// the affine system dx/dt = M x + b. The control transition is resonant
// (Delta_32 = 0) and both probes share the detuning Delta.

#pragma once

#include "chiral/model.hpp"

#include <Eigen/Dense>

namespace chiral::bloch {

using Vector8 = Eigen::Matrix<double, 8, 1>;
using Matrix8 = Eigen::Matrix<double, 8, 8>;

Vector8 to_coordinates(const DensityMatrix& sigma);
DensityMatrix from_coordinates(const Vector8& x);

/// Affine generator dx/dt = M x + b.
struct Liouvillian {
    Matrix8 M = Matrix8::Zero();
    Vector8 b = Vector8::Zero();

    Vector8 apply(const Vector8& x) const { return M * x + b; }
};

/// Generator for one enantiomer; the Right form uses Theta + pi.
Liouvillian build_liouvillian(const MoleculeParams& mol, const DriveConfig& drive,
                              Handedness hand);

/// Unique fixed point of the generator. Throws SingularGenerator when the
/// linear system is rank deficient.
DensityMatrix steady_state(const MoleculeParams& mol, const DriveConfig& drive,
                           Handedness hand);

/// Steady state of an already-built generator.
DensityMatrix steady_state(const Liouvillian& gen);

/// ||M x + b||_inf at the given state.
double residual(const Liouvillian& gen, const DensityMatrix& sigma);

/// Fixed-step classical RK4 from sigma0 up to t_final (units 1/gamma).
/// The last step is shortened to land exactly on t_final. Throws
/// StepTooLarge if a population leaves [-0.01, 1.01].
DensityMatrix evolve(const DensityMatrix& sigma0, const MoleculeParams& mol,
                     const DriveConfig& drive, Handedness hand, double t_final, double dt);

DensityMatrix evolve(const DensityMatrix& sigma0, const Liouvillian& gen, double t_final,
                     double dt);

}  // namespace chiral::bloch
