#include "chiral/model.hpp"

#include "chiral/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace chiral {

namespace {

void require_rate(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0) {
        std::ostringstream msg;
        msg << "rate " << name << " must be finite and >= 0, got " << value;
        throw ConfigError(msg.str());
    }
}

}  // namespace

MoleculeParams::MoleculeParams(double Gamma31, double Gamma21, double Gamma32,
                               double gamma12, double gamma13, double gamma23)
    : Gamma31_(Gamma31), Gamma21_(Gamma21), Gamma32_(Gamma32),
      gamma12_(gamma12), gamma13_(gamma13), gamma23_(gamma23) {
    require_rate(Gamma31, "Gamma31");
    require_rate(Gamma21, "Gamma21");
    require_rate(Gamma32, "Gamma32");
    require_rate(gamma12, "gamma12");
    require_rate(gamma13, "gamma13");
    require_rate(gamma23, "gamma23");
    if (Gamma31 == 0.0 && Gamma21 == 0.0 && Gamma32 == 0.0) {
        throw ConfigError("at least one population relaxation rate must be > 0");
    }
}

MoleculeParams MoleculeParams::default_closed(double Gamma31, double Gamma21, double Gamma32) {
    return MoleculeParams(Gamma31, Gamma21, Gamma32,
                          Gamma21 / 2.0,
                          (Gamma31 + Gamma32) / 2.0,
                          (Gamma21 + Gamma31 + Gamma32) / 2.0);
}

double wrap_phase(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(theta, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    if (wrapped >= two_pi) wrapped = 0.0;
    return wrapped;
}

double effective_theta(Handedness hand, double theta) {
    return hand == Handedness::Left ? wrap_phase(theta) : wrap_phase(theta + std::numbers::pi);
}

int chirality_sign(Handedness hand) { return hand == Handedness::Left ? 1 : -1; }

const char* to_string(Handedness hand) { return hand == Handedness::Left ? "left" : "right"; }

DriveConfig::DriveConfig(double omega21_abs, double omega31_abs, double omega32_abs,
                         double delta, double theta)
    : omega21_abs_(omega21_abs), omega31_abs_(omega31_abs), omega32_abs_(omega32_abs),
      delta_(delta), theta_(0.0) {
    for (double amp : {omega21_abs, omega31_abs, omega32_abs}) {
        if (!std::isfinite(amp) || amp < 0.0) {
            throw ConfigError("Rabi amplitudes must be finite and >= 0");
        }
    }
    if (!std::isfinite(delta)) throw ConfigError("detuning must be finite");
    if (!std::isfinite(theta)) throw ConfigError("loop phase must be finite");
    theta_ = wrap_phase(theta);
}

bool DriveConfig::probe_condition_holds() const {
    const double scale = std::max(omega21_abs_, omega31_abs_);
    const bool equal = std::abs(omega21_abs_ - omega31_abs_) <= 1e-12 * scale;
    const double phase_gap = std::min(theta_, 2.0 * std::numbers::pi - theta_);
    return equal && phase_gap <= 1e-12;
}

DriveConfig DriveConfig::with_delta(double delta) const {
    return DriveConfig(omega21_abs_, omega31_abs_, omega32_abs_, delta, theta_);
}

DriveConfig DriveConfig::with_theta(double theta) const {
    return DriveConfig(omega21_abs_, omega31_abs_, omega32_abs_, delta_, theta);
}

DriveConfig DriveConfig::with_probes(double omega21_abs, double omega31_abs) const {
    return DriveConfig(omega21_abs, omega31_abs, omega32_abs_, delta_, theta_);
}

bool validate_probe_condition(const DriveConfig& drive) { return drive.probe_condition_holds(); }

DensityMatrix DensityMatrix::pure(int level) {
    if (level < 1 || level > 3) throw ConfigError("level must be 1, 2 or 3");
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
    m(level - 1, level - 1) = 1.0;
    return DensityMatrix(m);
}

double DensityMatrix::hermiticity_error() const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::Matrix3cd herm = 0.5 * (m_ + m_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_physical() const {
    return hermiticity_error() <= kHermiticityTol && std::abs(trace() - 1.0) <= kTraceTol &&
           min_eigenvalue() >= kPositivityTol;
}

DensityMatrix DensityMatrix::regauged(double phase) const {
    Eigen::Matrix3cd m = m_;
    const cplx rot = std::polar(1.0, phase);
    m(2, 1) *= rot;
    m(1, 2) *= std::conj(rot);
    return DensityMatrix(m);
}

MediumConfig::MediumConfig(double p_plus, double p_minus, double zeta, double dipole_ratio)
    : p_plus_(p_plus), p_minus_(p_minus), zeta_(zeta), dipole_ratio_(dipole_ratio) {
    if (!(p_plus >= 0.0 && p_plus <= 1.0 && p_minus >= 0.0 && p_minus <= 1.0)) {
        throw ConfigError("enantiomer fractions must lie in [0, 1]");
    }
    if (std::abs(p_plus + p_minus - 1.0) > kFractionTol) {
        throw ConfigError("enantiomer fractions must sum to 1");
    }
    if (!std::isfinite(zeta) || zeta < 0.0) throw ConfigError("optical depth must be >= 0");
    if (!std::isfinite(dipole_ratio) || dipole_ratio <= 0.0) {
        throw ConfigError("dipole ratio must be > 0");
    }
}

MediumConfig MediumConfig::from_delta_p(double delta_p, double zeta, double dipole_ratio) {
    if (!(delta_p >= -1.0 && delta_p <= 1.0)) {
        throw ConfigError("enantiomeric difference must lie in [-1, 1]");
    }
    // Written symmetrically so that dp -> -dp swaps the fractions bit for bit.
    return MediumConfig(0.5 * (1.0 + delta_p), 0.5 * (1.0 - delta_p), zeta, dipole_ratio);
}

MediumConfig MediumConfig::with_zeta(double zeta) const {
    return MediumConfig(p_plus_, p_minus_, zeta, dipole_ratio_);
}

MediumConfig MediumConfig::with_delta_p(double delta_p) const {
    return from_delta_p(delta_p, zeta_, dipole_ratio_);
}

}  // namespace chiral
