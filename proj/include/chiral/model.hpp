// Domain types for the cyclic three-level (Delta-type) chiral molecule.
//
// Every rate, Rabi frequency and detuning is dimensionless, measured in
// units of a reference rate gamma. Time is in units of 1/gamma and the
// propagation coordinate is the dimensionless optical depth zeta.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace chiral {

using cplx = std::complex<double>;

/// Population relaxation (Gamma) and coherence decay (gamma) rates.
///
/// Gamma_ij (i > j) feeds population from level i into level j;
/// gamma_ij damps the coherence sigma_ij. All rates are >= 0 and at least one
/// population rate is > 0 so that the steady state is unique.
class MoleculeParams {
public:
    MoleculeParams(double Gamma31, double Gamma21, double Gamma32,
                   double gamma12, double gamma13, double gamma23);

    /// Rates for purely radiative dephasing:
    /// gamma12 = Gamma21/2, gamma13 = (Gamma31+Gamma32)/2,
    /// gamma23 = (Gamma21+Gamma31+Gamma32)/2.
    static MoleculeParams default_closed(double Gamma31 = 1.0, double Gamma21 = 1.0,
                                         double Gamma32 = 1.0);

    double Gamma31() const { return Gamma31_; }
    double Gamma21() const { return Gamma21_; }
    double Gamma32() const { return Gamma32_; }
    double gamma12() const { return gamma12_; }
    double gamma13() const { return gamma13_; }
    double gamma23() const { return gamma23_; }

private:
    double Gamma31_, Gamma21_, Gamma32_;
    double gamma12_, gamma13_, gamma23_;
};

enum class Handedness { Left, Right };

/// Loop phase seen by an enantiomer: theta for Left, theta + pi for Right,
/// reduced to [0, 2 pi).
double effective_theta(Handedness hand, double theta);

/// +1 for Left (the sigma^(+) branch), -1 for Right.
int chirality_sign(Handedness hand);

const char* to_string(Handedness hand);

/// Wrap an angle into [0, 2 pi).
double wrap_phase(double theta);

/// Drive amplitudes |Omega_ij|, the shared probe detuning Delta
/// (Delta_21 = Delta_31 = Delta, Delta_32 = 0) and the total loop phase
/// Theta = theta32 + theta21 - theta31.
class DriveConfig {
public:
    DriveConfig(double omega21_abs, double omega31_abs, double omega32_abs,
                double delta, double theta);

    double omega21_abs() const { return omega21_abs_; }
    double omega31_abs() const { return omega31_abs_; }
    double omega32_abs() const { return omega32_abs_; }
    double delta() const { return delta_; }
    /// Stored modulo 2 pi, in [0, 2 pi).
    double theta() const { return theta_; }

    /// Both probes equal in amplitude and Theta = 0 (mod 2 pi).
    bool probe_condition_holds() const;

    DriveConfig with_delta(double delta) const;
    DriveConfig with_theta(double theta) const;
    DriveConfig with_probes(double omega21_abs, double omega31_abs) const;

private:
    double omega21_abs_, omega31_abs_, omega32_abs_;
    double delta_, theta_;
};

bool validate_probe_condition(const DriveConfig& drive);

/// 3x3 rotating-frame density matrix. Levels are addressed 1..3 through
/// operator() to match the usual sigma_ij notation.
class DensityMatrix {
public:
    static constexpr double kHermiticityTol = 1e-12;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPositivityTol = -1e-9;

    DensityMatrix() : m_(Eigen::Matrix3cd::Zero()) {}
    explicit DensityMatrix(const Eigen::Matrix3cd& m) : m_(m) {}

    /// |level><level|, level in 1..3.
    static DensityMatrix pure(int level);

    cplx operator()(int i, int j) const { return m_(i - 1, j - 1); }
    const Eigen::Matrix3cd& matrix() const { return m_; }

    double trace() const { return m_.trace().real(); }
    /// max |sigma_ij - conj(sigma_ji)|
    double hermiticity_error() const;
    /// Smallest eigenvalue of the Hermitian part.
    double min_eigenvalue() const;

    bool is_physical() const;

    /// sigma32 -> sigma32 e^{i phase}, sigma23 conjugated to match.
    /// The slowly varying coherences absorb the phase of each field
    /// separately, so around the closed loop they differ from a density
    /// matrix by the loop phase. regauged(-effective_theta) undoes that and
    /// gives the matrix whose eigenvalues are populations of a basis.
    DensityMatrix regauged(double phase) const;

private:
    Eigen::Matrix3cd m_;
};

/// Enantiomer fractions, optical depth zeta and the dipole ratio
/// A = mu31^2 nu31 / (mu21^2 nu21).
class MediumConfig {
public:
    static constexpr double kFractionTol = 1e-12;

    MediumConfig(double p_plus, double p_minus, double zeta, double dipole_ratio = 1.0);

    /// Fractions from the enantiomeric difference: p^(+-) = (1 +- dp) / 2.
    static MediumConfig from_delta_p(double delta_p, double zeta, double dipole_ratio = 1.0);

    double p_plus() const { return p_plus_; }
    double p_minus() const { return p_minus_; }
    double zeta() const { return zeta_; }
    double dipole_ratio() const { return dipole_ratio_; }
    double delta_p() const { return p_plus_ - p_minus_; }

    MediumConfig with_zeta(double zeta) const;
    MediumConfig with_delta_p(double delta_p) const;

private:
    double p_plus_, p_minus_, zeta_, dipole_ratio_;
};

struct PeakRecord {
    double location = 0.0;  ///< detuning, units gamma
    double height = 0.0;    ///< raw absorption h
    double normalized = 0.0;
};

/// Absorption spectrum of the Omega21 probe together with its two
/// characteristic peaks at Delta = -|Omega32|/2 (plus) and +|Omega32|/2 (minus).
struct SpectrumResult {
    std::vector<double> delta;
    std::vector<double> transmission;
    std::vector<double> absorption;
    std::vector<double> absorption_normalized;
    PeakRecord plus;
    PeakRecord minus;
    double dp_prime = 0.0;
};

}  // namespace chiral
