// Detuning sweeps, characteristic peaks and enantiomeric-excess read-out.

#pragma once

#include "chiral/doppler.hpp"
#include "chiral/model.hpp"
#include "chiral/propagation.hpp"

#include <optional>
#include <span>
#include <vector>

namespace chiral::spectra {

enum class Engine { Linear, Full };

const char* to_string(Engine engine);

struct EngineOptions {
    Engine engine = Engine::Full;
    propagation::FullOptions full{};
    propagation::LambdaModel lambda = propagation::LambdaModel::Exact;
    /// Velocity averaging; only valid with the linear engine.
    std::optional<doppler::DopplerConfig> doppler;
    /// 0 = CHIRAL_SPECTRA_THREADS or hardware concurrency.
    unsigned threads = 0;
};

/// Probe transmission T after the full medium at one detuning.
double transmission_at(const MediumConfig& medium, const MoleculeParams& mol,
                       const DriveConfig& drive_template, double delta,
                       const EngineOptions& options);

struct PeakSummary {
    double h_plus = 0.0;
    double h_minus = 0.0;
    double h_tilde_plus = 0.0;
    double h_tilde_minus = 0.0;
    double dp_prime = 0.0;
};

/// Normalised heights and dp' = h~(+) - h~(-). Throws DegenerateSpectrum if
/// h(+) + h(-) < 1e-12.
PeakSummary summarize_peaks(double h_plus, double h_minus);

/// Peaks read from sampled absorption at Delta = -|Omega32|/2 (plus) and
/// +|Omega32|/2 (minus). A grid point within 1e-9 of a characteristic detuning
/// is used as is; otherwise the value is the cubic through the four nearest
/// samples.
PeakSummary extract_peaks(std::span<const double> delta, std::span<const double> absorption,
                          double omega32_abs);

/// Peaks from direct engine evaluations at the characteristic detunings.
PeakSummary characteristic_peaks(const MediumConfig& medium, const MoleculeParams& mol,
                                 const DriveConfig& drive_template,
                                 const EngineOptions& options);

/// Absorption spectrum on delta_grid (sorted) with peaks evaluated at the exact
/// characteristic detunings. If the medium produces no absorption the
/// normalised columns and dp' are NaN.
SpectrumResult sweep(const MediumConfig& medium, const MoleculeParams& mol,
                     const DriveConfig& drive_template, std::span<const double> delta_grid,
                     const EngineOptions& options);

std::vector<double> linspace(double lo, double hi, int points);

/// dp -> dp' at a fixed molecule, drive, optical depth and dipole ratio.
struct ForwardModel {
    MediumConfig medium_template;
    MoleculeParams mol;
    DriveConfig drive;
    EngineOptions options;

    double operator()(double delta_p) const;
};

struct CalibrationCurve {
    std::vector<double> dp;
    std::vector<double> dp_prime;
};

/// Default calibration grid: 41 uniform samples on [-1, 1].
std::vector<double> default_dp_samples();

/// Evaluates the forward model on sorted samples in [-1, 1]. Throws
/// NonMonotoneCurve unless the outputs are strictly increasing.
CalibrationCurve forward_curve(const ForwardModel& model, std::span<const double> dp_samples);

/// dp with model(dp) = dp_prime_measured, by bisection on the forward model
/// bracketed by the curve samples. Throws OutOfRange if the measurement lies
/// outside the curve by more than 1e-9.
double invert_ee(double dp_prime_measured, const ForwardModel& model,
                 const CalibrationCurve& curve);

struct TableCell {
    double zeta = 0.0;
    double omega32_abs = 0.0;
    double dp = 0.0;
    double dp_prime = 0.0;
};

struct TableSetup {
    MoleculeParams mol = MoleculeParams::default_closed();
    double probe_abs = 0.1;
    double dipole_ratio = 1.0;
    EngineOptions options{};
};

/// dp' for every (omega32, dp, zeta) combination, ordered omega32-major, then
/// dp, then zeta.
std::vector<TableCell> table_one(std::span<const double> zeta_list,
                                 std::span<const double> omega32_list,
                                 std::span<const double> dp_list, const TableSetup& setup);

}  // namespace chiral::spectra
