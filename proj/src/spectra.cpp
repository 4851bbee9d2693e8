#include "chiral/spectra.hpp"

#include "chiral/errors.hpp"
#include "chiral/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace chiral::spectra {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Value at x of the cubic through the four samples nearest to it.
double local_cubic(std::span<const double> xs, std::span<const double> ys, double x) {
    const auto n = static_cast<long>(xs.size());
    const long upper = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
    long first = std::clamp(upper - 2, 0L, std::max(0L, n - 4));
    const long last = std::min(n, first + 4);
    double value = 0.0;
    for (long i = first; i < last; ++i) {
        double basis = 1.0;
        for (long j = first; j < last; ++j) {
            if (j != i) basis *= (x - xs[j]) / (xs[i] - xs[j]);
        }
        value += basis * ys[i];
    }
    return value;
}

double sample_at(std::span<const double> xs, std::span<const double> ys, double x) {
    if (xs.empty() || x < xs.front() - 1e-9 || x > xs.back() + 1e-9) {
        std::ostringstream msg;
        msg << "spectrum grid does not cover the characteristic detuning " << x;
        throw ConfigError(msg.str());
    }
    const auto it = std::lower_bound(xs.begin(), xs.end(), x - 1e-9);
    if (it != xs.end() && std::abs(*it - x) <= 1e-9) return ys[it - xs.begin()];
    if (xs.size() < 4) throw ConfigError("need at least four samples to interpolate a peak");
    return local_cubic(xs, ys, x);
}

void check_engine(const EngineOptions& options) {
    if (options.doppler && options.engine != Engine::Linear) {
        throw ConfigError("Doppler averaging requires the linear engine");
    }
}

}  // namespace

const char* to_string(Engine engine) { return engine == Engine::Linear ? "linear" : "full"; }

double transmission_at(const MediumConfig& medium, const MoleculeParams& mol,
                       const DriveConfig& drive_template, double delta,
                       const EngineOptions& options) {
    check_engine(options);
    const DriveConfig drive = drive_template.with_delta(delta);
    const std::array<double, 1> grid{medium.zeta()};
    const auto entry = propagation::entry_fields(drive);

    if (options.engine == Engine::Full) {
        const auto states = propagation::propagate_full(medium, mol, drive, grid, options.full);
        return propagation::transmission(entry, states.back());
    }
    if (options.doppler) {
        const Eigen::Matrix2cd K =
            doppler::averaged_coupling(mol, medium, delta, entry.omega32, *options.doppler);
        const auto states = propagation::propagate_with_coupling(K, entry, grid);
        return propagation::transmission(entry, states.back());
    }
    const auto states = propagation::propagate_linear(medium, mol, drive, grid, options.lambda);
    return propagation::transmission(entry, states.back());
}

PeakSummary summarize_peaks(double h_plus, double h_minus) {
    const double total = h_plus + h_minus;
    if (!(total >= 1e-12)) {
        throw DegenerateSpectrum("characteristic peaks vanish: no absorbing medium");
    }
    PeakSummary out;
    out.h_plus = h_plus;
    out.h_minus = h_minus;
    out.h_tilde_plus = h_plus / total;
    out.h_tilde_minus = 1.0 - out.h_tilde_plus;
    out.dp_prime = out.h_tilde_plus - out.h_tilde_minus;
    return out;
}

PeakSummary extract_peaks(std::span<const double> delta, std::span<const double> absorption,
                          double omega32_abs) {
    if (delta.size() != absorption.size()) {
        throw ConfigError("detuning and absorption columns differ in length");
    }
    if (!std::is_sorted(delta.begin(), delta.end())) {
        throw ConfigError("detuning grid must be sorted");
    }
    const double h_plus = sample_at(delta, absorption, -0.5 * omega32_abs);
    const double h_minus = sample_at(delta, absorption, 0.5 * omega32_abs);
    return summarize_peaks(h_plus, h_minus);
}

PeakSummary characteristic_peaks(const MediumConfig& medium, const MoleculeParams& mol,
                                 const DriveConfig& drive_template,
                                 const EngineOptions& options) {
    const double half_split = 0.5 * drive_template.omega32_abs();
    const double h_plus = 1.0 - transmission_at(medium, mol, drive_template, -half_split, options);
    const double h_minus = 1.0 - transmission_at(medium, mol, drive_template, half_split, options);
    return summarize_peaks(h_plus, h_minus);
}

SpectrumResult sweep(const MediumConfig& medium, const MoleculeParams& mol,
                     const DriveConfig& drive_template, std::span<const double> delta_grid,
                     const EngineOptions& options) {
    check_engine(options);
    if (!std::is_sorted(delta_grid.begin(), delta_grid.end())) {
        throw ConfigError("detuning grid must be sorted");
    }
    for (double d : delta_grid) {
        if (!std::isfinite(d)) throw ConfigError("detuning grid must be finite");
    }

    // Grid points followed by the two characteristic detunings.
    const double half_split = 0.5 * drive_template.omega32_abs();
    std::vector<double> detunings(delta_grid.begin(), delta_grid.end());
    detunings.push_back(-half_split);
    detunings.push_back(half_split);

    const auto transmissions = parallel_map<double>(
        detunings.size(),
        [&](std::size_t i) {
            return transmission_at(medium, mol, drive_template, detunings[i], options);
        },
        options.threads);

    const std::size_t n = delta_grid.size();
    SpectrumResult out;
    out.delta.assign(delta_grid.begin(), delta_grid.end());
    out.transmission.assign(transmissions.begin(), transmissions.begin() + n);
    out.absorption.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.absorption[i] = 1.0 - out.transmission[i];

    const double h_plus = 1.0 - transmissions[n];
    const double h_minus = 1.0 - transmissions[n + 1];
    out.plus.location = -half_split;
    out.plus.height = h_plus;
    out.minus.location = half_split;
    out.minus.height = h_minus;

    double norm = kNaN;
    try {
        const PeakSummary peaks = summarize_peaks(h_plus, h_minus);
        out.plus.normalized = peaks.h_tilde_plus;
        out.minus.normalized = peaks.h_tilde_minus;
        out.dp_prime = peaks.dp_prime;
        norm = h_plus + h_minus;
    } catch (const DegenerateSpectrum&) {
        out.plus.normalized = out.minus.normalized = out.dp_prime = kNaN;
    }
    out.absorption_normalized.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.absorption_normalized[i] = out.absorption[i] / norm;
    return out;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) throw ConfigError("grid needs at least one point");
    if (points == 1) return {lo};
    std::vector<double> grid(points);
    const double step = (hi - lo) / (points - 1);
    for (int i = 0; i < points; ++i) grid[i] = lo + step * i;
    grid.back() = hi;
    return grid;
}

double ForwardModel::operator()(double delta_p) const {
    const MediumConfig medium = medium_template.with_delta_p(delta_p);
    return characteristic_peaks(medium, mol, drive, options).dp_prime;
}

std::vector<double> default_dp_samples() { return linspace(-1.0, 1.0, 41); }

CalibrationCurve forward_curve(const ForwardModel& model, std::span<const double> dp_samples) {
    if (dp_samples.empty()) throw ConfigError("calibration needs at least one sample");
    if (!std::is_sorted(dp_samples.begin(), dp_samples.end()) || dp_samples.front() < -1.0 ||
        dp_samples.back() > 1.0) {
        throw ConfigError("dp samples must be sorted and lie in [-1, 1]");
    }
    CalibrationCurve curve;
    curve.dp.assign(dp_samples.begin(), dp_samples.end());
    curve.dp_prime = parallel_map<double>(
        dp_samples.size(), [&](std::size_t i) { return model(dp_samples[i]); },
        model.options.threads);
    for (std::size_t i = 1; i < curve.dp_prime.size(); ++i) {
        if (!(curve.dp_prime[i] > curve.dp_prime[i - 1])) {
            std::ostringstream msg;
            msg << "dp' is not strictly increasing between dp = " << curve.dp[i - 1]
                << " and dp = " << curve.dp[i];
            throw NonMonotoneCurve(msg.str());
        }
    }
    return curve;
}

double invert_ee(double dp_prime_measured, const ForwardModel& model,
                 const CalibrationCurve& curve) {
    if (curve.dp.empty() || curve.dp.size() != curve.dp_prime.size()) {
        throw ConfigError("calibration curve is empty or malformed");
    }
    const double low = curve.dp_prime.front();
    const double high = curve.dp_prime.back();
    if (!std::isfinite(dp_prime_measured) || dp_prime_measured < low - 1e-9 ||
        dp_prime_measured > high + 1e-9) {
        std::ostringstream msg;
        msg << "dp' = " << dp_prime_measured << " outside calibrated range [" << low << ", "
            << high << "]";
        throw OutOfRange(msg.str());
    }
    if (dp_prime_measured <= low) return curve.dp.front();
    if (dp_prime_measured >= high) return curve.dp.back();

    const auto it =
        std::upper_bound(curve.dp_prime.begin(), curve.dp_prime.end(), dp_prime_measured);
    const std::size_t hi_index = static_cast<std::size_t>(it - curve.dp_prime.begin());
    double lo = curve.dp[hi_index - 1];
    double hi = curve.dp[hi_index];
    if (curve.dp_prime[hi_index - 1] == dp_prime_measured) return lo;

    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (model(mid) < dp_prime_measured) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<TableCell> table_one(std::span<const double> zeta_list,
                                 std::span<const double> omega32_list,
                                 std::span<const double> dp_list, const TableSetup& setup) {
    std::vector<TableCell> cells;
    for (double omega32 : omega32_list) {
        for (double dp : dp_list) {
            for (double zeta : zeta_list) cells.push_back({zeta, omega32, dp, 0.0});
        }
    }
    // Cells are independent; each one runs its two detunings serially.
    EngineOptions inner = setup.options;
    inner.threads = 1;
    const auto values = parallel_map<double>(
        cells.size(),
        [&](std::size_t i) {
            const TableCell& cell = cells[i];
            const DriveConfig drive(setup.probe_abs, setup.probe_abs, cell.omega32_abs, 0.0, 0.0);
            const auto medium = MediumConfig::from_delta_p(cell.dp, cell.zeta, setup.dipole_ratio);
            return characteristic_peaks(medium, setup.mol, drive, inner).dp_prime;
        },
        setup.options.threads);
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].dp_prime = values[i];
    return cells;
}

}  // namespace chiral::spectra
