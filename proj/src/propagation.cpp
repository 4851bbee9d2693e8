#include "chiral/propagation.hpp"

#include "chiral/bloch.hpp"
#include "chiral/errors.hpp"

#include <cmath>
#include <sstream>

namespace chiral::propagation {

namespace {

constexpr cplx I{0.0, 1.0};

void check_grid(std::span<const double> zeta_grid) {
    double prev = 0.0;
    for (double z : zeta_grid) {
        if (!std::isfinite(z) || z < prev) {
            throw ConfigError("zeta grid must be finite, non-negative and sorted");
        }
        prev = z;
    }
}

double phase_of(cplx field) { return field == cplx{} ? 0.0 : -std::arg(field); }

struct ProbeDerivative {
    cplx d21;
    cplx d31;
};

// Right-hand side of the reduced Maxwell equations with exact steady states.
ProbeDerivative full_rhs(const MediumConfig& medium, const MoleculeParams& mol, double delta,
                         cplx o21, cplx o31, cplx o32) {
    if (o21 == cplx{} && o31 == cplx{}) return {};
    const double th21 = phase_of(o21);
    const double th31 = phase_of(o31);
    const double th32 = phase_of(o32);
    const DriveConfig local(std::abs(o21), std::abs(o31), std::abs(o32), delta,
                            th32 + th21 - th31);

    const DensityMatrix left = bloch::steady_state(mol, local, Handedness::Left);
    const DensityMatrix right = bloch::steady_state(mol, local, Handedness::Right);
    const cplx s21 = medium.p_plus() * left(2, 1) + medium.p_minus() * right(2, 1);
    const cplx s31 = medium.p_plus() * left(3, 1) + medium.p_minus() * right(3, 1);

    const double G21 = mol.Gamma21();
    return {I * G21 * s21 * std::polar(1.0, -th21),
            I * medium.dipole_ratio() * G21 * s31 * std::polar(1.0, -th31)};
}

std::vector<FieldState> integrate_full(const MediumConfig& medium, const MoleculeParams& mol,
                                       const FieldState& entry, double delta,
                                       std::span<const double> zeta_grid, double step) {
    std::vector<FieldState> out;
    out.reserve(zeta_grid.size());
    cplx o21 = entry.omega21;
    cplx o31 = entry.omega31;
    const cplx o32 = entry.omega32;
    double zeta = 0.0;

    for (double target : zeta_grid) {
        const double span = target - zeta;
        if (span > 0.0) {
            const auto n = static_cast<long>(std::ceil(span / step - 1e-12));
            const double h = span / static_cast<double>(std::max(n, 1L));
            for (long k = 0; k < std::max(n, 1L); ++k) {
                const auto k1 = full_rhs(medium, mol, delta, o21, o31, o32);
                const auto k2 = full_rhs(medium, mol, delta, o21 + 0.5 * h * k1.d21,
                                         o31 + 0.5 * h * k1.d31, o32);
                const auto k3 = full_rhs(medium, mol, delta, o21 + 0.5 * h * k2.d21,
                                         o31 + 0.5 * h * k2.d31, o32);
                const auto k4 = full_rhs(medium, mol, delta, o21 + h * k3.d21,
                                         o31 + h * k3.d31, o32);
                const cplx n21 = o21 + (h / 6.0) * (k1.d21 + 2.0 * k2.d21 + 2.0 * k3.d21 + k4.d21);
                const cplx n31 = o31 + (h / 6.0) * (k1.d31 + 2.0 * k2.d31 + 2.0 * k3.d31 + k4.d31);

                for (auto [before, after] : {std::pair{o21, n21}, std::pair{o31, n31}}) {
                    const double mag = std::abs(before);
                    if (mag > 0.0 && std::abs(std::abs(after) - mag) > 0.2 * mag) {
                        std::ostringstream msg;
                        msg << "probe amplitude changed by more than 20% in one zeta step (h = "
                            << h << ")";
                        throw StepTooLarge(msg.str());
                    }
                }
                o21 = n21;
                o31 = n31;
            }
            zeta = target;
        }
        out.push_back({o21, o31, o32, target});
    }
    return out;
}

double relative_gap(const std::vector<FieldState>& a, const std::vector<FieldState>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i].omega21), std::abs(a[i].omega31), 1e-300});
        worst = std::max({worst, std::abs(a[i].omega21 - b[i].omega21) / scale,
                          std::abs(a[i].omega31 - b[i].omega31) / scale});
    }
    return worst;
}

}  // namespace

FieldState entry_fields(const DriveConfig& drive) {
    return {cplx(drive.omega21_abs(), 0.0), cplx(drive.omega31_abs(), 0.0),
            std::polar(drive.omega32_abs(), -drive.theta()), 0.0};
}

double loop_phase(const FieldState& fields) {
    return wrap_phase(phase_of(fields.omega32) + phase_of(fields.omega21) -
                      phase_of(fields.omega31));
}

Eigen::Matrix2cd linear_coupling(const MoleculeParams& mol, const MediumConfig& medium,
                                 double delta, cplx omega32, LambdaModel model,
                                 analytic::DetuningShift shift) {
    cplx lambda21;
    cplx lambda31;
    cplx Z;
    const double a32 = std::abs(omega32);
    if (model == LambdaModel::Exact) {
        lambda21 = cplx(mol.gamma12(), -(delta + shift.shift21));
        lambda31 = cplx(mol.gamma13(), -(delta + shift.shift31));
        Z = 0.25 * a32 * a32 + lambda21 * lambda31;
    } else {
        lambda21 = lambda31 = cplx(0.0, -delta);
        Z = cplx(0.0, -delta * (mol.gamma12() + mol.gamma13()));
    }
    if (std::abs(Z) < 1e-14) throw DegenerateDenominator("coupling denominator Z vanishes");

    const double dp = medium.delta_p();
    const double A = medium.dipole_ratio();
    const cplx pre = I * mol.Gamma21() / Z;
    Eigen::Matrix2cd K;
    K(0, 0) = pre * 0.5 * I * lambda31;
    K(0, 1) = pre * (-0.25 * std::conj(omega32) * dp);
    K(1, 0) = A * pre * (-0.25 * omega32 * dp);
    K(1, 1) = A * pre * 0.5 * I * lambda21;
    return K;
}

Eigen::Matrix2cd expm2(const Eigen::Matrix2cd& K, double t) {
    const cplx s = 0.5 * (K(0, 0) + K(1, 1));
    const cplx half_gap = 0.5 * (K(0, 0) - K(1, 1));
    const cplx q = std::sqrt(half_gap * half_gap + K(0, 1) * K(1, 0));
    const cplx qt = q * t;
    // sinh(q t)/q, with its series where q t is tiny (degenerate eigenvalues).
    cplx sinhc;
    if (std::abs(qt) < 1e-4) {
        const cplx qt2 = qt * qt;
        sinhc = t * (1.0 + qt2 / 6.0 + qt2 * qt2 / 120.0);
    } else {
        sinhc = std::sinh(qt) / q;
    }
    const Eigen::Matrix2cd shifted = K - s * Eigen::Matrix2cd::Identity();
    return std::exp(s * t) * (std::cosh(qt) * Eigen::Matrix2cd::Identity() + sinhc * shifted);
}

std::vector<FieldState> propagate_with_coupling(const Eigen::Matrix2cd& K,
                                                const FieldState& entry,
                                                std::span<const double> zeta_grid) {
    check_grid(zeta_grid);
    std::vector<FieldState> out;
    out.reserve(zeta_grid.size());
    const Eigen::Vector2cd start(entry.omega21, entry.omega31);
    for (double z : zeta_grid) {
        const Eigen::Vector2cd v = expm2(K, z) * start;
        out.push_back({v[0], v[1], entry.omega32, z});
    }
    return out;
}

std::vector<FieldState> propagate_linear(const MediumConfig& medium, const MoleculeParams& mol,
                                         const DriveConfig& drive_at_entry,
                                         std::span<const double> zeta_grid, LambdaModel model) {
    const FieldState entry = entry_fields(drive_at_entry);
    const Eigen::Matrix2cd K =
        linear_coupling(mol, medium, drive_at_entry.delta(), entry.omega32, model);
    return propagate_with_coupling(K, entry, zeta_grid);
}

std::vector<FieldState> propagate_full(const MediumConfig& medium, const MoleculeParams& mol,
                                       const DriveConfig& drive_at_entry,
                                       std::span<const double> zeta_grid,
                                       const FullOptions& options) {
    check_grid(zeta_grid);
    if (!(options.step > 0.0) || !std::isfinite(options.step)) {
        throw ConfigError("zeta step must be > 0");
    }
    const FieldState entry = entry_fields(drive_at_entry);
    auto out = integrate_full(medium, mol, entry, drive_at_entry.delta(), zeta_grid, options.step);
    if (options.self_check) {
        const auto fine =
            integrate_full(medium, mol, entry, drive_at_entry.delta(), zeta_grid, options.step / 2);
        const double gap = relative_gap(out, fine);
        if (gap > options.self_check_tol) {
            std::ostringstream msg;
            msg << "step-halving check failed: relative change " << gap << " > "
                << options.self_check_tol;
            throw StepTooLarge(msg.str());
        }
    }
    return out;
}

double transmission(const FieldState& entry, const FieldState& exit) {
    const double in = std::norm(entry.omega21);
    if (in == 0.0) throw ZeroEntryField("transmission undefined for a zero entry probe");
    return std::norm(exit.omega21) / in;
}

}  // namespace chiral::propagation
