#include "chiral/doppler.hpp"

#include "chiral/propagation.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace chiral::doppler {

DopplerConfig::DopplerConfig(double ku_d21, double ku_d32, int node_count)
    : ku_d21_(ku_d21), ku_d32_(ku_d32), node_count_(node_count) {
    if (!std::isfinite(ku_d21) || ku_d21 < 0.0 || !std::isfinite(ku_d32) || ku_d32 < 0.0) {
        throw ConfigError("Doppler widths must be finite and >= 0");
    }
    if (node_count < 8 || node_count % 2 != 0) {
        throw ConfigError("Gauss-Hermite node count must be even and >= 8");
    }
}

DopplerConfig DopplerConfig::with_nodes(int node_count) const {
    return DopplerConfig(ku_d21_, ku_d32_, node_count);
}

// Nodes are the eigenvalues of the symmetric Jacobi matrix of the Hermite
// recurrence (eigenvalues only, O(n^2)). Weights are the Christoffel numbers
// 1 / sum_k p_k(x)^2 over the orthonormal polynomials, summed with rescaling so
// that the far tails underflow to zero instead of overflowing. Rules are
// cached since sweeps reuse the same few orders.
GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw ConfigError("Gauss-Hermite rule needs at least one node");
    static std::mutex mutex;
    static std::map<int, GaussHermiteRule> cache;
    std::lock_guard lock(mutex);
    if (const auto it = cache.find(n); it != cache.end()) return it->second;

    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(0.5 * k);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("Gauss-Hermite eigenproblem failed");
    }

    constexpr double kBig = 1e150;
    const double log_big = std::log(kBig);
    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = solver.eigenvalues()[i];
        // Orthonormal w.r.t. exp(-x^2)/sqrt(pi): p0 = 1, p1 = sqrt(2) x.
        double prev = 0.0, cur = 1.0, sum = 1.0, log_scale = 0.0;
        for (int k = 1; k < n; ++k) {
            const double next = (x * cur - std::sqrt(0.5 * (k - 1)) * prev) / std::sqrt(0.5 * k);
            prev = cur;
            cur = next;
            sum += cur * cur;
            if (std::abs(cur) > kBig) {
                prev /= kBig;
                cur /= kBig;
                sum /= kBig * kBig;
                log_scale += 2.0 * log_big;
            }
        }
        rule.nodes[i] = x;
        rule.weights[i] = std::exp(-std::log(sum) - log_scale);
    }
    for (int i = 0; i < n / 2; ++i) {
        const int j = n - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = rule.weights[j] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

VelocityClass velocity_class(const DopplerConfig& config, double x) {
    return {x, config.ku_d21() * x, config.ku_d31() * x, config.ku_d32() * x};
}

cplx averaged_sigma21(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign,
                      const DopplerConfig& config) {
    auto response = [&](const VelocityClass& v) {
        return analytic::weak_probe(mol, drive, chirality_sign, v.probe_shift()).sigma21;
    };
    return doppler_average(response, config);
}

Eigen::Matrix2cd averaged_coupling(const MoleculeParams& mol, const MediumConfig& medium,
                                   double delta, cplx omega32, const DopplerConfig& config) {
    auto response = [&](const VelocityClass& v) -> Eigen::Matrix2cd {
        return propagation::linear_coupling(mol, medium, delta, omega32,
                                            propagation::LambdaModel::Exact, v.probe_shift());
    };
    return doppler_average(response, config);
}

}  // namespace chiral::doppler
