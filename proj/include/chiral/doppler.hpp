// Thermal (Doppler) averaging over molecular velocity classes.
//
// A molecule with axial velocity v sees each transition shifted by k_ij v.
// Writing v = u_D x, the Maxwellian average becomes
//   <f> = pi^{-1/2} Int f(x) exp(-x^2) dx,
// evaluated by Gauss-Hermite quadrature. Widths are given as k_ij u_D in units
// gamma; co-propagating fields fix k31 = k21 + k32.

#pragma once

#include "chiral/analytic.hpp"
#include "chiral/errors.hpp"
#include "chiral/model.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

namespace chiral::doppler {

/// Default quadrature order. Velocity classes resolve Lorentzian features of
/// width gamma / (k u_D), which Gauss-Hermite nodes sample slowly; 2048 nodes
/// keep the doubling check below 1e-6 for k31 u_D up to 5 gamma.
inline constexpr int kDefaultNodes = 2048;

class DopplerConfig {
public:
    DopplerConfig(double ku_d21, double ku_d32, int node_count = kDefaultNodes);

    double ku_d21() const { return ku_d21_; }
    double ku_d32() const { return ku_d32_; }
    double ku_d31() const { return ku_d21_ + ku_d32_; }
    int node_count() const { return node_count_; }

    DopplerConfig with_nodes(int node_count) const;

private:
    double ku_d21_;
    double ku_d32_;
    int node_count_;
};

/// Nodes x_i and weights w_i with sum_i w_i f(x_i) ~ pi^{-1/2} Int f(x) e^{-x^2} dx.
/// The weights therefore sum to one.
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussHermiteRule gauss_hermite(int n);

/// Shifts seen by the velocity class at reduced velocity x = v / u_D.
struct VelocityClass {
    double x = 0.0;
    double shift21 = 0.0;
    double shift31 = 0.0;
    double shift32 = 0.0;

    analytic::DetuningShift probe_shift() const { return {shift21, shift31}; }
};

VelocityClass velocity_class(const DopplerConfig& config, double x);

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& m) {
    return m.cwiseAbs().maxCoeff();
}

template <class Response>
auto quadrature(Response& response, const DopplerConfig& config, int nodes) {
    const GaussHermiteRule rule = gauss_hermite(nodes);
    using Value = std::decay_t<decltype(response(velocity_class(config, 0.0)))>;
    Value sum = response(velocity_class(config, rule.nodes[0])) * rule.weights[0];
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) {
        sum = sum + response(velocity_class(config, rule.nodes[i])) * rule.weights[i];
    }
    return sum;
}

}  // namespace detail

/// Relative tolerance of the node-doubling convergence test.
inline constexpr double kQuadratureTol = 1e-6;

/// Velocity-averaged response. The result at node_count is compared against
/// 2 * node_count; QuadratureNotConverged is thrown if they differ by more
/// than kQuadratureTol relative. A zero Doppler width returns the rest-frame
/// response directly.
template <class Response>
auto doppler_average(Response&& response, const DopplerConfig& config) {
    if (config.ku_d21() == 0.0 && config.ku_d32() == 0.0) {
        return response(velocity_class(config, 0.0));
    }
    const auto coarse = detail::quadrature(response, config, config.node_count());
    const auto fine = detail::quadrature(response, config, 2 * config.node_count());
    const double scale = std::max(detail::magnitude(fine), 1e-300);
    const double gap = detail::magnitude(fine - coarse) / scale;
    if (gap > kQuadratureTol) {
        std::ostringstream msg;
        msg << "Gauss-Hermite quadrature not converged at " << config.node_count()
            << " nodes (relative change " << gap << " on doubling)";
        throw QuadratureNotConverged(msg.str());
    }
    return fine;
}

/// Velocity-averaged first-order coherences of one enantiomer.
cplx averaged_sigma21(const MoleculeParams& mol, const DriveConfig& drive, int chirality_sign,
                      const DopplerConfig& config);

/// Velocity-averaged coupling matrix for linear propagation.
Eigen::Matrix2cd averaged_coupling(const MoleculeParams& mol, const MediumConfig& medium,
                                   double delta, cplx omega32, const DopplerConfig& config);

}  // namespace chiral::doppler
