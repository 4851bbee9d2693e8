// Reference dp' (percent) versus dp for the benchmark parameter set:
// radiative rates with Gamma_ij = 1, probes 0.1, Theta = 0.

#pragma once

#include <array>

namespace reference {

inline constexpr std::array<double, 3> kTableZeta{0.05, 0.1, 0.2};
inline constexpr std::array<double, 2> kTableOmega32{10.0, 100.0};
inline constexpr std::array<double, 5> kTableDp{0.0, 25.0, 50.0, 75.0, 100.0};

// [omega32 index][dp index][zeta index], values in percent.
inline constexpr double kTable[2][5][3] = {
    {{0.0, 0.0, 0.0},
     {24.44, 24.21, 23.75},
     {48.96, 48.59, 47.85},
     {73.66, 73.33, 72.66},
     {98.64, 98.62, 98.59}},
    {{0.0, 0.0, 0.0},
     {24.77, 24.53, 24.07},
     {49.62, 49.25, 48.50},
     {74.66, 74.34, 73.67},
     {99.99, 99.99, 99.99}},
};

/// Dipole ratio of the shipped benchmark scenarios.
inline constexpr double kDipoleRatio = 0.2;

}  // namespace reference
