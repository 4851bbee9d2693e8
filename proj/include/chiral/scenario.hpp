// JSON scenario files: one document per reproduction run.
//
// {
//   "molecule": {"Gamma31": 1, "Gamma21": 1, "Gamma32": 1,
//                "gamma12": 0.5, "gamma13": 1, "gamma23": 1.5},
//   "drive":    {"omega21": 0.1, "omega31": 0.1, "omega32": 10, "theta": 0,
//                "delta": -5, "handedness": "left"},
//   "medium":   {"p_plus": 0.75, "zeta": 0.2, "dipole_ratio": 1},
//   "sweep":    {"delta_min": -15, "delta_max": 15, "points": 301},
//   "engine":   "full",
//   "zeta_step": 0.01,
//   "doppler":  {"ku_d21": 2, "ku_d32": 2, "nodes": 2048},
//   "table":    {"zeta": [...], "omega32": [...], "dp": [...]},
//   "calibration": {"points": 41}
// }
//
// Every block is optional. Missing coherence rates follow the radiative
// relations of MoleculeParams::default_closed. Unknown keys are rejected.

#pragma once

#include "chiral/model.hpp"
#include "chiral/spectra.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace chiral {

struct SweepGrid {
    double delta_min = -15.0;
    double delta_max = 15.0;
    int points = 301;

    std::vector<double> grid() const;
};

struct TableGrid {
    std::vector<double> zeta{0.05, 0.1, 0.2};
    std::vector<double> omega32{10.0, 100.0};
    std::vector<double> dp{0.0, 0.25, 0.5, 0.75, 1.0};
};

struct Scenario {
    MoleculeParams mol = MoleculeParams::default_closed();
    DriveConfig drive{0.1, 0.1, 10.0, 0.0, 0.0};
    Handedness hand = Handedness::Left;
    MediumConfig medium{0.5, 0.5, 0.2, 1.0};
    SweepGrid sweep{};
    spectra::EngineOptions options{};
    TableGrid table{};
    int calibration_points = 41;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario load_scenario(const std::string& path);

}  // namespace chiral
