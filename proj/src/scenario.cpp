#include "chiral/scenario.hpp"

#include "chiral/errors.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace chiral {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const char* where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) {
        throw ConfigError(std::string("'") + where + "' must be a JSON object");
    }
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : known) ok = ok || item.key() == key;
        if (!ok) {
            throw ConfigError(std::string("unknown key '") + item.key() + "' in '" + where + "'");
        }
    }
}

double number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> number_list(const json& obj, const char* key, std::vector<double> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_array()) throw ConfigError(std::string("'") + key + "' must be an array");
    std::vector<double> out;
    for (const json& e : v) {
        if (!e.is_number()) throw ConfigError(std::string("'") + key + "' must hold numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

int integer(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(std::string("'") + key + "' must be an integer");
    return v.get<int>();
}

MoleculeParams parse_molecule(const json& m) {
    reject_unknown(m, "molecule", {"Gamma31", "Gamma21", "Gamma32", "gamma12", "gamma13", "gamma23"});
    const double G31 = number(m, "Gamma31", 1.0);
    const double G21 = number(m, "Gamma21", 1.0);
    const double G32 = number(m, "Gamma32", 1.0);
    const MoleculeParams closed = MoleculeParams::default_closed(G31, G21, G32);
    return MoleculeParams(G31, G21, G32, number(m, "gamma12", closed.gamma12()),
                          number(m, "gamma13", closed.gamma13()),
                          number(m, "gamma23", closed.gamma23()));
}

Handedness parse_handedness(const json& d) {
    if (!d.contains("handedness")) return Handedness::Left;
    const json& v = d.at("handedness");
    if (v == "left") return Handedness::Left;
    if (v == "right") return Handedness::Right;
    throw ConfigError("'handedness' must be \"left\" or \"right\"");
}

spectra::Engine parse_engine(const json& v) {
    if (v == "linear") return spectra::Engine::Linear;
    if (v == "full") return spectra::Engine::Full;
    throw ConfigError("'engine' must be \"linear\" or \"full\"");
}

}  // namespace

std::vector<double> SweepGrid::grid() const {
    if (points < 1) throw ConfigError("sweep needs at least one point");
    if (!(delta_max >= delta_min)) throw ConfigError("sweep requires delta_max >= delta_min");
    return spectra::linspace(delta_min, delta_max, points);
}

Scenario parse_scenario(const json& doc) {
    reject_unknown(doc, "<root>",
                   {"molecule", "drive", "medium", "sweep", "engine", "zeta_step", "doppler",
                    "table", "calibration", "description"});
    Scenario s;
    if (doc.contains("molecule")) s.mol = parse_molecule(doc.at("molecule"));

    if (doc.contains("drive")) {
        const json& d = doc.at("drive");
        reject_unknown(d, "drive", {"omega21", "omega31", "omega32", "theta", "delta", "handedness"});
        s.drive = DriveConfig(number(d, "omega21", 0.1), number(d, "omega31", 0.1),
                              number(d, "omega32", 10.0), number(d, "delta", 0.0),
                              number(d, "theta", 0.0));
        s.hand = parse_handedness(d);
    }

    if (doc.contains("medium")) {
        const json& m = doc.at("medium");
        reject_unknown(m, "medium", {"p_plus", "p_minus", "zeta", "dipole_ratio"});
        const double p_plus = number(m, "p_plus", 0.5);
        const double p_minus = number(m, "p_minus", 1.0 - p_plus);
        s.medium = MediumConfig(p_plus, p_minus, number(m, "zeta", 0.2),
                                number(m, "dipole_ratio", 1.0));
    }

    if (doc.contains("sweep")) {
        const json& w = doc.at("sweep");
        reject_unknown(w, "sweep", {"delta_min", "delta_max", "points"});
        s.sweep.delta_min = number(w, "delta_min", s.sweep.delta_min);
        s.sweep.delta_max = number(w, "delta_max", s.sweep.delta_max);
        s.sweep.points = integer(w, "points", s.sweep.points);
        (void)s.sweep.grid();
    }

    if (doc.contains("engine")) s.options.engine = parse_engine(doc.at("engine"));
    s.options.full.step = number(doc, "zeta_step", s.options.full.step);
    if (!(s.options.full.step > 0.0)) throw ConfigError("'zeta_step' must be > 0");

    if (doc.contains("doppler")) {
        const json& dop = doc.at("doppler");
        reject_unknown(dop, "doppler", {"ku_d21", "ku_d31", "ku_d32", "nodes"});
        const doppler::DopplerConfig cfg(number(dop, "ku_d21", 0.0), number(dop, "ku_d32", 0.0),
                                         integer(dop, "nodes", doppler::kDefaultNodes));
        if (dop.contains("ku_d31") &&
            std::abs(number(dop, "ku_d31", 0.0) - cfg.ku_d31()) > 1e-12 * (1.0 + cfg.ku_d31())) {
            throw ConfigError("'ku_d31' must equal ku_d21 + ku_d32 (co-propagating fields)");
        }
        s.options.doppler = cfg;
    }

    if (doc.contains("table")) {
        const json& t = doc.at("table");
        reject_unknown(t, "table", {"zeta", "omega32", "dp"});
        s.table.zeta = number_list(t, "zeta", s.table.zeta);
        s.table.omega32 = number_list(t, "omega32", s.table.omega32);
        s.table.dp = number_list(t, "dp", s.table.dp);
    }

    if (doc.contains("calibration")) {
        const json& c = doc.at("calibration");
        reject_unknown(c, "calibration", {"points"});
        s.calibration_points = integer(c, "points", s.calibration_points);
        if (s.calibration_points < 2) throw ConfigError("calibration needs at least 2 points");
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed JSON in '" + path + "': " + e.what());
    }
    return parse_scenario(doc);
}

}  // namespace chiral
