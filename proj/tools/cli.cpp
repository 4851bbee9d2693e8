#include "cli.hpp"

#include "chiral/bloch.hpp"
#include "chiral/errors.hpp"
#include "chiral/scenario.hpp"
#include "chiral/spectra.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace chiral::cli {

namespace {

using nlohmann::json;

struct Options {
    std::string config;
    std::string out;
    std::string engine;
    std::string spectrum;
    std::optional<double> dp_prime;
    std::optional<double> zeta;
    bool quiet = false;
};

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_spectrum_csv(std::ostream& os, const SpectrumResult& s) {
    os << "delta,T,I,I_norm\n";
    for (std::size_t i = 0; i < s.delta.size(); ++i) {
        os << fmt12(s.delta[i]) << ',' << fmt12(s.transmission[i]) << ','
           << fmt12(s.absorption[i]) << ',' << fmt12(s.absorption_normalized[i]) << '\n';
    }
}

json peaks_json(const spectra::PeakSummary& p, double omega32_abs) {
    return {{"delta_plus", -0.5 * omega32_abs}, {"delta_minus", 0.5 * omega32_abs},
            {"h_plus", p.h_plus},                {"h_minus", p.h_minus},
            {"h_tilde_plus", p.h_tilde_plus},    {"h_tilde_minus", p.h_tilde_minus},
            {"dp_prime", p.dp_prime}};
}

// Reads the delta and I columns of a spectrum CSV written by `spectrum`.
void read_spectrum_csv(const std::string& path, std::vector<double>& delta,
                       std::vector<double>& absorption) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spectrum file '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || line.rfind("delta,T,I", 0) != 0) {
        throw ConfigError("'" + path + "' is not a spectrum CSV (header delta,T,I,I_norm)");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string d, t, i;
        if (!std::getline(row, d, ',') || !std::getline(row, t, ',') || !std::getline(row, i, ',')) {
            throw ConfigError("malformed spectrum row: " + line);
        }
        try {
            delta.push_back(std::stod(d));
            absorption.push_back(std::stod(i));
        } catch (const std::exception&) {
            throw ConfigError("malformed spectrum row: " + line);
        }
    }
}

Scenario scenario_from(const Options& opt) {
    Scenario s = opt.config.empty() ? Scenario{} : load_scenario(opt.config);
    if (!opt.engine.empty()) {
        if (opt.engine == "linear") {
            s.options.engine = spectra::Engine::Linear;
        } else if (opt.engine == "full") {
            s.options.engine = spectra::Engine::Full;
        } else {
            throw ConfigError("--engine must be linear or full");
        }
    }
    if (opt.zeta) s.medium = s.medium.with_zeta(*opt.zeta);
    return s;
}

class Runner {
public:
    Runner(const Options& opt, std::ostream& out, std::ostream& err)
        : opt_(opt), out_(out), err_(err) {}

    std::ostream& sink() {
        if (opt_.out.empty()) return out_;
        if (!file_) {
            file_ = std::make_unique<std::ofstream>(opt_.out, std::ios::binary);
            if (!*file_) throw ConfigError("cannot write to '" + opt_.out + "'");
        }
        return *file_;
    }

    void note(const std::string& msg) {
        if (!opt_.quiet) err_ << msg << '\n';
    }

    void steady() {
        const Scenario s = scenario_from(opt_);
        const auto gen = bloch::build_liouvillian(s.mol, s.drive, s.hand);
        const DensityMatrix rho = bloch::steady_state(gen);
        json sigma = json::array();
        for (int i = 1; i <= 3; ++i) {
            json row = json::array();
            for (int j = 1; j <= 3; ++j) row.push_back({rho(i, j).real(), rho(i, j).imag()});
            sigma.push_back(row);
        }
        json doc = {{"handedness", to_string(s.hand)},
                    {"delta", s.drive.delta()},
                    {"theta", s.drive.theta()},
                    {"sigma", sigma},
                    {"trace", rho.trace()},
                    {"residual", bloch::residual(gen, rho)},
                    {"min_eigenvalue", rho.min_eigenvalue()}};
        sink() << doc.dump(2) << '\n';
    }

    void spectrum(bool with_doppler) {
        Scenario s = scenario_from(opt_);
        if (with_doppler) {
            if (!s.options.doppler) throw ConfigError("doppler-spectrum needs a 'doppler' block");
            s.options.engine = spectra::Engine::Linear;
        } else {
            s.options.doppler.reset();
        }
        const auto grid = s.sweep.grid();
        const SpectrumResult result = spectra::sweep(s.medium, s.mol, s.drive, grid, s.options);
        write_spectrum_csv(sink(), result);
        note("spectrum: " + std::to_string(grid.size()) + " points, engine " +
             to_string(s.options.engine) + ", dp' = " + fmt12(result.dp_prime));
    }

    void peaks() {
        Scenario s = scenario_from(opt_);
        s.options.doppler.reset();
        spectra::PeakSummary p;
        if (!opt_.spectrum.empty()) {
            std::vector<double> delta, absorption;
            read_spectrum_csv(opt_.spectrum, delta, absorption);
            p = spectra::extract_peaks(delta, absorption, s.drive.omega32_abs());
        } else {
            p = spectra::characteristic_peaks(s.medium, s.mol, s.drive, s.options);
        }
        sink() << peaks_json(p, s.drive.omega32_abs()).dump(2) << '\n';
    }

    void invert() {
        if (!opt_.dp_prime) throw ConfigError("invert requires --dp-prime");
        Scenario s = scenario_from(opt_);
        s.options.doppler.reset();
        const spectra::ForwardModel model{s.medium, s.mol, s.drive, s.options};
        const auto samples = spectra::linspace(-1.0, 1.0, s.calibration_points);
        const auto curve = spectra::forward_curve(model, samples);
        const double dp = spectra::invert_ee(*opt_.dp_prime, model, curve);
        json doc = {{"dp_prime", *opt_.dp_prime},
                    {"dp", dp},
                    {"p_plus", 0.5 * (1.0 + dp)},
                    {"p_minus", 0.5 * (1.0 - dp)},
                    {"zeta", s.medium.zeta()},
                    {"engine", to_string(s.options.engine)}};
        sink() << doc.dump(2) << '\n';
    }

    void table() {
        Scenario s = scenario_from(opt_);
        s.options.doppler.reset();
        spectra::TableSetup setup;
        setup.mol = s.mol;
        setup.probe_abs = s.drive.omega21_abs();
        setup.dipole_ratio = s.medium.dipole_ratio();
        setup.options = s.options;
        auto zetas = s.table.zeta;
        if (opt_.zeta) zetas = {*opt_.zeta};
        const auto cells = spectra::table_one(zetas, s.table.omega32, s.table.dp, setup);
        std::ostream& os = sink();
        os << "omega32,dp,zeta,dp_prime\n";
        for (const auto& c : cells) {
            os << fmt12(c.omega32_abs) << ',' << fmt12(c.dp) << ',' << fmt12(c.zeta) << ','
               << fmt12(c.dp_prime) << '\n';
        }
        note("table: " + std::to_string(cells.size()) + " cells, engine " +
             to_string(s.options.engine));
    }

private:
    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
    std::unique_ptr<std::ofstream> file_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chirality-resolved coherent absorption spectra of cyclic three-level molecules",
                 args.empty() ? "chiral_spectra" : args.front()};
    app.require_subcommand(1);

    Options opt;
    auto common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config, "JSON scenario file");
        sub->add_option("--out", opt.out, "Output file (default stdout)");
        sub->add_option("--engine", opt.engine, "Propagation engine: linear|full")
            ->check(CLI::IsMember({"linear", "full"}));
        sub->add_option("--zeta", opt.zeta, "Override the optical depth");
        sub->add_flag("--quiet", opt.quiet, "Suppress diagnostics on stderr");
    };

    auto* steady = app.add_subcommand("steady", "Steady-state density matrix of one enantiomer");
    auto* spectrum = app.add_subcommand("spectrum", "Probe absorption spectrum as CSV");
    auto* peaks = app.add_subcommand("peaks", "Characteristic peak heights and dp' as JSON");
    auto* invert = app.add_subcommand("invert", "Enantiomeric difference from a measured dp'");
    auto* table = app.add_subcommand("table", "dp' versus dp table as CSV");
    auto* dspec = app.add_subcommand("doppler-spectrum", "Velocity-averaged spectrum as CSV");
    for (auto* sub : {steady, spectrum, peaks, invert, table, dspec}) common(sub);
    peaks->add_option("--spectrum", opt.spectrum, "Read peaks from a spectrum CSV");
    invert->add_option("--dp-prime", opt.dp_prime, "Measured peak difference dp'")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    if (args.empty()) argv.push_back("chiral_spectra");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitConfig;
    }

    try {
        Runner runner(opt, out, err);
        if (steady->parsed()) runner.steady();
        if (spectrum->parsed()) runner.spectrum(false);
        if (peaks->parsed()) runner.peaks();
        if (invert->parsed()) runner.invert();
        if (table->parsed()) runner.table();
        if (dspec->parsed()) runner.spectrum(true);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}

}  // namespace chiral::cli
