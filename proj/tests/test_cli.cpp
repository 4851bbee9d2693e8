#include "chiral/scenario.hpp"
#include "chiral/spectra.hpp"
#include "cli.hpp"
#include "reference_table.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kConfigs = CHIRAL_CONFIG_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "chiral_spectra");
    std::ostringstream out, err;
    const int code = chiral::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    if (header) *header = line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "chiral_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("table reproduces the reference values") {
    const auto r = run({"table", "--config", kConfigs + "/paper_table1.json", "--quiet"});
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "omega32,dp,zeta,dp_prime");
    REQUIRE(rows.size() == 54);
    for (const auto& row : rows) {
        const double om = row[0], dp = row[1], zeta = row[2], dpp = row[3];
        const int o = om == 10.0 ? 0 : 1;
        int z = 0;
        while (reference::kTableZeta[z] != zeta) ++z;
        int d = 0;
        while (reference::kTableDp[d] != std::abs(dp) * 100.0) ++d;
        const double want = (dp < 0 ? -1.0 : 1.0) * reference::kTable[o][d][z];
        CHECK(std::abs(100.0 * dpp - want) <= 0.5);
        if (dp == 0.0) CHECK(std::abs(dpp) <= 1e-10);
    }
}

TEST_CASE("spectrum of an empty medium is fully transmitted") {
    const auto r = run({"spectrum", "--config", kConfigs + "/paper_fig3.json", "--zeta", "0",
                        "--engine", "linear", "--quiet"});
    REQUIRE(r.code == 0);
    std::string header;
    const auto rows = parse_csv(r.out, &header);
    CHECK(header == "delta,T,I,I_norm");
    CHECK(rows.size() == 301);
    for (const auto& row : rows) CHECK(row[1] == 1.0);
}

TEST_CASE("invert of zero gives zero") {
    const auto r = run({"invert", "--config", kConfigs + "/paper_fig3.json", "--dp-prime", "0",
                        "--engine", "linear", "--quiet"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(std::abs(doc["dp"].get<double>()) <= 1e-9);
}

TEST_CASE("exit codes") {
    CHECK(run({"spectrum", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"spectrum", "--engine", "quantum"}).code == 2);
    CHECK(run({"invert"}).code == 2);
    CHECK(run({"steady", "--config", "/nonexistent/file.json"}).code == 2);
    CHECK(run({"doppler-spectrum"}).code == 2);

    const auto out_of_range = run({"invert", "--config", kConfigs + "/paper_fig3.json",
                                   "--dp-prime", "1.5", "--engine", "linear"});
    CHECK(out_of_range.code == 3);
    CHECK(out_of_range.err.find("numerical failure") != std::string::npos);

    const auto empty = run({"peaks", "--zeta", "0"});
    CHECK(empty.code == 3);
}

TEST_CASE("spectrum output is byte-identical across runs and thread counts") {
    const std::vector<std::string> args{"spectrum", "--config", kConfigs + "/paper_fig3.json",
                                        "--quiet"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    const auto b = run(args);
    CHECK(a.out == b.out);
}

TEST_CASE("peaks read back from a written spectrum match the in-process values") {
    const fs::path csv = scratch("spectrum.csv");
    const auto s = run({"spectrum", "--config", kConfigs + "/paper_fig3.json", "--out",
                        csv.string(), "--quiet"});
    REQUIRE(s.code == 0);
    CHECK(s.out.empty());

    const auto from_file = run({"peaks", "--config", kConfigs + "/paper_fig3.json", "--spectrum",
                                csv.string()});
    REQUIRE(from_file.code == 0);
    const json doc = json::parse(from_file.out);

    const chiral::Scenario sc = chiral::load_scenario(kConfigs + "/paper_fig3.json");
    const auto direct = chiral::spectra::characteristic_peaks(sc.medium, sc.mol, sc.drive, sc.options);
    CHECK(std::abs(doc["h_plus"].get<double>() - direct.h_plus) <= 1e-12);
    CHECK(std::abs(doc["h_minus"].get<double>() - direct.h_minus) <= 1e-12);
    CHECK(std::abs(doc["dp_prime"].get<double>() - direct.dp_prime) <= 1e-12);

    const auto computed = run({"peaks", "--config", kConfigs + "/paper_fig3.json"});
    REQUIRE(computed.code == 0);
    CHECK(std::abs(json::parse(computed.out)["dp_prime"].get<double>() - direct.dp_prime) <= 1e-12);
    fs::remove(csv);
}

TEST_CASE("steady state report") {
    const auto r = run({"steady", "--config", kConfigs + "/paper_fig2.json"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["handedness"] == "left");
    CHECK(doc["trace"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(doc["residual"].get<double>() <= 1e-10);
    const double im21 = doc["sigma"][1][0][1].get<double>();
    CHECK(im21 == doctest::Approx(0.0668).epsilon(0.03));
}

TEST_CASE("Doppler spectrum") {
    const fs::path cfg = scratch("doppler.json");
    {
        json doc = json::parse(std::ifstream(kConfigs + "/paper_fig3.json"));
        doc["doppler"] = {{"ku_d21", 2.0}, {"ku_d32", 2.0}};
        doc["sweep"] = {{"delta_min", -10}, {"delta_max", 10}, {"points", 41}};
        std::ofstream(cfg) << doc.dump();
    }
    const auto r = run({"doppler-spectrum", "--config", cfg.string(), "--quiet"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() == 41);
    for (const auto& row : rows) {
        CHECK(row[1] >= 0.0);
        CHECK(row[1] <= 1.0 + 1e-9);
    }
    fs::remove(cfg);
}

TEST_CASE("scenario files reject unknown keys") {
    const fs::path cfg = scratch("bad.json");
    std::ofstream(cfg) << R"({"drive": {"omega21": 0.1, "omgea31": 0.1}})";
    const auto r = run({"steady", "--config", cfg.string()});
    CHECK(r.code == 2);
    fs::remove(cfg);
}
