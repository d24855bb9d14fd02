#include "bellscope/settings_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace bellscope {

namespace {

const std::array<const char*, 4> kSettingKeys = {"a1", "a2", "b1", "b2"};

MeasurementUnitary parse_setting(const nlohmann::json& entry, int d) {
    if (entry.contains("matrix")) {
        const auto& flat = entry.at("matrix");
        if (!flat.is_array() || flat.size() != static_cast<size_t>(2 * d * d)) {
            throw std::invalid_argument("settings: matrix must hold 2*d*d numbers");
        }
        Eigen::MatrixXcd U(d, d);
        for (int m = 0; m < d; ++m) {
            for (int n = 0; n < d; ++n) {
                const int base = 2 * (m * d + n);
                U(m, n) = {flat[base].get<double>(), flat[base + 1].get<double>()};
            }
        }
        const double residual =
            (U.adjoint() * U - Eigen::MatrixXcd::Identity(d, d)).norm();
        if (residual > 1e-10) {
            throw std::invalid_argument("settings: matrix is not unitary");
        }
        return {d, std::move(U)};
    }
    UnitaryParams up;
    const std::string scheme = entry.at("scheme").get<std::string>();
    if (scheme == "full") {
        up.scheme = Scheme::Full;
    } else if (scheme == "phase-fourier") {
        up.scheme = Scheme::PhaseFourier;
    } else {
        throw std::invalid_argument("settings: unknown scheme '" + scheme + "'");
    }
    up.params = entry.at("params").get<std::vector<double>>();
    return parametrize_unitary(up, d);
}

}  // namespace

SettingsDocument read_settings(std::istream& in) {
    nlohmann::json doc = nlohmann::json::parse(in);
    if (doc.value("schema", "") != "bellscope/1") {
        throw std::invalid_argument("settings: expected schema \"bellscope/1\"");
    }
    SettingsDocument out;
    out.d = doc.at("d").get<int>();
    if (out.d < 2) {
        throw std::invalid_argument("settings: d must be >= 2");
    }
    const auto& settings = doc.at("settings");
    for (int s = 0; s < 4; ++s) {
        out.settings[s] = parse_setting(settings.at(kSettingKeys[s]), out.d);
    }
    return out;
}

SettingsDocument read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("settings: cannot open " + path);
    }
    return read_settings(in);
}

void write_settings(std::ostream& out, int d, const std::array<UnitaryParams, 4>& params) {
    nlohmann::json doc;
    doc["schema"] = "bellscope/1";
    doc["d"] = d;
    for (int s = 0; s < 4; ++s) {
        nlohmann::json entry;
        entry["scheme"] = params[s].scheme == Scheme::Full ? "full" : "phase-fourier";
        entry["params"] = params[s].params;
        doc["settings"][kSettingKeys[s]] = entry;
    }
    out << doc.dump(2) << "\n";
}

}  // namespace bellscope
