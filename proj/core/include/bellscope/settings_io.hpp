#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "bellscope/quantum_model.hpp"

namespace bellscope {

// Measurement-settings document: JSON with top-level "schema": "bellscope/1",
// "d", and a "settings" object with entries a1, a2, b1, b2. Each entry is
// either {"matrix": [re, im, re, im, ...]} (row-major) or
// {"scheme": "full" | "phase-fourier", "params": [...]}.
struct SettingsDocument {
    int d = 0;
    std::array<MeasurementUnitary, 4> settings;  // a1, a2, b1, b2
};

SettingsDocument read_settings(std::istream& in);
SettingsDocument read_settings_file(const std::string& path);

void write_settings(std::ostream& out, int d, const std::array<UnitaryParams, 4>& params);

}  // namespace bellscope
