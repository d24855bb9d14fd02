#include <doctest.h>

#include <sstream>

#include "bellscope/settings_io.hpp"

using namespace bellscope;

TEST_CASE("settings documents round-trip through parametrizations") {
    const int d = 3;
    std::array<UnitaryParams, 4> params;
    for (int s = 0; s < 4; ++s) {
        params[s].scheme = s % 2 == 0 ? Scheme::Full : Scheme::PhaseFourier;
        params[s].params.assign(param_count(params[s].scheme, d), 0.1 * (s + 1));
    }
    std::stringstream buffer;
    write_settings(buffer, d, params);
    const SettingsDocument doc = read_settings(buffer);
    CHECK(doc.d == d);
    for (int s = 0; s < 4; ++s) {
        const auto expected = parametrize_unitary(params[s], d);
        CHECK((doc.settings[s].matrix - expected.matrix).norm() < 1e-14);
    }
}

TEST_CASE("raw matrices are accepted when unitary") {
    const std::string text = R"({
      "schema": "bellscope/1",
      "d": 2,
      "settings": {
        "a1": {"matrix": [1,0, 0,0, 0,0, 1,0]},
        "a2": {"matrix": [0,0, 1,0, 1,0, 0,0]},
        "b1": {"scheme": "phase-fourier", "params": [0, 0]},
        "b2": {"scheme": "full", "params": [0.3, 0.1]}
      }
    })";
    std::istringstream in(text);
    const SettingsDocument doc = read_settings(in);
    CHECK(doc.settings[0].matrix(0, 0) == std::complex<double>(1, 0));
    CHECK(doc.settings[1].matrix(0, 1) == std::complex<double>(1, 0));
}

TEST_CASE("invalid documents are rejected") {
    SUBCASE("wrong schema") {
        std::istringstream in(R"({"schema": "other/1", "d": 2, "settings": {}})");
        CHECK_THROWS(read_settings(in));
    }
    SUBCASE("non-unitary matrix") {
        std::istringstream in(R"({
          "schema": "bellscope/1", "d": 2,
          "settings": {
            "a1": {"matrix": [1,0, 1,0, 0,0, 1,0]},
            "a2": {"scheme": "full", "params": [0, 0]},
            "b1": {"scheme": "full", "params": [0, 0]},
            "b2": {"scheme": "full", "params": [0, 0]}
          }
        })");
        CHECK_THROWS_AS(read_settings(in), std::invalid_argument);
    }
    SUBCASE("wrong parameter count") {
        std::istringstream in(R"({
          "schema": "bellscope/1", "d": 3,
          "settings": {
            "a1": {"scheme": "phase-fourier", "params": [0, 0]},
            "a2": {"scheme": "full", "params": [0,0,0,0,0,0]},
            "b1": {"scheme": "full", "params": [0,0,0,0,0,0]},
            "b2": {"scheme": "full", "params": [0,0,0,0,0,0]}
          }
        })");
        CHECK_THROWS_AS(read_settings(in), std::invalid_argument);
    }
}
