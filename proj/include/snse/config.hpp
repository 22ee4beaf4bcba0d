#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "snse/integrator.hpp"
#include "snse/model.hpp"

namespace snse {

// Flat key = value configuration with dotted section prefixes. Keys are
// lowercased on parse; values keep their spelling. Unknown keys are an
// error (typos must not silently fall back to defaults). Environment
// variables SNSE_<SECTION>_<KEY> override file values.
struct Config {
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    // FNV-1a over the sorted canonical "key=value" lines of everything that
    // was explicitly set; embedded in every output file next to the seed.
    std::uint64_t hash() const;
    std::string canonical() const;
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

// Applies SNSE_* environment overrides: SNSE_TIME_H=1e-3 sets time.h (the
// first underscore after the prefix separates the section).
void apply_env_overrides(Config& cfg);

// Derived runtime settings that are not part of SpectralModel.
struct MeasureSettings {
    double burn_in = 0.0;  // resolved default: T / 10
    int k_coeffs = 8;
    double p = 1.2;         // tightness moment order
    std::size_t state_cap = 1024;
    double shift = 1.0;     // invariance pushforward time
};

// Builders from a parsed config. model_from_config runs the eta
// certification and, when ou.alpha = auto, the alpha calibration.
SpectralModel model_from_config(const Config& cfg, std::uint64_t seed);
IntegratorConfig integrator_from_config(const Config& cfg);
MeasureSettings measure_from_config(const Config& cfg, double T);

}  // namespace snse
