#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snse/integrator.hpp"
#include "snse/measure.hpp"
#include "snse/ou.hpp"
#include "snse/verify.hpp"

namespace snse {

// All writers emit the same preamble: '#' comment lines carrying the config
// hash and the seed (every output must be traceable to both), then a header
// row, then %.17g data rows.

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec,
                          std::uint64_t config_hash);

void write_measure_csv(const std::string& path, const EmpiricalMeasure& mu,
                       std::uint64_t config_hash, std::uint64_t seed);

void write_tightness_csv(const std::string& path, const TightnessReport& rep,
                         std::uint64_t config_hash, std::uint64_t seed);

struct StabilizationRow {
    double T = 0.0;
    double distance_to_2T = 0.0;
    double invariance_residual = 0.0;
};

void write_stabilization_csv(const std::string& path,
                             const std::vector<StabilizationRow>& rows,
                             std::uint64_t config_hash, std::uint64_t seed);

void write_ou_moments_csv(const std::string& path, const OUMomentReport& rep,
                          std::uint64_t config_hash, std::uint64_t seed);

// Long format: check, passed, stat, value. One row per stat plus one
// summary row per check (stat = "passed").
void write_verify_csv(const std::string& path, const std::vector<CheckResult>& results,
                      std::uint64_t config_hash, std::uint64_t seed);

// Human-readable companion with the one-line details.
void write_verify_text(const std::string& path, const std::vector<CheckResult>& results,
                       std::uint64_t config_hash, std::uint64_t seed);

// Minimal reader for the plot subcommand: skips '#' comments, returns the
// header cells and numeric rows (non-numeric cells become NaN).
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);

}  // namespace snse
