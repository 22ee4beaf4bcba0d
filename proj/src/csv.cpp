#include "snse/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "snse/errors.hpp"

namespace snse {

namespace {

class Writer {
  public:
    Writer(const std::string& path, std::uint64_t config_hash, std::uint64_t seed)
        : out_(path) {
        if (!out_) throw DiagnosticError("cannot open '" + path + "' for writing");
        char buf[80];
        std::snprintf(buf, sizeof(buf), "# config_hash=%016llx",
                      static_cast<unsigned long long>(config_hash));
        out_ << buf << "\n";
        std::snprintf(buf, sizeof(buf), "# seed=%llu",
                      static_cast<unsigned long long>(seed));
        out_ << buf << "\n";
    }

    void header(const std::vector<std::string>& cols) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            out_ << (i ? "," : "") << cols[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& vals) {
        char buf[40];
        for (std::size_t i = 0; i < vals.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%.17g", vals[i]);
            out_ << (i ? "," : "") << buf;
        }
        out_ << "\n";
    }

    void raw(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? "," : "");
            if (cells[i].find_first_of(",\"\n") == std::string::npos) {
                out_ << cells[i];
            } else {
                out_ << '"';
                for (char c : cells[i]) {
                    if (c == '"') out_ << '"';
                    out_ << c;
                }
                out_ << '"';
            }
        }
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace

void write_trajectory_csv(const std::string& path, const TrajectoryRecord& rec,
                          std::uint64_t config_hash) {
    Writer w(path, config_hash, rec.seed);
    w.header({"t", "norm_h_u", "norm_v_u", "norm_fracdelta_u", "norm_h_v", "norm_h_z",
              "gamma", "p_t", "dineq_residual"});
    for (const auto& r : rec.ledger)
        w.row({r.t, std::sqrt(r.u_sq), std::sqrt(r.u_v_sq), std::sqrt(r.u_frac_sq),
               std::sqrt(r.v_sq), std::sqrt(r.z_sq), r.gamma, r.p, r.dineq_residual});
}

void write_measure_csv(const std::string& path, const EmpiricalMeasure& mu,
                       std::uint64_t config_hash, std::uint64_t seed) {
    Writer w(path, config_hash, seed);
    w.header(mu.names);
    std::vector<double> row(mu.dim);
    for (std::size_t i = 0; i < mu.count(); ++i) {
        for (std::size_t c = 0; c < mu.dim; ++c) row[c] = mu.samples[i * mu.dim + c];
        w.row(row);
    }
}

void write_tightness_csv(const std::string& path, const TightnessReport& rep,
                         std::uint64_t config_hash, std::uint64_t seed) {
    Writer w(path, config_hash, seed);
    w.header({"R", "tail_mass", "markov_bound"});
    for (std::size_t i = 0; i < rep.radii.size(); ++i)
        w.row({rep.radii[i], rep.tail_mass[i], rep.markov_bound[i]});
}

void write_stabilization_csv(const std::string& path,
                             const std::vector<StabilizationRow>& rows,
                             std::uint64_t config_hash, std::uint64_t seed) {
    Writer w(path, config_hash, seed);
    w.header({"T", "distance_to_2T", "invariance_residual"});
    for (const auto& r : rows) w.row({r.T, r.distance_to_2T, r.invariance_residual});
}

void write_ou_moments_csv(const std::string& path, const OUMomentReport& rep,
                          std::uint64_t config_hash, std::uint64_t seed) {
    Writer w(path, config_hash, seed);
    w.header({"mode", "p", "empirical_moment", "formula_moment", "rel_error"});
    for (const auto& r : rep.rows)
        w.row({static_cast<double>(r.mode), rep.p, r.empirical, r.formula, r.rel_error});
}

void write_verify_csv(const std::string& path, const std::vector<CheckResult>& results,
                      std::uint64_t config_hash, std::uint64_t seed) {
    Writer w(path, config_hash, seed);
    w.header({"check", "passed", "stat", "value"});
    for (const auto& res : results) {
        w.raw({res.name, res.passed ? "1" : "0", "passed", res.passed ? "1" : "0"});
        for (const auto& [key, value] : res.stats)
            w.raw({res.name, res.passed ? "1" : "0", key, num(value)});
    }
}

void write_verify_text(const std::string& path, const std::vector<CheckResult>& results,
                       std::uint64_t config_hash, std::uint64_t seed) {
    std::ofstream out(path);
    if (!out) throw DiagnosticError("cannot open '" + path + "' for writing");
    char buf[80];
    std::snprintf(buf, sizeof(buf), "config_hash=%016llx seed=%llu",
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed));
    out << buf << "\n";
    int failed = 0;
    for (const auto& res : results) {
        out << (res.passed ? "PASS  " : "FAIL  ") << res.name << ": " << res.detail
            << "\n";
        if (!res.passed) ++failed;
    }
    out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size()
        << " checks passed\n";
}

int CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DiagnosticError("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!have_header) {
            table.columns = cells;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                row.push_back(std::stod(c));
            } catch (const std::exception&) {
                row.push_back(std::numeric_limits<double>::quiet_NaN());
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace snse
