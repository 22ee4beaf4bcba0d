#include "snse/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "snse/errors.hpp"
#include "snse/nse2d.hpp"
#include "snse/ou.hpp"

extern char** environ;

namespace snse {

namespace {

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "model.basis",        // sphere | torus | nse2d
        "model.n",            // truncation level (ignored for nse2d)
        "model.m",            // forced modes
        "model.grid",         // nse2d grid resolution
        "model.nu",
        "model.delta",
        "model.tensor",       // nse2d | random | zero
        "model.tensor_fill",  // entries for the random tensor
        "model.tensor_seed",
        "model.coriolis_omega",
        "model.f_amplitude",
        "model.f_profile",    // first | smooth
        "model.eta_trials",
        "noise.beta",
        "noise.sigma",
        "ou.alpha",           // number | auto
        "ou.target",          // absolute calibration target (default lambda1/4)
        "time.h",
        "time.t",
        "time.scheme",        // semi_implicit | explicit_euler
        "time.record_stride",
        "measure.burn_in",
        "measure.k_coeffs",
        "measure.p",
        "measure.state_cap",
        "measure.shift",
        "output.plots",
    };
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool known(const std::string& key) {
    const auto& keys = known_keys();
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' needs a number, got '" + value + "'");
    }
}

}  // namespace

bool Config::has(const std::string& key) const { return values.count(key) > 0; }

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : parse_double(key, it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
    const double x = get_double(key, static_cast<double>(fallback));
    const int i = static_cast<int>(x);
    if (static_cast<double>(i) != x)
        throw ConfigError("key '" + key + "' needs an integer");
    return i;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    const std::string v = lower(it->second);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("key '" + key + "' needs a boolean, got '" + it->second + "'");
}

std::string Config::canonical() const {
    std::string out;  // std::map iterates in sorted key order already
    for (const auto& [k, v] : values) out += k + "=" + v + "\n";
    return out;
}

std::uint64_t Config::hash() const { return fnv1a(canonical()); }

Config parse_config_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value', got '" + line + "'", line_no);
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        if (value.empty()) throw ConfigError("empty value for key '" + key + "'", line_no);
        if (!known(key)) throw ConfigError("unknown key '" + key + "'", line_no);
        if (cfg.values.count(key))
            throw ConfigError("duplicate key '" + key + "'", line_no);
        cfg.values[key] = value;
    }
    return cfg;
}

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Config cfg = parse_config_text(buf.str());
    apply_env_overrides(cfg);
    return cfg;
}

void apply_env_overrides(Config& cfg) {
    const std::string prefix = "SNSE_";
    for (char** env = environ; env != nullptr && *env != nullptr; ++env) {
        const std::string entry(*env);
        if (entry.rfind(prefix, 0) != 0) continue;
        const std::size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = lower(entry.substr(prefix.size(), eq - prefix.size()));
        const std::string value = entry.substr(eq + 1);
        const std::size_t us = name.find('_');
        if (us == std::string::npos)
            throw ConfigError("environment override " + entry.substr(0, eq) +
                              " has no section");
        name[us] = '.';
        if (!known(name))
            throw ConfigError("environment override targets unknown key '" + name + "'");
        cfg.values[name] = value;
    }
}

SpectralModel model_from_config(const Config& cfg, std::uint64_t seed) {
    SpectralModel model;
    const std::string basis_kind = lower(cfg.get_str("model.basis", "sphere"));
    const int m = cfg.get_int("model.m", 4);

    if (basis_kind == "nse2d") {
        const int grid = cfg.get_int("model.grid", 16);
        const Nse2dLayout layout = nse2d_layout(grid);
        model.basis = nse2d_basis(layout, m);
        model.tensor = nse2d_tensor(layout);
    } else {
        const int n = cfg.get_int("model.n", 8);
        model.basis = SpectralBasis::from_rule(basis_kind, n, m);
        const std::string tensor_kind = lower(cfg.get_str("model.tensor", "random"));
        if (tensor_kind == "zero") {
            model.tensor = BilinearTensor::zero(n);
        } else if (tensor_kind == "random") {
            const int fill = cfg.get_int("model.tensor_fill", 3 * n);
            Rng trng(make_stream(
                static_cast<std::uint64_t>(cfg.get_int("model.tensor_seed", 1)),
                StreamPurpose::tensor, 0, 0));
            model.tensor = BilinearTensor::random_sparse(n, fill, trng);
        } else if (tensor_kind == "nse2d") {
            throw ConfigError("model.tensor = nse2d requires model.basis = nse2d");
        } else {
            throw ConfigError("unknown model.tensor '" + tensor_kind + "'");
        }
    }
    const int N = model.basis.N;

    model.nu = cfg.get_double("model.nu", 1.0);
    model.delta = cfg.get_double("model.delta", 0.25);

    const double omega = cfg.get_double("model.coriolis_omega", 0.0);
    model.coriolis = omega == 0.0
                         ? CoriolisOperator::zero(N)
                         : CoriolisOperator::equal_lambda_pairs(model.basis, omega);

    model.f.assign(static_cast<std::size_t>(N), 0.0);
    const double amp = cfg.get_double("model.f_amplitude", 0.0);
    const std::string profile = lower(cfg.get_str("model.f_profile", "first"));
    if (amp != 0.0) {
        if (profile == "first") {
            model.f[0] = amp;
        } else if (profile == "smooth") {
            for (int l = 0; l < N; ++l)
                model.f[static_cast<std::size_t>(l)] =
                    amp / model.basis.lambda[static_cast<std::size_t>(l)];
        } else {
            throw ConfigError("unknown model.f_profile '" + profile + "'");
        }
    }

    model.noise = StableParams::uniform(cfg.get_double("noise.beta", 1.5), m,
                                        cfg.get_double("noise.sigma", 1.0));

    const int eta_trials = cfg.get_int("model.eta_trials", 20000);
    Rng eta_rng(make_stream(seed, StreamPurpose::tensor, 1, 0));
    const EtaEstimate eta = estimate_eta(model.basis, model.tensor, eta_trials, eta_rng);
    model.eta_hat = eta.certified;
    model.eta_lower = eta.sampled_lower;

    const std::string alpha_spec = lower(cfg.get_str("ou.alpha", "auto"));
    if (alpha_spec == "auto") {
        const CalibrationResult cal =
            calibrate_alpha(model.basis, model.eta_hat, model.noise, seed,
                            cfg.get_double("ou.target", 0.0));
        model.alpha = cal.alpha;
    } else {
        model.alpha = parse_double("ou.alpha", alpha_spec);
    }

    model.validate();
    return model;
}

IntegratorConfig integrator_from_config(const Config& cfg) {
    IntegratorConfig run;
    run.h = cfg.get_double("time.h", 1e-3);
    run.T = cfg.get_double("time.t", 10.0);
    run.scheme = scheme_from_string(cfg.get_str("time.scheme", "semi_implicit"));
    run.record_stride = cfg.get_int("time.record_stride", 1);
    run.validate();
    return run;
}

MeasureSettings measure_from_config(const Config& cfg, double T) {
    MeasureSettings ms;
    ms.burn_in = cfg.get_double("measure.burn_in", T / 10.0);
    ms.k_coeffs = cfg.get_int("measure.k_coeffs", 8);
    ms.p = cfg.get_double("measure.p", 1.2);
    const int cap = cfg.get_int("measure.state_cap", 1024);
    if (cap < 1) throw ConfigError("measure.state_cap must be >= 1");
    ms.state_cap = static_cast<std::size_t>(cap);
    ms.shift = cfg.get_double("measure.shift", 1.0);
    if (!(ms.burn_in >= 0.0 && ms.burn_in < T))
        throw ConfigError("measure.burn_in must sit in [0, time.t)");
    return ms;
}

}  // namespace snse
