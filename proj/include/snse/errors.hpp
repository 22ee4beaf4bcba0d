#pragma once

#include <stdexcept>
#include <string>

namespace snse {

// Invalid parameters passed to a sampler or operator.
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A diagnostic was asked to run on data it cannot handle.
struct DiagnosticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Config file problems; carries a line number when one is known.
struct ConfigError : std::runtime_error {
    int line = 0;
    explicit ConfigError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? "config line " + std::to_string(line_no) + ": " + msg
                                         : "config: " + msg),
          line(line_no) {}
};

// The alpha search exhausted its grid without satisfying the damping bound.
struct CalibrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A trajectory produced a non-finite coefficient.
struct BlowUpError : std::runtime_error {
    double t;
    explicit BlowUpError(double t_fail)
        : std::runtime_error("trajectory blew up at t=" + std::to_string(t_fail)), t(t_fail) {}
};

}  // namespace snse
