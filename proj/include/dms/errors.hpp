#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dms {

// Base of everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Unusable input data: bad shape, non-numeric or non-finite cells, ragged rows.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

// A column whose scale estimate collapsed to zero, so CUSUM values are undefined.
// Columns are reported 1-based.
class DegenerateColumnError : public InputError {
public:
    DegenerateColumnError(std::size_t column, const std::string& detail)
        : InputError("column " + std::to_string(column) + " is degenerate: " + detail),
          column_(column) {}

    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

// The asymptotic calibration cannot be evaluated: trimming out of range, the
// weighted normalizer's p*log(h_n) <= 1, or a nonpositive plug-in variance.
class CalibrationError : public Error {
public:
    explicit CalibrationError(const std::string& what) : Error(what) {}

    CalibrationError(const std::string& what, double trace_r2, double eps_quad)
        : Error(what), trace_r2_(trace_r2), eps_quad_(eps_quad), has_plugins_(true) {}

    bool has_plugin_values() const { return has_plugins_; }
    double trace_r2() const { return trace_r2_; }
    double eps_quad() const { return eps_quad_; }

private:
    double trace_r2_ = 0.0;
    double eps_quad_ = 0.0;
    bool has_plugins_ = false;
};

// Malformed experiment or calibration configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

} // namespace dms
