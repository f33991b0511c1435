#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlkdv {

/// Invalid experiment configuration; carries the name of the offending field.
class config_error : public std::runtime_error {
public:
    config_error(const std::string& message, std::string field)
        : std::runtime_error(message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// State left the finite/bounded regime (blow-up guard or NaN/Inf sample).
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& message, long node, double value,
                     double time = std::nan(""))
        : std::runtime_error(message), node_(node), value_(value), time_(time) {}
    long node() const { return node_; }
    double value() const { return value_; }
    double time() const { return time_; }

private:
    long node_;
    double value_;
    double time_;
};

class max_steps_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class step_underflow_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nlkdv
