#pragma once

#include <stdexcept>
#include <string>

namespace dagsim {

/// Raised when a caller breaks an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A configuration value failed validation. `field()` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field))
    {
    }

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A metric is undefined for the given run (e.g. no blocks, zero total reward).
class MetricError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace dagsim
