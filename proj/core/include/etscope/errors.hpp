#pragma once

#include <stdexcept>
#include <string>

namespace etscope {

/// Thrown when a figure-of-merit cannot be extracted from a record.
/// `fom()` names the failing quantity so callers can report it.
class ExtractionError : public std::runtime_error {
public:
    ExtractionError(std::string fom, const std::string& what)
        : std::runtime_error(fom + ": " + what), fom_(std::move(fom)) {}

    const std::string& fom() const noexcept { return fom_; }

private:
    std::string fom_;
};

/// Thrown on malformed or contradictory run configuration; carries the
/// offending key (or flag) for exit-code-2 style reporting.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace etscope
