#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "d2dsim/montecarlo.hpp"
#include "d2dsim/selection.hpp"

namespace d2dsim {

/// Raised for malformed or out-of-range configuration; the message names
/// the offending key and line.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    Scenario scenario;
    std::optional<Topology> topology;
    std::string command = "sweep"; // sweep | select | match | validate
    std::string output_path = "out.csv";
    unsigned workers = 1;
};

/// Parses the flat sectioned key=value format described in the README
/// (sections [link], [scenario], [topology], [run]); unset keys keep their
/// defaults. Throws ConfigError on unknown keys or sections, duplicate
/// keys, malformed values, and range violations.
RunConfig parse_config(const std::string& text);

RunConfig parse_config_file(const std::string& path);

} // namespace d2dsim
