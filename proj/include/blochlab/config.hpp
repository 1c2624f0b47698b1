#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "blochlab/quadrature.hpp"

namespace blochlab {

struct GridParams {
    int max_shell = 14;
    int base_angular = 64;
};

struct Thresholds {
    double divergence = 1e3;   // sup level counted as divergence evidence
    double compact_tol = 1e-2; // boundary limsup level counted as a zero limit
};

struct Config {
    GridParams grid;
    Thresholds thresholds;
    QuadratureOptions quadrature;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Reads an INI-style file. Recognised keys: grid.max_shell,
/// grid.base_angular, thresholds.divergence, thresholds.compact_tol,
/// quadrature.tol. Unknown keys are rejected.
Config load_config(const std::string& path);

/// Explicit path if given, else $BLOCHLAB_CONFIG if set, else defaults.
Config resolve_config(const std::optional<std::string>& path);

}  // namespace blochlab
