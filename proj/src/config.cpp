#include "blochlab/config.hpp"

#include <cstdlib>
#include <set>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace blochlab {

Config load_config(const std::string& path) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }

    static const std::set<std::string> known = {"grid.max_shell", "grid.base_angular", "thresholds.divergence",
                                                "thresholds.compact_tol", "quadrature.tol"};
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            if (!known.contains(section + "." + key))
                throw ConfigError("config: unknown key '" + section + "." + key + "'");
        }
    }

    // get() with a default swallows conversion errors, so read present keys
    // through get_value, which throws on malformed values.
    auto read = [&](const char* key, auto& slot) {
        if (const auto child = tree.get_child_optional(key))
            slot = child->get_value<std::remove_reference_t<decltype(slot)>>();
    };
    Config cfg;
    try {
        read("grid.max_shell", cfg.grid.max_shell);
        read("grid.base_angular", cfg.grid.base_angular);
        read("thresholds.divergence", cfg.thresholds.divergence);
        read("thresholds.compact_tol", cfg.thresholds.compact_tol);
        read("quadrature.tol", cfg.quadrature.abs_tol);
    } catch (const pt::ptree_error& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    if (cfg.grid.max_shell < 4 || cfg.grid.base_angular < 64)
        throw ConfigError("config: grid.max_shell must be >= 4 and grid.base_angular >= 64");
    if (!(cfg.thresholds.divergence > 0) || !(cfg.thresholds.compact_tol > 0) || !(cfg.quadrature.abs_tol > 0))
        throw ConfigError("config: thresholds and tolerances must be positive");
    return cfg;
}

Config resolve_config(const std::optional<std::string>& path) {
    if (path) return load_config(*path);
    if (const char* env = std::getenv("BLOCHLAB_CONFIG"); env && *env) return load_config(env);
    return {};
}

}  // namespace blochlab
