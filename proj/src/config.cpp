#include "psimine/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace psimine {

RunConfig parse_config(const std::string& text, const std::string& source) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(source + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError(source + ": config must be a JSON object");
    }

    RunConfig cfg;
    cfg.time_column = doc.value("time_column", cfg.time_column);
    if (!doc.contains("predicates") || !doc["predicates"].is_array() ||
        doc["predicates"].empty()) {
        throw ConfigError(source + ": no predicates");
    }
    for (const auto& jp : doc["predicates"]) {
        if (!jp.is_object() || !jp.contains("name") || !jp.contains("expr")) {
            throw ConfigError(source +
                                     ": each predicate needs 'name' and 'expr'");
        }
        Predicate p;
        p.name = jp["name"].get<std::string>();
        try {
            p.expr = parse_pred_expr(jp["expr"].get<std::string>());
        } catch (const std::exception& e) {
            throw ConfigError(source + ": predicate '" + p.name +
                                     "': " + e.what());
        }
        cfg.predicates.push_back(std::move(p));
    }
    cfg.miner.target = doc.value("target", std::string());
    cfg.miner.n = doc.value("n", cfg.miner.n);
    cfg.miner.k = doc.value("k", cfg.miner.k);
    cfg.miner.max_depth = doc.value("max_depth", cfg.miner.max_depth);
    cfg.miner.min_support_pct = doc.value("min_support", cfg.miner.min_support_pct);
    cfg.miner.min_correlation_pct =
        doc.value("min_correlation", cfg.miner.min_correlation_pct);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open config");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

}  // namespace psimine
