#ifndef PSIMINE_CONFIG_HPP
#define PSIMINE_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "psimine/miner.hpp"
#include "psimine/trace.hpp"

namespace psimine {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Run configuration, normally loaded from a JSON file:
// {
//   "time_column": "time",
//   "predicates": [{"name": "P", "expr": "speed > 3.5"}, ...],
//   "target": "P",
//   "n": 5, "k": 1.0,
//   "max_depth": 20, "min_support": 0.0, "min_correlation": 0.0
// }
struct RunConfig {
    std::string time_column = "time";
    std::vector<Predicate> predicates;
    MinerConfig miner;
};

RunConfig parse_config(const std::string& text, const std::string& source);
RunConfig load_config(const std::string& path);

}  // namespace psimine

#endif
