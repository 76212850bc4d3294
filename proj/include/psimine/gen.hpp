#ifndef PSIMINE_GEN_HPP
#define PSIMINE_GEN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace psimine {

// Synthetic benchmark scenarios. Every output byte is a pure function of
// (scenario, seed), so repeated runs are diff-identical.
struct GenOutput {
    std::vector<std::string> trace_files;  // written CSV paths
    std::string config_file;               // written mining config path
};

// Scenarios:
//   routes  - three delivery routes, three traces each; departure pulse D,
//             arrival window A, per-route travel-time band
//   pulse   - one long trace; pulses P answered by E after 3..5 time units,
//             plus unexplained E blips
//   traffic - three intersection traces; incident I1 leads to DELAY when the
//             spare lane is blocked and the rerouted sensor fires
GenOutput generate_scenario(const std::string& scenario, std::uint64_t seed,
                            const std::string& out_dir);

std::vector<std::string> gen_scenario_names();

}  // namespace psimine

#endif
