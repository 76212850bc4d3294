#ifndef PSIMINE_REPORT_HPP
#define PSIMINE_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "psimine/miner.hpp"

namespace psimine {

nlohmann::json interval_set_json(const IntervalSet& s);

// Re-evaluation of an already written property against traces.
struct CheckRow {
    std::string text;
    bool vacuous = false;      // antecedent never matches anywhere
    double match_len = 0;      // pooled consequent end-match length
    double counter_len = 0;    // pooled counterexample length
    bool holds = false;
    std::vector<double> per_trace_counter;
};

std::vector<CheckRow> check_properties(const std::vector<PsiProperty>& props,
                                       const std::vector<TraceTruth>& traces);

struct RankRow {
    std::string text;
    double support_pct = 0;
    double correlation_pct = 0;
};

struct RankReport {
    std::vector<RankRow> rows;  // correlation desc, support desc, text asc
    double coverage_pct = 0;
};

RankReport rank_properties(const std::vector<PsiProperty>& props,
                           const std::vector<TraceTruth>& traces);

std::string render_mine_text(const MineResult& result,
                             const std::vector<std::string>& names, bool quiet);
nlohmann::json mine_json(const MineResult& result,
                         const std::vector<std::string>& names);

std::string render_check_text(const std::vector<CheckRow>& rows, bool quiet);
nlohmann::json check_json(const std::vector<CheckRow>& rows);

std::string render_rank_text(const RankReport& report, bool quiet);
nlohmann::json rank_json(const RankReport& report);

}  // namespace psimine

#endif
