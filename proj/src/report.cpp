#include "psimine/report.hpp"

#include <cstdio>
#include <sstream>

#include "psimine/property.hpp"

namespace psimine {

namespace {

std::string pct(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", v);
    return buf;
}

std::string len_str(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int consequent_index(const TraceTruth& tt, const Literal& lit) {
    int idx = tt.index_of(lit.pred);
    if (idx < 0) {
        throw PsilError("unknown consequent predicate '" + lit.pred + "'");
    }
    return idx;
}

}  // namespace

nlohmann::json interval_set_json(const IntervalSet& s) {
    auto arr = nlohmann::json::array();
    for (const auto& iv : s.parts()) {
        arr.push_back({iv.lo, iv.hi, iv.lo_closed, iv.hi_closed});
    }
    return arr;
}

std::vector<CheckRow> check_properties(const std::vector<PsiProperty>& props,
                                       const std::vector<TraceTruth>& traces) {
    std::vector<CheckRow> rows;
    for (const auto& prop : props) {
        CheckRow row;
        row.text = print_psil(prop);
        double influence_len = 0;
        for (const auto& tt : traces) {
            influence_len +=
                influence_set(stage_sequence(prop.antecedent, tt)).length();
            row.match_len += match_ends(prop, tt).length();
            double counter = counterexample_set(prop, tt).length();
            row.per_trace_counter.push_back(counter);
            row.counter_len += counter;
        }
        row.vacuous = influence_len <= 0.0;
        row.holds = !row.vacuous && row.counter_len <= 1e-9;
        rows.push_back(std::move(row));
    }
    return rows;
}

RankReport rank_properties(const std::vector<PsiProperty>& props,
                           const std::vector<TraceTruth>& traces) {
    std::vector<double> durations;
    for (const auto& tt : traces) durations.push_back(tt.duration);

    RankReport report;
    std::vector<IntervalSet> covered(traces.size());
    for (const auto& prop : props) {
        RankRow row;
        row.text = print_psil(prop);
        DelayInterval tail = prop.consequent_delay.value_or(DelayInterval{0, 0});
        std::vector<IntervalSet> influence;
        std::vector<const IntervalSet*> cons;
        for (const auto& tt : traces) {
            std::size_t ci =
                static_cast<std::size_t>(consequent_index(tt, prop.consequent));
            cons.push_back(prop.consequent.positive ? &tt.pos[ci] : &tt.neg[ci]);
            influence.push_back(influence_set(stage_sequence(prop.antecedent, tt)));
        }
        row.support_pct = support_pct(influence, durations);
        row.correlation_pct = correlation_pct(influence, tail, cons);
        for (std::size_t t = 0; t < traces.size(); ++t) {
            covered[t] = set_union(
                covered[t],
                set_intersect(minkowski_sum(influence[t], tail), *cons[t]));
        }
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const RankRow& a, const RankRow& b) {
                  if (a.correlation_pct != b.correlation_pct) {
                      return a.correlation_pct > b.correlation_pct;
                  }
                  if (a.support_pct != b.support_pct) {
                      return a.support_pct > b.support_pct;
                  }
                  return a.text < b.text;
              });
    report.coverage_pct = coverage_pct(covered, durations);
    return report;
}

std::string render_mine_text(const MineResult& result,
                             const std::vector<std::string>& names, bool quiet) {
    std::ostringstream out;
    if (quiet) {
        for (const auto& p : result.properties) out << p.text << "\n";
        return out.str();
    }
    out << "mined " << result.properties.size()
        << (result.properties.size() == 1 ? " property\n" : " properties\n");
    for (const auto& p : result.properties) {
        out << "  " << p.text << "\n"
            << "    [support " << pct(p.support_pct) << ", correlation "
            << pct(p.correlation_pct) << ", reach " << p.pseudo_index << "]\n";
    }
    out << "coverage " << pct(result.coverage_pct) << "\n";
    const MineStats& s = result.stats;
    out << "tree: nodes=" << s.nodes << " deepest=" << s.deepest
        << " stops: pure=" << s.stop_pure << " depth=" << s.stop_depth
        << " support=" << s.stop_support << " correlation=" << s.stop_correlation
        << " no-gain=" << s.stop_no_gain << " empty=" << s.stop_empty << "\n";
    (void)names;
    return out.str();
}

nlohmann::json mine_json(const MineResult& result,
                         const std::vector<std::string>& names) {
    nlohmann::json doc;
    doc["command"] = "mine";
    auto props = nlohmann::json::array();
    for (const auto& p : result.properties) {
        nlohmann::json jp;
        jp["text"] = p.text;
        jp["verdict"] = print_literal(p.prop.consequent);
        jp["pseudo_index"] = p.pseudo_index;
        jp["support_pct"] = p.support_pct;
        jp["correlation_pct"] = p.correlation_pct;
        auto path = nlohmann::json::array();
        for (const auto& c : p.path) {
            path.push_back({{"pred", names[static_cast<std::size_t>(c.pred)]},
                            {"positive", c.positive},
                            {"bucket", c.bucket}});
        }
        jp["path"] = path;
        props.push_back(std::move(jp));
    }
    doc["properties"] = std::move(props);
    doc["coverage_pct"] = result.coverage_pct;
    const MineStats& s = result.stats;
    doc["stats"] = {{"nodes", s.nodes},
                    {"deepest", s.deepest},
                    {"stops",
                     {{"pure", s.stop_pure},
                      {"depth", s.stop_depth},
                      {"support", s.stop_support},
                      {"correlation", s.stop_correlation},
                      {"no_gain", s.stop_no_gain},
                      {"empty", s.stop_empty}}}};
    return doc;
}

std::string render_check_text(const std::vector<CheckRow>& rows, bool quiet) {
    std::ostringstream out;
    int hold = 0, violated = 0, vacuous = 0;
    for (const auto& r : rows) {
        const char* verdict =
            r.vacuous ? "vacuous" : (r.holds ? "holds" : "violated");
        if (r.vacuous) {
            ++vacuous;
        } else if (r.holds) {
            ++hold;
        } else {
            ++violated;
        }
        if (quiet) {
            out << verdict << "  " << r.text << "\n";
        } else {
            out << r.text << "\n";
            if (r.vacuous) {
                out << "    vacuous: no antecedent match\n";
            } else {
                out << "    match length " << len_str(r.match_len)
                    << ", counterexample length " << len_str(r.counter_len)
                    << ", " << verdict << "\n";
            }
        }
    }
    if (!quiet) {
        out << "summary: " << rows.size() << " checked, " << hold << " hold, "
            << violated << " violated, " << vacuous << " vacuous\n";
    }
    return out.str();
}

nlohmann::json check_json(const std::vector<CheckRow>& rows) {
    nlohmann::json doc;
    doc["command"] = "check";
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"text", r.text},
                       {"vacuous", r.vacuous},
                       {"holds", r.holds},
                       {"match_length", r.match_len},
                       {"counterexample_length", r.counter_len},
                       {"per_trace_counterexample", r.per_trace_counter}});
    }
    doc["properties"] = std::move(arr);
    return doc;
}

std::string render_rank_text(const RankReport& report, bool quiet) {
    std::ostringstream out;
    if (!quiet) out << " support  correlation  property\n";
    for (const auto& r : report.rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%7.2f%%  %10.2f%%  ", r.support_pct,
                      r.correlation_pct);
        out << buf << r.text << "\n";
    }
    if (!quiet) out << "coverage " << pct(report.coverage_pct) << "\n";
    return out.str();
}

nlohmann::json rank_json(const RankReport& report) {
    nlohmann::json doc;
    doc["command"] = "rank";
    auto arr = nlohmann::json::array();
    for (const auto& r : report.rows) {
        arr.push_back({{"text", r.text},
                       {"support_pct", r.support_pct},
                       {"correlation_pct", r.correlation_pct}});
    }
    doc["properties"] = std::move(arr);
    doc["coverage_pct"] = report.coverage_pct;
    return doc;
}

}  // namespace psimine
