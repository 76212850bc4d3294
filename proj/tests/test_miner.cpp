#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "doctest.h"
#include "psimine/config.hpp"
#include "psimine/gen.hpp"
#include "psimine/miner.hpp"
#include "psimine/psil.hpp"
#include "psimine/trace.hpp"

using namespace psimine;
namespace fs = std::filesystem;

namespace {

IntervalSet ho(std::initializer_list<std::pair<double, double>> parts) {
    std::vector<Interval> ivs;
    for (auto [lo, hi] : parts) ivs.push_back(half_open(lo, hi));
    return IntervalSet(std::move(ivs));
}

struct Scenario {
    RunConfig cfg;
    std::vector<TraceTruth> truths;
    MineResult result;
};

const Scenario& traffic() {
    static Scenario s = [] {
        fs::path dir = fs::temp_directory_path() / "psimine_unit_traffic";
        fs::remove_all(dir);
        fs::create_directories(dir);
        GenOutput out = generate_scenario("traffic", 1, dir.string());
        Scenario sc;
        sc.cfg = load_config(out.config_file);
        for (const auto& f : out.trace_files) {
            sc.truths.push_back(booleanize(
                load_trace_csv(f, sc.cfg.time_column), sc.cfg.predicates));
        }
        sc.result = mine(sc.truths, sc.cfg.miner);
        return sc;
    }();
    return s;
}

void walk(const DecisionNode& node, const std::function<void(const DecisionNode&)>& fn) {
    fn(node);
    if (node.pos_child) walk(*node.pos_child, fn);
    if (node.neg_child) walk(*node.neg_child, fn);
}

}  // namespace

TEST_CASE("constraint sets track buckets, polarity blocks and path order") {
    ConstraintSet c;
    CHECK(c.empty());
    CHECK(c.smallest_bucket() == 0);

    ConstraintSet d = c.extended({1, true, 3}).extended({0, false, 1});
    CHECK_FALSE(d.empty());
    CHECK(d.smallest_bucket() == 1);
    CHECK(d.blocks(1, 3));
    CHECK(d.blocks(0, 1));       // either polarity blocks
    CHECK_FALSE(d.blocks(1, 1));
    CHECK_FALSE(d.blocks(0, 3));
    REQUIRE(d.items().size() == 2);
    CHECK(d.items()[0].pred == 1);  // insertion order is kept
    CHECK(d.items()[1].bucket == 1);
}

TEST_CASE("staging a constraint set merges delays across empty positions") {
    TraceTruth tt = make_truth(half_open(0, 10), {"P", "Q"},
                               {ho({{1, 2}}), ho({{4, 6}})});
    ConstraintSet c =
        ConstraintSet().extended({0, true, 3}).extended({1, true, 1});
    StagedSequence st = stage_constraints(c, tt, 0.5);
    REQUIRE(st.buckets.size() == 2);
    CHECK(st.buckets[0] == tt.pos[0]);  // highest position first
    CHECK(st.buckets[1] == tt.pos[1]);
    REQUIRE(st.delays.size() == 1);
    CHECK(st.delays[0].lo == doctest::Approx(0));
    CHECK(st.delays[0].hi == doctest::Approx(1.0));  // two-step gap

    StagedSequence root = stage_constraints(ConstraintSet(), tt, 0.5);
    REQUIRE(root.buckets.size() == 1);
    CHECK(root.buckets[0] == IntervalSet::single(tt.span));
    CHECK(root.delays.empty());
}

TEST_CASE("mining validates its inputs") {
    TraceTruth tt = make_truth(half_open(0, 10), {"E", "P"},
                               {ho({{0, 5}}), ho({{1, 2}})});
    MinerConfig cfg;
    cfg.target = "nope";
    CHECK_THROWS_AS(mine({tt}, cfg), std::invalid_argument);
    CHECK_THROWS_AS(mine({}, MinerConfig{}), std::invalid_argument);

    cfg.target = "E";
    cfg.n = -1;
    CHECK_THROWS_AS(mine({tt}, cfg), std::invalid_argument);
    cfg.n = 2;
    cfg.k = 0.0;
    CHECK_THROWS_AS(mine({tt}, cfg), std::invalid_argument);

    TraceTruth other = make_truth(half_open(0, 10), {"E", "X"},
                                  {ho({{0, 5}}), ho({{1, 2}})});
    cfg.k = 1.0;
    CHECK_THROWS_AS(mine({tt, other}, cfg), std::invalid_argument);
}

TEST_CASE("an always-true target is explained by the trivial property") {
    TraceTruth tt = make_truth(half_open(0, 10), {"E", "P"},
                               {ho({{0, 10}}), ho({{2, 3}})});
    MinerConfig cfg;
    cfg.target = "E";
    cfg.n = 3;
    MineResult res = mine({tt}, cfg);
    REQUIRE(res.properties.size() == 1);
    CHECK(res.properties[0].text == "true |-> ##[0:0] E");
    CHECK(res.properties[0].verdict_positive);
    CHECK(res.properties[0].support_pct == doctest::Approx(100.0));
    CHECK(res.properties[0].correlation_pct == doctest::Approx(100.0));
    CHECK(res.coverage_pct == doctest::Approx(100.0));
    CHECK(res.stats.nodes == 1);
    CHECK(res.stats.stop_pure == 1);
}

TEST_CASE("thresholds and the depth cap close nodes before splitting") {
    TraceTruth tt = make_truth(half_open(0, 10), {"E", "P"},
                               {ho({{0, 5}}), ho({{0, 2}})});
    MinerConfig cfg;
    cfg.target = "E";
    cfg.n = 1;

    SUBCASE("support threshold") {
        cfg.min_support_pct = 101.0;
        MineResult res = mine({tt}, cfg);
        CHECK(res.properties.empty());
        CHECK(res.stats.nodes == 1);
        CHECK(res.stats.stop_support == 1);
    }
    SUBCASE("correlation threshold") {
        cfg.min_correlation_pct = 101.0;
        MineResult res = mine({tt}, cfg);
        CHECK(res.properties.empty());
        CHECK(res.stats.nodes == 1);
        CHECK(res.stats.stop_correlation == 1);
    }
    SUBCASE("depth cap") {
        cfg.max_depth = 0;
        MineResult res = mine({tt}, cfg);
        CHECK(res.properties.empty());
        CHECK(res.stats.nodes == 1);
        CHECK(res.stats.stop_depth == 1);
    }
}

TEST_CASE("a split with one dead side closes that child as empty") {
    TraceTruth tt = make_truth(half_open(0, 10), {"E", "P"},
                               {ho({{0, 5}}), IntervalSet()});
    MinerConfig cfg;
    cfg.target = "E";
    cfg.n = 1;
    MineResult res = mine({tt}, cfg);
    CHECK(res.properties.empty());
    CHECK(res.stats.nodes == 3);
    CHECK(res.stats.stop_empty == 1);
    CHECK(res.stats.stop_no_gain == 1);
}

TEST_CASE("explaining the absence of the target uses the negated verdict") {
    TraceTruth tt = make_truth(half_open(0, 20), {"E", "P"},
                               {ho({{0, 10}}), ho({{12, 14}})});
    MinerConfig cfg;
    cfg.target = "E";
    cfg.n = 3;
    MineResult res = mine({tt}, cfg);

    bool found = false;
    for (const auto& mp : res.properties) {
        if (mp.text == "P |-> ##[0:3] !E") {
            found = true;
            CHECK_FALSE(mp.verdict_positive);
            REQUIRE(mp.path.size() == 1);
            CHECK(mp.path[0].bucket == 3);
            CHECK(mp.path[0].positive);
        }
    }
    CHECK(found);

    for (const auto& mp : res.properties) {
        double cex = counterexample_set(mp.prop, tt).length();
        CHECK(cex <= 1e-9);
    }
}

TEST_CASE("the pinned congestion property is mined from generated traffic") {
    const Scenario& s = traffic();
    REQUIRE_FALSE(s.result.properties.empty());

    const std::string want =
        "I1 ##[12:40] !LANE2 ##[0:5] !LANE1 && R3S3 |-> ##[0:30] DELAY";
    const MinedProperty* hit = nullptr;
    for (const auto& mp : s.result.properties) {
        if (mp.text == want) hit = &mp;
    }
    REQUIRE(hit != nullptr);
    CHECK(hit->verdict_positive);
    CHECK(std::abs(hit->support_pct - 2.83) < 0.01);
    CHECK(std::abs(hit->correlation_pct - 34.18) < 0.01);
    CHECK(hit->pseudo_index == 6);

    // root-to-leaf split order: I1@15, then !LANE2@7, !LANE1@6, R3S3@6
    const auto& names = s.truths.front().names;
    REQUIRE(hit->path.size() == 4);
    auto lit = [&](std::size_t i) {
        return std::tuple{names[static_cast<std::size_t>(hit->path[i].pred)],
                          hit->path[i].positive, hit->path[i].bucket};
    };
    CHECK(lit(0) == std::tuple{std::string("I1"), true, 15});
    CHECK(lit(1) == std::tuple{std::string("LANE2"), false, 7});
    CHECK(lit(2) == std::tuple{std::string("LANE1"), false, 6});
    CHECK(lit(3) == std::tuple{std::string("R3S3"), true, 6});

    // it is also the top-ranked property of the run
    CHECK(s.result.properties.front().text == want);
    CHECK(std::abs(s.result.coverage_pct - 26.62) < 0.01);
    CHECK(s.result.properties.size() == 47);
}

TEST_CASE("mined properties arrive ranked and structurally consistent") {
    const Scenario& s = traffic();
    int target = s.truths.front().index_of(s.cfg.miner.target);

    for (std::size_t i = 1; i < s.result.properties.size(); ++i) {
        const auto& a = s.result.properties[i - 1];
        const auto& b = s.result.properties[i];
        bool ordered =
            a.correlation_pct > b.correlation_pct ||
            (a.correlation_pct == b.correlation_pct &&
             (a.support_pct > b.support_pct ||
              (a.support_pct == b.support_pct && a.text <= b.text)));
        CHECK(ordered);
    }

    CHECK(s.result.stats.stop_pure ==
          static_cast<int>(s.result.properties.size()));

    for (const auto& mp : s.result.properties) {
        CHECK(print_psil(mp.prop) == mp.text);
        REQUIRE_FALSE(mp.path.empty());
        int smallest = mp.path[0].bucket;
        for (const auto& c : mp.path) {
            CHECK(c.pred != target);  // the target never splits a node
            smallest = std::min(smallest, c.bucket);
        }
        CHECK(mp.pseudo_index == smallest);
    }
}

TEST_CASE("the decision tree stops exactly as each node demands") {
    const Scenario& s = traffic();
    int pure = 0, fractional_zero_error = 0;
    walk(*s.result.root, [&](const DecisionNode& node) {
        if (!node.has_metrics) {
            CHECK(node.stop == StopReason::empty);
            return;
        }
        bool one_sided = node.metrics.mu_pos >= 1.0 - 1e-9 ||
                         node.metrics.mu_pos <= 1e-9;
        if (node.stop == StopReason::pure) {
            ++pure;
            CHECK(node.metrics.unified_error <= 1e-9);
            CHECK(one_sided);
            CHECK(node.verdict_positive == (node.metrics.mu_pos >= 0.5));
        }
        if (node.metrics.unified_error <= 1e-9 && !one_sided) {
            // zero error from overlap alone carries no sound verdict
            ++fractional_zero_error;
            CHECK(node.stop != StopReason::pure);
        }
    });
    CHECK(pure == static_cast<int>(s.result.properties.size()));
    CHECK(fractional_zero_error > 0);
}

TEST_CASE("every mined traffic property re-checks without counterexamples") {
    const Scenario& s = traffic();
    for (const auto& mp : s.result.properties) {
        double cex = 0;
        for (const auto& tt : s.truths) {
            cex += counterexample_set(mp.prop, tt).length();
        }
        CHECK(cex <= 1e-9);
    }
}

TEST_CASE("mining is deterministic") {
    const Scenario& s = traffic();
    MineResult again = mine(s.truths, s.cfg.miner);
    REQUIRE(again.properties.size() == s.result.properties.size());
    for (std::size_t i = 0; i < again.properties.size(); ++i) {
        CHECK(again.properties[i].text == s.result.properties[i].text);
    }
    CHECK(again.coverage_pct == doctest::Approx(s.result.coverage_pct));
}
