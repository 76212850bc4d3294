#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "psimine/metrics.hpp"

using namespace psimine;

namespace {

IntervalSet ho(std::initializer_list<std::pair<double, double>> parts) {
    std::vector<Interval> ivs;
    for (auto [lo, hi] : parts) ivs.push_back(half_open(lo, hi));
    return IntervalSet(std::move(ivs));
}

// bank whose slot 2 holds a fully covered positive side and a partially
// covered negative side against the two-piece influence set below
PseudoTargetBank split_bank() {
    PseudoTargetBank bank;
    IntervalSet pos = ho({{4.3, 9.8}});
    IntervalSet neg = ho({{4.3, 4.6}, {6.6, 7.4}});
    for (int i = 0; i < 3; ++i) {
        bank.pos.push_back(pos);
        bank.neg.push_back(neg);
        bank.ov.push_back(set_intersect(pos, neg));
    }
    return bank;
}

const IntervalSet kInfluence = ho({{4.3, 4.6}, {6.6, 9.8}});

}  // namespace

TEST_CASE("mean ratio is the covered fraction of the influence set") {
    CHECK(mean_ratio(ho({{4.3, 9.8}}), kInfluence) == doctest::Approx(1.0));
    CHECK(mean_ratio(ho({{4.3, 4.6}, {6.6, 7.4}}), kInfluence) ==
          doctest::Approx(11.0 / 35.0));
    CHECK(mean_ratio(ho({{15, 18}}), kInfluence) == doctest::Approx(0.0));
    CHECK_THROWS_AS(mean_ratio(ho({{1, 2}}), IntervalSet()),
                    std::invalid_argument);
}

TEST_CASE("entropy terms use the zero-at-the-ends convention") {
    CHECK(entropy_term(0.0) == doctest::Approx(0.0));
    CHECK(entropy_term(1.0) == doctest::Approx(0.0));
    CHECK(entropy_term(0.5) == doctest::Approx(0.5));
    CHECK(entropy_term(0.25) == doctest::Approx(0.5));
}

TEST_CASE("node metrics on the fully one-sided split") {
    std::vector<PseudoTargetBank> banks{split_bank()};
    NodeMetrics m = node_metrics({kInfluence}, banks, 2);

    CHECK(m.influence_len == doctest::Approx(3.5));
    CHECK(m.mu_pos == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.mu_neg == doctest::Approx(11.0 / 35.0));
    CHECK(std::abs(m.mu_neg - 0.3143) < 5e-4);
    CHECK(m.mu_overlap == doctest::Approx(11.0 / 35.0));

    double x = 11.0 / 35.0;
    double expected_error = entropy_term(1.0) + entropy_term(x);
    CHECK(m.error == doctest::Approx(expected_error).epsilon(1e-12));
    CHECK(std::abs(m.error - 0.5248015) < 5e-4);
    CHECK(std::abs(m.unified_error) <= 1e-9);
}

TEST_CASE("error of a balanced node is one bit, of a decided node zero") {
    PseudoTargetBank bank;
    bank.pos.push_back(ho({{0, 5}}));
    bank.neg.push_back(ho({{5, 10}}));
    bank.ov.push_back(IntervalSet());
    std::vector<PseudoTargetBank> banks{bank};

    NodeMetrics half = node_metrics({ho({{0, 10}})}, banks, 0);
    CHECK(half.mu_pos == doctest::Approx(0.5));
    CHECK(half.mu_neg == doctest::Approx(0.5));
    CHECK(half.error == doctest::Approx(1.0));
    CHECK(half.unified_error == doctest::Approx(1.0));

    NodeMetrics decided = node_metrics({ho({{0, 5}})}, banks, 0);
    CHECK(decided.mu_pos == doctest::Approx(1.0));
    CHECK(decided.mu_neg == doctest::Approx(0.0));
    CHECK(decided.error == doctest::Approx(0.0));
    CHECK(decided.unified_error == doctest::Approx(0.0));
}

TEST_CASE("metrics pool across traces by summed lengths") {
    PseudoTargetBank empty_bank;
    empty_bank.pos.push_back(IntervalSet());
    empty_bank.neg.push_back(ho({{0, 5}}));
    empty_bank.ov.push_back(IntervalSet());
    PseudoTargetBank full_bank;
    full_bank.pos.push_back(ho({{0, 5}}));
    full_bank.neg.push_back(IntervalSet());
    full_bank.ov.push_back(IntervalSet());

    std::vector<PseudoTargetBank> banks{empty_bank, full_bank};
    std::vector<IntervalSet> influence{ho({{0, 5}}), ho({{0, 5}})};
    NodeMetrics m = node_metrics(influence, banks, 0);
    CHECK(m.influence_len == doctest::Approx(10.0));
    CHECK(m.mu_pos == doctest::Approx(0.5));
    CHECK(m.mu_neg == doctest::Approx(0.5));
    CHECK(m.error == doctest::Approx(1.0));
}

TEST_CASE("sibling weight follows the length ratio") {
    CHECK(sibling_alpha(3.5, 10.3) == doctest::Approx(0.2536).epsilon(1e-3));
    CHECK(sibling_alpha(3.5, 10.3) == doctest::Approx(3.5 / 13.8));
    CHECK(sibling_alpha(5, 5) == doctest::Approx(0.5));
    CHECK(sibling_alpha(7, 0) == doctest::Approx(1.0));
    CHECK(sibling_alpha(0, 7) == doctest::Approx(0.0));
    CHECK_THROWS_AS(sibling_alpha(0, 0), std::invalid_argument);
}

TEST_CASE("gain subtracts the weighted child errors from the parent") {
    CHECK(unified_gain(0.5238, 0.25, 0.0, 0.9) ==
          doctest::Approx(-0.1512).epsilon(1e-9));
    CHECK(unified_gain(0.7, 0.3, 0.0, 0.0) == doctest::Approx(0.7));
    CHECK(unified_gain(0.7, 0.3, 0.7, 0.7) == doctest::Approx(0.0));
    CHECK(unified_gain(1.0, 0.5, 0.2, 0.6) == doctest::Approx(0.6));
}
