#include <stdexcept>

#include "doctest.h"
#include "psimine/pseudo.hpp"

using namespace psimine;

namespace {

IntervalSet ho(std::initializer_list<std::pair<double, double>> parts) {
    std::vector<Interval> ivs;
    for (auto [lo, hi] : parts) ivs.push_back(half_open(lo, hi));
    return IntervalSet(std::move(ivs));
}

}  // namespace

TEST_CASE("stretched target sets for the worked trace") {
    Interval span = half_open(0, 20);
    IntervalSet e = ho({{5, 8.3}, {11.8, 13}, {18, 20}});
    IntervalSet ne = complement(e, span);
    PseudoTargetBank bank = build_pseudo_targets(e, ne, span, 3, 0.4);

    CHECK(bank.max_index() == 3);
    CHECK(bank.pos[0] == e);
    CHECK(bank.neg[0] == ne);
    CHECK(bank.ov[0].empty());

    CHECK(bank.pos[2] == ho({{4.2, 8.3}, {11, 13}, {17.2, 20}}));
    CHECK(bank.neg[2] == ho({{0, 5}, {7.5, 11.8}, {12.2, 18}}));
    CHECK(bank.ov[2] ==
          ho({{4.2, 5}, {7.5, 8.3}, {11, 11.8}, {12.2, 13}, {17.2, 18}}));
}

TEST_CASE("stretching clamps at the span start") {
    Interval span = half_open(0, 10);
    IntervalSet e = ho({{0.5, 1}});
    PseudoTargetBank bank =
        build_pseudo_targets(e, complement(e, span), span, 3, 0.4);
    CHECK(bank.pos[3] == ho({{0, 1}}));
}

TEST_CASE("stretched sets grow monotonically with the index") {
    Interval span = half_open(0, 20);
    IntervalSet e = ho({{5, 8.3}, {11.8, 13}, {18, 20}});
    IntervalSet ne = complement(e, span);
    PseudoTargetBank bank = build_pseudo_targets(e, ne, span, 5, 0.7);
    for (int i = 0; i < bank.max_index(); ++i) {
        auto at = [&](const std::vector<IntervalSet>& v, int j) {
            return v[static_cast<std::size_t>(j)];
        };
        CHECK(set_union(at(bank.pos, i), at(bank.pos, i + 1)) ==
              at(bank.pos, i + 1));
        CHECK(set_union(at(bank.neg, i), at(bank.neg, i + 1)) ==
              at(bank.neg, i + 1));
        CHECK(at(bank.ov, i) ==
              set_intersect(at(bank.pos, i), at(bank.neg, i)));
    }
}

TEST_CASE("bank construction validates its parameters") {
    Interval span = half_open(0, 10);
    IntervalSet e = ho({{1, 2}});
    CHECK_THROWS_AS(build_pseudo_targets(e, complement(e, span), span, -1, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_pseudo_targets(e, complement(e, span), span, 2, 0.0),
                    std::invalid_argument);
    PseudoTargetBank flat =
        build_pseudo_targets(e, complement(e, span), span, 0, 1.0);
    CHECK(flat.max_index() == 0);
}
