#include "msum/verification.hpp"

#include "oracle.hpp"

#include <doctest.h>

using namespace msum;
using namespace msum::verify;

TEST_CASE("statistics") {
    std::vector<double> pool{3, 4, 1, 9, 6};

    SUBCASE("median uses ascending sort and 1-based index ceil(n/2)") {
        CHECK(Statistic::median()(std::vector<double>{9, 6}) == 6.0); // sort[1] of [6,9]
        CHECK(Statistic::median()(pool) == 4.0);
        CHECK(Statistic::median()(std::vector<double>{3, 4, 1}) == 3.0);
    }

    SUBCASE("kth smallest") {
        CHECK(Statistic::kth_smallest(1)(pool) == 1.0);
        CHECK(Statistic::kth_smallest(2)(pool) == 3.0);
        CHECK_THROWS_AS(Statistic::kth_smallest(6)(pool), SpecError);
    }

    SUBCASE("statistics realized from mergeable summaries") {
        CHECK(Statistic::count()(pool) == 5.0);
        CHECK(Statistic::sum()(pool) == 23.0);
        CHECK(Statistic::min()(pool) == 1.0);
        CHECK(Statistic::max()(pool) == 9.0);
        CHECK(Statistic::mean()(pool) == 4.6);
    }

    SUBCASE("by_id round trips") {
        CHECK(Statistic::by_id("median").id() == "median");
        CHECK(Statistic::by_id("kth:3").id() == "kth:3");
        CHECK_THROWS_AS(Statistic::by_id("mode"), SpecError);
        CHECK_THROWS_AS(Statistic::by_id("kth:x"), SpecError);
    }

    SUBCASE("undefined on the empty list") {
        CHECK_THROWS_AS(Statistic::median()(std::vector<double>{}), SpecError);
        CHECK_THROWS_AS(Statistic::mean()(std::vector<double>{}), SpecError);
    }
}

TEST_CASE("the median counterexample reproduces the worked table") {
    auto w = median_counterexample();
    auto r = check_witness(w);
    CHECK(r.stat_a1 == 3.0);
    CHECK(r.stat_b1 == 6.0);
    CHECK(r.stat_union1 == 4.0);
    CHECK(r.stat_a2 == 3.0);
    CHECK(r.stat_b2 == 6.0);
    CHECK(r.stat_union2 == 6.0);
    CHECK(r.valid());
}

TEST_CASE("the 2nd-smallest counterexample reproduces the worked table") {
    auto w = second_smallest_counterexample();
    auto r = check_witness(w);
    CHECK(r.stat_a1 == 3.0);
    CHECK(r.stat_b1 == 5.0);
    CHECK(r.stat_a2 == 3.0);
    CHECK(r.stat_b2 == 5.0);
    CHECK(r.stat_union1 == 2.0);
    CHECK(r.stat_union2 == 3.0);
    CHECK(r.valid());
}

TEST_CASE("degenerate quadruples are not witnesses") {
    WitnessQuadruple w{{1, 2}, {3}, {1, 2}, {3}, "median"};
    CHECK_FALSE(check_witness(w).valid());
}

TEST_CASE("malformed quadruples throw") {
    CHECK_THROWS_AS(check_witness(WitnessQuadruple{{}, {1}, {1}, {1}, "median"}), SpecError);
    CHECK_THROWS_AS(check_witness(WitnessQuadruple{{1}, {1}, {1}, {1}, "nope"}), SpecError);
    // kth:2 undefined on single-element parts
    CHECK_THROWS_AS(check_witness(WitnessQuadruple{{1}, {2}, {1}, {2}, "kth:2"}), SpecError);
}

TEST_CASE("witness search finds quadruples for non-mergeable statistics") {
    std::vector<double> universe{1, 2, 3, 4, 5, 6, 7, 8, 9};

    SUBCASE("median") {
        auto w = search_witness(Statistic::median(), universe, 3);
        REQUIRE(w.has_value());
        CHECK(w->statistic == "median");
        CHECK(check_witness(*w).valid());
    }

    SUBCASE("2nd smallest over {1..7}") {
        std::vector<double> small{1, 2, 3, 4, 5, 6, 7};
        auto w = search_witness(Statistic::kth_smallest(2), small, 3);
        REQUIRE(w.has_value());
        CHECK(check_witness(*w).valid());
    }

    SUBCASE("search is deterministic") {
        auto w1 = search_witness(Statistic::median(), universe, 3);
        auto w2 = search_witness(Statistic::median(), universe, 3);
        REQUIRE(w1.has_value());
        CHECK(*w1 == *w2);
    }
}

TEST_CASE("witness search exhausts without a witness for mergeable statistics") {
    std::vector<double> universe{1, 2, 3, 4, 5};
    CHECK_FALSE(search_witness(Statistic::sum(), universe, 3).has_value());
    CHECK_FALSE(search_witness(Statistic::count(), universe, 3).has_value());
    CHECK_FALSE(search_witness(Statistic::min(), universe, 3).has_value());
    CHECK_FALSE(search_witness(Statistic::max(), universe, 3).has_value());
    CHECK_FALSE(search_witness(Statistic::mean(), universe, 3).has_value());
}

TEST_CASE("witness search enforces its enumeration bounds") {
    std::vector<double> too_big(13);
    for (std::size_t i = 0; i < too_big.size(); ++i) too_big[i] = static_cast<double>(i);
    CHECK_THROWS_AS(search_witness(Statistic::median(), too_big, 3), SpecError);

    std::vector<double> universe{1, 2, 3};
    CHECK_THROWS_AS(search_witness(Statistic::median(), universe, 5), SpecError);
    CHECK_THROWS_AS(search_witness(Statistic::median(), universe, 0), SpecError);
}
