#include "msum/core.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace msum;

namespace {

std::vector<Value> nums(std::initializer_list<double> values) {
    return std::vector<Value>(values.begin(), values.end());
}

} // namespace

TEST_CASE("count summarize and merge") {
    auto spec = SummarySpec::count();
    CHECK(summarize(spec, nums({3, 4, 1})).as<CountSummary>().n == 3);
    CHECK(summarize(spec, {}).as<CountSummary>().n == 0);

    Summary a = summarize(spec, nums({3, 4, 1}));
    Summary b = summarize(spec, nums({9, 6}));
    CHECK(merge(a, b).as<CountSummary>().n == 5);
}

TEST_CASE("min and max") {
    auto values = nums({3, 4, 1, 9, 6});
    CHECK(summarize(SummarySpec::minimum(), values).as<ExtremumSummary>().value == 1.0);
    CHECK(summarize(SummarySpec::maximum(), values).as<ExtremumSummary>().value == 9.0);

    SUBCASE("empty set has an explicit empty state") {
        Summary empty = summarize(SummarySpec::minimum(), {});
        CHECK_FALSE(empty.as<ExtremumSummary>().value.has_value());
        // and it is a two-sided identity
        Summary s = summarize(SummarySpec::minimum(), nums({2}));
        CHECK(merge(empty, s) == s);
        CHECK(merge(s, empty) == s);
    }

    SUBCASE("merge takes the extremum") {
        Summary a = summarize(SummarySpec::maximum(), nums({3, 4, 1}));
        Summary b = summarize(SummarySpec::maximum(), nums({9, 6}));
        CHECK(merge(a, b).as<ExtremumSummary>().value == 9.0);
    }
}

TEST_CASE("sum") {
    CHECK(summarize(SummarySpec::sum(), nums({3, 4, 1})).as<SumSummary>().total == 8.0);
    Summary a = summarize(SummarySpec::sum(), nums({1.5, 2.5}));
    Summary b = summarize(SummarySpec::sum(), nums({-4}));
    CHECK(merge(a, b).as<SumSummary>().total == 0.0);
}

TEST_CASE("extreme-k keeps the k most extreme values") {
    auto spec = SummarySpec::extreme_k(2, ExtremeOrder::smallest_first);

    // 1st/2nd of the paper's A1 = [1,3,5]
    Summary a = summarize(spec, nums({1, 3, 5}));
    CHECK(a.as<ExtremeK>().values == std::vector<double>{1, 3});

    SUBCASE("merge equals the extremes of the concatenated multisets") {
        Summary b = summarize(spec, nums({2, 5, 6}));
        Summary merged = merge(a, b);
        // brute force over the union [1,3,5,2,5,6]
        auto expected = oracle::extremes(std::vector<double>{1, 3, 5, 2, 5, 6}, 2, true);
        CHECK(expected == std::vector<double>{1, 2});
        CHECK(merged.as<ExtremeK>().values == expected);
    }

    SUBCASE("largest-first order") {
        auto top2 = SummarySpec::extreme_k(2, ExtremeOrder::largest_first);
        Summary t = summarize(top2, nums({3, 4, 1, 9, 6}));
        CHECK(t.as<ExtremeK>().values == std::vector<double>{9, 6});
    }

    SUBCASE("fewer values than k") {
        Summary one = summarize(spec, nums({7}));
        CHECK(one.as<ExtremeK>().values == std::vector<double>{7});
    }

    SUBCASE("multiset semantics: duplicates survive the merge") {
        // With set semantics summarize([5,5]) would collapse to {5} and the
        // merged top-2 would be wrong.
        Summary dup = summarize(spec, nums({5, 5}));
        CHECK(dup.as<ExtremeK>().values == std::vector<double>{5, 5});
        Summary other = summarize(spec, nums({6}));
        CHECK(merge(dup, other).as<ExtremeK>().values == std::vector<double>{5, 5});
    }
}

TEST_CASE("mean merges by size weighting") {
    auto spec = SummarySpec::mean();
    Summary a = summarize(spec, nums({1, 2, 3}));
    Summary b = summarize(spec, nums({5}));
    Summary merged = merge(a, b);
    CHECK(merged.as<MeanSummary>().n == 4);
    CHECK(merged.as<MeanSummary>().mean == doctest::Approx(2.75).epsilon(1e-12));
}

TEST_CASE("moments store raw power sums") {
    auto spec = SummarySpec::moments(2);
    Summary s = summarize(spec, nums({1, 2, 3}));
    const auto& m = s.as<MomentSummary>();
    CHECK(m.n == 3);
    CHECK(m.power_sums == std::vector<double>{6, 14});

    SUBCASE("power sums add under merge") {
        Summary b = summarize(spec, nums({5}));
        const auto& merged = merge(s, b).as<MomentSummary>();
        CHECK(merged.n == 4);
        CHECK(merged.power_sums == std::vector<double>{11, 39});
    }

    SUBCASE("the (n, mu, sigma) route gives the same union stats") {
        // A = [1,2,3]: mu=2, sigma=sqrt(2/3); B = [5]: mu=5, sigma=0.
        Summary a2 = moments_from_stats(3, 2.0, std::sqrt(2.0 / 3.0));
        Summary b2 = moments_from_stats(1, 5.0, 0.0);
        // S_A = 3(2/3+4) = 14, S_B = 1(0+25) = 25, S_C = 39
        CHECK(a2.as<MomentSummary>().power_sums[1] == doctest::Approx(14.0).epsilon(1e-12));
        CHECK(b2.as<MomentSummary>().power_sums[1] == 25.0);
        MeanView view = mean_view(merge(a2, b2).as<MomentSummary>());
        CHECK(view.n == 4);
        CHECK(view.mean == doctest::Approx(2.75).epsilon(1e-12));
        CHECK(view.stddev == doctest::Approx(std::sqrt(2.1875)).epsilon(1e-12));
    }
}

TEST_CASE("membership count") {
    SUBCASE("numeric range [lo, hi)") {
        auto spec = SummarySpec::membership({"teens", NumericRange{13, 20}});
        Summary s = summarize(spec, nums({12, 13, 19.5, 20, 42}));
        CHECK(s.as<MembershipCount>().count == 2);

        Summary t = summarize(spec, nums({15}));
        CHECK(merge(s, t).as<MembershipCount>().count == 3);
    }

    SUBCASE("label set") {
        auto spec = SummarySpec::membership({"eu", LabelSet{{"si", "at"}}});
        std::vector<Value> values{"si", "us", "at", "si"};
        CHECK(summarize(spec, values).as<MembershipCount>().count == 3);
    }

    SUBCASE("different reference sets do not merge") {
        Summary a = summarize(SummarySpec::membership({"c1", NumericRange{0, 1}}), {});
        Summary b = summarize(SummarySpec::membership({"c2", NumericRange{0, 1}}), {});
        CHECK_THROWS_AS(merge(a, b), MergeError);
    }
}

TEST_CASE("bar chart") {
    auto spec = SummarySpec::bar_chart({"a", "b", "c"});
    std::vector<Value> values{"a", "b", "a"};
    Summary s = summarize(spec, values);
    const auto& bc = s.as<BarChart>();
    CHECK(bc.n == 3);
    CHECK(bc.counts.at("a") == 2);
    CHECK(bc.counts.at("b") == 1);
    CHECK(bc.counts.at("c") == 0); // declared categories are always present

    SUBCASE("counts add per label") {
        std::vector<Value> more{"c", "a"};
        const auto& merged = merge(s, summarize(spec, more)).as<BarChart>();
        CHECK(merged.n == 5);
        CHECK(merged.counts.at("a") == 3);
        CHECK(merged.counts.at("c") == 1);
    }

    SUBCASE("unknown label is an error") {
        std::vector<Value> bad{"d"};
        CHECK_THROWS_AS(summarize(spec, bad), SpecError);
    }

    SUBCASE("category sets must match") {
        Summary other = summarize(SummarySpec::bar_chart({"a", "b"}), {});
        CHECK_THROWS_AS(merge(s, other), MergeError);
    }
}

TEST_CASE("histogram") {
    auto spec = SummarySpec::histogram({0, 10, 20});
    Summary s = summarize(spec, nums({-5, 0, 3, 10, 20, 25}));
    const auto& h = s.as<Histogram>();
    CHECK(h.counts == std::vector<std::uint64_t>{2, 2}); // [0,10): {0,3}; [10,20]: {10,20}
    CHECK(h.underflow == 1);
    CHECK(h.overflow == 1);
    CHECK(h.n == 6);

    SUBCASE("merge adds per-bin and under/overflow counts") {
        Summary t = summarize(spec, nums({5, 100}));
        const auto& merged = merge(s, t).as<Histogram>();
        CHECK(merged.counts == std::vector<std::uint64_t>{3, 2});
        CHECK(merged.overflow == 2);
        CHECK(merged.n == 8);
    }

    SUBCASE("agreement with the naive per-bin scan") {
        auto raw = std::vector<double>{-5, 0, 3, 10, 20, 25};
        auto expected = oracle::histogram_counts(raw, std::vector<double>{0, 10, 20});
        CHECK(h.counts == expected);
    }

    SUBCASE("mismatched edges never re-bin") {
        Summary other = summarize(SummarySpec::histogram({0, 5, 20}), {});
        CHECK_THROWS_AS(merge(s, other), MergeError);
    }

    SUBCASE("non-increasing edges are rejected") {
        CHECK_THROWS_AS(SummarySpec::histogram({0, 0, 10}), SpecError);
        CHECK_THROWS_AS(SummarySpec::histogram({5}), SpecError);
    }
}

TEST_CASE("discrete distribution merges by size-weighted averaging") {
    // (3, (1/3, 2/3)) + (1, (1, 0)): frequencies (1,2) + (1,0) = (2,2)
    auto a = make_distribution(3, {1.0 / 3.0, 2.0 / 3.0});
    auto b = make_distribution(1, {1.0, 0.0});
    const auto& merged = merge(Summary(a), Summary(b)).as<DiscreteDistribution>();
    CHECK(merged.n == 4);
    CHECK(merged.p[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(merged.p[1] == doctest::Approx(0.5).epsilon(1e-12));

    SUBCASE("summarize over a categorical support") {
        auto spec = SummarySpec::distribution_over({"x", "y"});
        std::vector<Value> values{"x", "y", "y"};
        const auto& d = summarize(spec, values).as<DiscreteDistribution>();
        CHECK(d.n == 3);
        CHECK(d.p[0] == doctest::Approx(1.0 / 3.0));
        CHECK(d.p[1] == doctest::Approx(2.0 / 3.0));
    }

    SUBCASE("probability vectors of different dimension do not merge") {
        auto c = make_distribution(2, {1.0, 0.0, 0.0});
        CHECK_THROWS_AS(merge(Summary(a), Summary(c)), MergeError);
    }

    SUBCASE("bad probabilities are rejected") {
        CHECK_THROWS_AS(make_distribution(2, {0.5, 0.4}), SpecError);
        CHECK_THROWS_AS(make_distribution(2, {1.5, -0.5}), SpecError);
    }
}

TEST_CASE("empty summary is a two-sided merge identity for every kind") {
    std::vector<SummarySpec> specs = {
        SummarySpec::count(),
        SummarySpec::minimum(),
        SummarySpec::maximum(),
        SummarySpec::sum(),
        SummarySpec::extreme_k(3, ExtremeOrder::largest_first),
        SummarySpec::mean(),
        SummarySpec::moments(3),
        SummarySpec::membership({"c", NumericRange{0, 2}}),
        SummarySpec::histogram({0, 1, 2}),
        SummarySpec::distribution_binned({0, 1, 2}),
        SummarySpec::interval(),
    };
    auto values = nums({0.5, 1.5, 1.0});
    for (const auto& spec : specs) {
        CAPTURE(kind_name(spec.kind()));
        Summary empty = spec.empty_summary();
        Summary s = summarize(spec, values);
        CHECK(merge(empty, s) == s);
        CHECK(merge(s, empty) == s);
        CHECK(summarize(spec, {}) == empty);
    }
}

TEST_CASE("merge_all folds left") {
    auto counts = std::vector<Summary>{CountSummary{1}, CountSummary{2}, CountSummary{3}};
    CHECK(merge_all(counts).as<CountSummary>().n == 6);

    auto spec = SummarySpec::minimum();
    std::vector<Summary> mins = {
        summarize(spec, nums({4})),
        summarize(spec, nums({3})),
        summarize(spec, nums({9})),
    };
    CHECK(merge_all(mins).as<ExtremumSummary>().value == 3.0);

    SUBCASE("single element folds to itself") {
        std::vector<Summary> one = {mins[0]};
        CHECK(merge_all(one) == mins[0]);
    }

    SUBCASE("empty sequence is an error") {
        CHECK_THROWS_AS(merge_all({}), MergeError);
    }
}

TEST_CASE("kind mismatches are merge errors") {
    Summary count = CountSummary{2};
    Summary total = SumSummary{2.0};
    CHECK_THROWS_AS(merge(count, total), MergeError);

    Summary k2 = summarize(SummarySpec::extreme_k(2, ExtremeOrder::smallest_first), {});
    Summary k3 = summarize(SummarySpec::extreme_k(3, ExtremeOrder::smallest_first), {});
    CHECK_THROWS_AS(merge(k2, k3), MergeError);

    Summary asc = summarize(SummarySpec::extreme_k(2, ExtremeOrder::smallest_first), {});
    Summary desc = summarize(SummarySpec::extreme_k(2, ExtremeOrder::largest_first), {});
    CHECK_THROWS_AS(merge(asc, desc), MergeError);

    Summary p2 = summarize(SummarySpec::moments(2), {});
    Summary p3 = summarize(SummarySpec::moments(3), {});
    CHECK_THROWS_AS(merge(p2, p3), MergeError);
}

TEST_CASE("values reject NaN and infinity") {
    CHECK_THROWS_AS(Value(std::nan("")), SpecError);
    CHECK_THROWS_AS(Value(std::numeric_limits<double>::infinity()), SpecError);
    CHECK(Value(-0.0).number() == 0.0);
}

TEST_CASE("numeric kinds reject categorical values") {
    std::vector<Value> labels{"a"};
    CHECK_THROWS_AS(summarize(SummarySpec::sum(), labels), SpecError);
    CHECK_THROWS_AS(summarize(SummarySpec::histogram({0, 1}), labels), SpecError);
}
