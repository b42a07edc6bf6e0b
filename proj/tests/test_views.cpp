#include "msum/core.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace msum;

namespace {

MomentSummary reference_moments(const std::vector<double>& values, std::uint32_t order) {
    MomentSummary m;
    m.n = values.size();
    m.power_sums = oracle::power_sums(values, order);
    return m;
}

} // namespace

TEST_CASE("mean_view") {
    SUBCASE("singleton has zero spread") {
        MeanView v = mean_view(MomentSummary{1, {5, 25}});
        CHECK(v.mean == 5.0);
        CHECK(v.stddev == 0.0);
    }

    SUBCASE("union of [1,2,3] and [5]") {
        MeanView v = mean_view(MomentSummary{4, {11, 39}});
        CHECK(v.mean == 2.75);
        // oracle: direct two-pass stddev over [1,2,3,5]
        double expected = oracle::stddev(std::vector<double>{1, 2, 3, 5});
        CHECK(expected == doctest::Approx(std::sqrt(2.1875)).epsilon(1e-15));
        CHECK(v.stddev == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("two equal values") {
        MeanView v = mean_view(MomentSummary{2, {6, 18}});
        CHECK(v.mean == 3.0);
        CHECK(v.stddev == 0.0);
    }

    SUBCASE("empty summary is an error") {
        CHECK_THROWS_AS(mean_view(MomentSummary{0, {0, 0}}), SpecError);
    }

    SUBCASE("variance clamps at zero on rounding noise") {
        // S2/n - mu^2 can dip below zero by an ulp on degenerate data.
        double x = 0.1;
        MomentSummary m{3, {3 * x, 3 * x * x * (1 - 1e-17)}};
        CHECK(mean_view(m).stddev == 0.0);
    }
}

TEST_CASE("moment identity S = n(sigma^2 + mu^2)") {
    std::vector<double> values{1, 2, 3, 5};
    auto m = reference_moments(values, 2);
    MeanView v = mean_view(m);
    double rhs = static_cast<double>(m.n) * (v.stddev * v.stddev + v.mean * v.mean);
    CHECK(m.power_sums[1] == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("moments_from_stats inverts mean_view") {
    auto m = moments_from_stats(4, 2.75, std::sqrt(2.1875));
    CHECK(m.n == 4);
    CHECK(m.power_sums[0] == doctest::Approx(11.0).epsilon(1e-12));
    CHECK(m.power_sums[1] == doctest::Approx(39.0).epsilon(1e-12));
}

TEST_CASE("central moments from power sums") {
    std::vector<double> values{1, 2, 3, 5};
    auto m = reference_moments(values, 4);

    SUBCASE("r=2 equals the variance from mean_view") {
        MeanView v = mean_view(m);
        CHECK(central_moment(m, 2) == doctest::Approx(v.stddev * v.stddev).epsilon(1e-12));
    }

    SUBCASE("r=3 matches direct evaluation of (1/4) sum (v-2.75)^3") {
        double expected = oracle::central_moment(values, 3);
        CHECK(expected == doctest::Approx(1.40625).epsilon(1e-15));
        CHECK(central_moment(m, 3) == doctest::Approx(expected).epsilon(1e-12));
    }

    SUBCASE("r=4 matches direct evaluation") {
        CHECK(central_moment(m, 4) ==
              doctest::Approx(oracle::central_moment(values, 4)).epsilon(1e-12));
    }

    SUBCASE("all equal values give zero for every r") {
        auto flat = reference_moments({7, 7, 7}, 4);
        for (std::uint32_t r = 2; r <= 4; ++r)
            CHECK(central_moment(flat, r) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }

    SUBCASE("r out of range") {
        CHECK_THROWS_AS(central_moment(m, 5), SpecError);
        CHECK_THROWS_AS(central_moment(m, 1), SpecError);
    }
}

TEST_CASE("to_distribution normalizes counts") {
    SUBCASE("bar chart (2,2) over n=4") {
        auto spec = SummarySpec::bar_chart({"x", "y"});
        std::vector<Value> values{"x", "x", "y", "y"};
        auto d = to_distribution(summarize(spec, values));
        CHECK(d.n == 4);
        CHECK(d.p == std::vector<double>{0.5, 0.5});
        CHECK(d.support == std::vector<std::string>{"x", "y"});
    }

    SUBCASE("point mass (5,0,0)") {
        auto spec = SummarySpec::bar_chart({"a", "b", "c"});
        std::vector<Value> values{"a", "a", "a", "a", "a"};
        auto d = to_distribution(summarize(spec, values));
        CHECK(d.p == std::vector<double>{1, 0, 0});
    }

    SUBCASE("histogram supports carry under/overflow slots") {
        auto spec = SummarySpec::histogram({0, 10, 20});
        Summary h = summarize(spec, std::vector<Value>{-5.0, 3.0, 12.0, 25.0});
        auto d = to_distribution(h);
        CHECK(d.support ==
              std::vector<std::string>{"underflow", "[0,10)", "[10,20]", "overflow"});
        CHECK(d.p == std::vector<double>{0.25, 0.25, 0.25, 0.25});
    }

    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(to_distribution(summarize(SummarySpec::bar_chart({"a"}), {})), SpecError);
    }
}

TEST_CASE("from_distribution recovers frequencies") {
    auto d = make_distribution(4, {0.5, 0.5});
    CHECK(from_distribution(d) == std::vector<std::uint64_t>{2, 2});

    SUBCASE("round trip through a histogram") {
        auto spec = SummarySpec::histogram({0, 10, 20});
        Summary h = summarize(spec, std::vector<Value>{-5.0, 3.0, 3.5, 12.0, 25.0});
        const auto& hist = h.as<Histogram>();
        auto f = from_distribution(to_distribution(h));
        CHECK(f == std::vector<std::uint64_t>{hist.underflow, hist.counts[0], hist.counts[1],
                                              hist.overflow});
    }

    SUBCASE("non-integral implied frequency is an error") {
        DiscreteDistribution d2;
        d2.n = 3;
        d2.p = {0.5, 0.5};
        d2.support = {"0", "1"};
        CHECK_THROWS_AS(from_distribution(d2), SpecError);
    }
}

TEST_CASE("distribution round trip equals the (n,p) pair of the frequency vector") {
    auto d = distribution_from_frequencies({1, 2, 0, 3});
    CHECK(d.n == 6);
    CHECK(from_distribution(d) == std::vector<std::uint64_t>{1, 2, 0, 3});
}

TEST_CASE("interval_bounds") {
    auto values = std::vector<Value>{3.0, 4.0, 1.0, 9.0, 6.0};
    Summary s = summarize(SummarySpec::interval(), values);
    auto bounds = interval_bounds(s);
    REQUIRE(bounds.has_value());
    CHECK(bounds->first == 1.0);
    CHECK(bounds->second == 9.0);

    CHECK_FALSE(interval_bounds(summarize(SummarySpec::interval(), {})).has_value());
    CHECK_THROWS_AS(interval_bounds(Summary(CountSummary{1})), SpecError);
}
