#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "upcross/cumulative_sum.hpp"

using namespace upcross;
using testutil::R;
using testutil::seq_of;

TEST_CASE("cumulative sum examples") {
    auto zero = cumulative_sum(seq_of({0, 0, 0}, 0), Gap(R(0), R(1)), 3);
    CHECK(zero.value == R(0));
    CHECK(zero.family.intervals.empty());
    CHECK(zero.family_size == 0);

    auto one = cumulative_sum(seq_of({2}, 2), Gap(R(0), R(1)), 1);
    CHECK(one.value == R(1));
    REQUIRE(one.family_size == 1);
    CHECK(one.family.intervals[0] == std::pair<std::size_t, std::size_t>{0, 1});

    auto two = cumulative_sum(seq_of({2, -3, 4}, 4), Gap(R(0), R(1)), 3);
    CHECK(two.value == R(2));
    REQUIRE(two.family_size == 2);
    CHECK(two.family.intervals[0] == std::pair<std::size_t, std::size_t>{0, 1});
    CHECK(two.family.intervals[1] == std::pair<std::size_t, std::size_t>{2, 3});

    CHECK_THROWS_AS(cumulative_sum(seq_of({1}, 1), Gap(R(0), R(1)), 2), error);
}

TEST_CASE("brute force oracle examples") {
    CHECK(cumulative_sum_bruteforce(seq_of({2, -3, 4}, 4), Gap(R(0), R(1)), 3).value ==
          R(2));
    CHECK(cumulative_sum_bruteforce(seq_of({0, 0, 0}, 0), Gap(R(0), R(1)), 3).value ==
          R(0));
    auto degenerate = cumulative_sum_bruteforce(seq_of({5}, 5), Gap(R(0), R(1)), 0);
    CHECK(degenerate.value == R(0));
    CHECK(degenerate.family_size == 0);
    CHECK_THROWS_AS(
        cumulative_sum_bruteforce(seq_of({0, 0, 0}, 0), Gap(R(0), R(1)), 15), error);
}

TEST_CASE("DP matches brute force on random instances") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        auto seq = testutil::random_sequence(rng, 8, 2);
        auto gap = testutil::random_gap(rng);
        for (std::size_t n = 0; n <= seq.size(); ++n) {
            auto dp = cumulative_sum(seq, gap, n);
            auto bf = cumulative_sum_bruteforce(seq, gap, n);
            REQUIRE(dp.value == bf.value);
            REQUIRE(dp.family_size == bf.family_size);
            REQUIRE(dp.family.intervals == bf.family.intervals);
        }
    }
}

TEST_CASE("returned family recomputes to the returned value") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 300; ++trial) {
        auto seq = testutil::random_sequence(rng, 10, 3);
        auto gap = testutil::random_gap(rng);
        auto result = cumulative_sum(seq, gap, seq.size());
        auto h = partial_sums(seq);
        CHECK(family_value(h, gap, result.family) == result.value);
        CHECK(result.value >= R(0));
        // strict interleaving
        std::size_t prev = 0;
        bool first = true;
        for (const auto& [l, r] : result.family.intervals) {
            CHECK(l < r);
            if (!first) CHECK(l > prev);
            first = false;
            prev = r;
        }
    }
}

TEST_CASE("translation invariance of the cumulative sum") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto seq = testutil::random_sequence(rng, 8, 3);
        auto gap = testutil::random_gap(rng);
        Rational value = cumulative_sum(seq, gap, seq.size()).value;

        std::uniform_int_distribution<long> cdist(-12, 12);
        Rational c(cdist(rng), 4);
        std::vector<Rational> shifted;
        for (const auto& t : seq.terms()) shifted.push_back(t + c);
        BoundedSequence tseq(shifted, seq.bound() + testutil::R(3));
        Gap tgap(gap.alpha + c, gap.beta + c);
        CHECK(cumulative_sum(tseq, tgap, tseq.size()).value == value);
    }
}

TEST_CASE("elevation gain domination when alpha >= 0") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        auto seq = testutil::random_sequence(rng, 8, 3);
        std::uniform_int_distribution<long> d(0, 8);
        long a = d(rng);
        Gap gap(Rational(a, 4), Rational(a, 4) + Rational(d(rng) + 1, 4));

        // cumulative elevation gain = max over families of plain height sums
        auto h = partial_sums(seq);
        Rational gain = 0;
        for (std::size_t k = 1; k < h.size(); ++k)
            if (h[k] > h[k - 1]) gain += h[k] - h[k - 1];

        Rational value = cumulative_sum(seq, gap, seq.size()).value;
        CHECK(value <= gain);
        CHECK(gain <= Rational(seq.size()) * seq.bound());
    }
}

TEST_CASE("potential step examples") {
    auto flat = potential_step(seq_of({0, 0, 0, 0}, 0), Gap(R(0), R(1)), 3);
    CHECK(flat.delta == R(0));
    CHECK(flat.s == 0);
    CHECK(flat.holds);
    CHECK(flat.lower_bound < R(0));

    CHECK(potential_step(seq_of({2, -3, 4, 0}, 4), Gap(R(0), R(1)), 3).holds);
    CHECK_THROWS_AS(potential_step(seq_of({1, 2}, 2), Gap(R(0), R(1)), 2), error);
}

TEST_CASE("potential step holds on a seeded random campaign") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 1000; ++trial) {
        std::uniform_int_distribution<std::size_t> nd(1, 9);
        std::size_t n = nd(rng);
        auto seq = testutil::random_sequence(rng, n + 1, 4);
        auto gap = testutil::random_gap(rng);
        auto step = potential_step(seq, gap, n);
        REQUIRE(step.holds);
    }
}

TEST_CASE("three points bound") {
    auto zero = upcrossings_vs_family_size(seq_of({0, 0, 0}, 0), Gap(R(-1), R(1)), 3);
    CHECK(zero.c_n == 0);
    CHECK(zero.holds);

    auto one = upcrossings_vs_family_size(seq_of({-2, 6}, 6), Gap(R(0), R(1)), 2);
    CHECK(one.c_n == 1);
    CHECK(one.s >= 1);
    CHECK(one.holds);

    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 500; ++trial) {
        auto seq = testutil::random_sequence(rng, 10, 2);
        auto gap = testutil::random_gap(rng);
        REQUIRE(upcrossings_vs_family_size(seq, gap, seq.size()).holds);
    }
}

TEST_CASE("cumulative sum upper bound") {
    auto r = cumsum_upper_bound(seq_of({2}, 2), Gap(R(0), R(1)), 1);
    CHECK(r.value == R(1));
    CHECK(r.bound == R(3));
    CHECK(r.holds);

    CHECK(cumsum_upper_bound(seq_of({0, 0, 0, 0}, 0), Gap(R(-2), R(5)), 4).holds);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 300; ++trial) {
        auto seq = testutil::random_sequence(rng, 9, 3);
        auto gap = testutil::random_gap(rng);
        REQUIRE(cumsum_upper_bound(seq, gap, seq.size()).holds);
    }
}
