#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "test_helpers.hpp"
#include "upcross/cover.hpp"

using namespace upcross;
using testutil::R;

namespace {
const Gap kGap(R(2, 5), R(3, 5));
}  // namespace

TEST_CASE("cover enumeration finds the minimal witness") {
    auto fb = Observable::first_bit();
    auto cover = enumerate_bad_cylinders(fb, kGap, 1, 4);
    // averages of 011 are 0, 1/2, 2/3: below 2/5 then above 3/5
    CHECK(std::find(cover.strings.begin(), cover.strings.end(), "011") !=
          cover.strings.end());
    CHECK(std::find(cover.strings.begin(), cover.strings.end(), "01") ==
          cover.strings.end());
    CHECK(is_prefix_free(cover.strings));
    CHECK(std::is_sorted(cover.strings.begin(), cover.strings.end()));
}

TEST_CASE("constant observable yields an empty cover") {
    auto zero = Observable::constant(R(0));
    auto cover = enumerate_bad_cylinders(zero, Gap(R(-1), R(1)), 1, 10);
    CHECK(cover.strings.empty());
}

TEST_CASE("enumeration guards") {
    auto fb = Observable::first_bit();
    CHECK_THROWS_AS(enumerate_bad_cylinders(fb, kGap, 1, 25), error);
    CHECK_THROWS_AS(enumerate_bad_cylinders(fb, kGap, 0, 10), error);
}

TEST_CASE("minimality: no proper prefix of a witness is a witness") {
    auto fb = Observable::first_bit();
    auto cover = enumerate_bad_cylinders(fb, kGap, 2, 14);
    for (const auto& s : cover.strings) {
        BinaryString full = BinaryString::from_string(s);
        std::vector<Rational> values;
        for (auto b : full.bits) values.emplace_back(b);
        BoundedSequence seq(values, R(1));
        CHECK(count_upcrossings(seq, kGap, seq.size()).count >= 2);
        BoundedSequence prefix = seq.window(0, seq.size() - 1);
        CHECK(count_upcrossings(prefix, kGap, prefix.size()).count < 2);
    }
}

TEST_CASE("cover events nest as m grows") {
    auto fb = Observable::first_bit();
    auto cover1 = enumerate_bad_cylinders(fb, kGap, 1, 12);
    auto cover2 = enumerate_bad_cylinders(fb, kGap, 2, 12);
    CHECK(cover_event_subset(cover2, cover1));
}

TEST_CASE("depth-limit soundness: deeper covers contain shallower ones as events") {
    auto fb = Observable::first_bit();
    auto shallow = enumerate_bad_cylinders(fb, kGap, 2, 10);
    auto deep = enumerate_bad_cylinders(fb, kGap, 2, 12);
    CHECK(cover_event_subset(shallow, deep));
    auto m = bernoulli(R(1, 2));
    CHECK(cover_measure(shallow, *m) <= cover_measure(deep, *m));
}

TEST_CASE("cover measures") {
    auto fb = Observable::first_bit();
    CylinderCover single(1, kGap, fb, 3);
    single.strings = {"011"};
    CHECK(cover_measure(single, *bernoulli(R(1, 2))) == R(1, 8));
    CHECK(cover_measure(single, *bernoulli(R(3, 10))) == R(63, 1000));

    CylinderCover empty(1, kGap, fb, 3);
    CHECK(cover_measure(empty, *bernoulli(R(1, 2))) == R(0));
}

TEST_CASE("uniform bound over several measures from one cover") {
    auto fb = Observable::first_bit();
    std::vector<MeasurePtr> measures = {bernoulli(R(1, 2)), bernoulli(R(3, 10)),
                                        markov(R(1, 5), R(1, 2))};
    for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{4}}) {
        auto report = verify_uniform_bound(fb, kGap, m, 14, measures, R(12));
        CHECK(report.holds);
        CHECK(report.per_measure.size() == measures.size());
        for (const auto& value : report.per_measure) CHECK(value <= report.bound);
    }
}

TEST_CASE("markov inequality cross-check") {
    auto fb = Observable::first_bit();
    std::size_t depth = 12;
    std::size_t n = depth;  // window 1: horizon n needs n bits
    for (std::size_t m : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        auto cover = enumerate_bad_cylinders(fb, kGap, m, depth);
        for (const auto& measure :
             {bernoulli(R(1, 2)), bernoulli(R(3, 10)), markov(R(1, 5), R(1, 2))}) {
            Rational truncated = cover_measure_truncated(cover, *measure, n);
            Rational expectation = exact_expected_upcrossings(*measure, fb, kGap, n);
            CHECK(truncated * Rational(m) <= expectation);
        }
    }
}

TEST_CASE("parallel enumeration is byte-identical to serial") {
    auto fb = Observable::first_bit();
    auto serial = enumerate_bad_cylinders(fb, kGap, 2, 14, 1);
    auto parallel = enumerate_bad_cylinders(fb, kGap, 2, 14, 8);
    CHECK(serial.strings == parallel.strings);
}
