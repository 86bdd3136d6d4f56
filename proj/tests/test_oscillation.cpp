#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "upcross/oscillation.hpp"
#include "upcross/sequence.hpp"

using namespace upcross;
using testutil::R;

namespace {
const Rational kLo(2, 5);  // 40%
const Rational kHi(3, 5);  // 60%
}  // namespace

TEST_CASE("oscillation number examples") {
    CHECK(oscillation_number(BinaryString::from_string("1111"), kLo, kHi) == 0);
    // frequencies 0, 1/2, 2/3, 3/4
    CHECK(oscillation_number(BinaryString::from_string("0111"), kLo, kHi) == 1);
    // frequencies 0, 1/2, 1/3, 1/2 never exceed 3/5
    CHECK(oscillation_number(BinaryString::from_string("0101"), kLo, kHi) == 0);
    CHECK_THROWS_AS(oscillation_number(BinaryString::from_string("01"), kHi, kLo), error);
    CHECK_THROWS_AS(oscillation_number(BinaryString{}, kLo, kHi), error);
}

TEST_CASE("oscillation number agrees with count_upcrossings on the bit sequence") {
    std::mt19937_64 rng(53);
    std::bernoulli_distribution coin(0.5);
    for (int trial = 0; trial < 300; ++trial) {
        BinaryString x;
        for (int i = 0; i < 24; ++i) x.bits.push_back(coin(rng) ? 1 : 0);
        std::vector<Rational> terms;
        for (auto b : x.bits) terms.emplace_back(b);
        BoundedSequence seq(terms, R(1));
        CHECK(oscillation_number(x, kLo, kHi) ==
              count_upcrossings(seq, Gap(kLo, kHi), seq.size()).count);
    }
}

TEST_CASE("run-length count agrees with the bit-level count") {
    std::mt19937_64 rng(59);
    std::uniform_int_distribution<int> run_len(1, 6);
    std::uniform_int_distribution<int> runs(1, 10);
    for (int trial = 0; trial < 300; ++trial) {
        RunLengthBinary rl;
        std::uint8_t bit = static_cast<std::uint8_t>(trial & 1);
        int m = runs(rng);
        for (int i = 0; i < m; ++i) {
            rl.runs.emplace_back(bit, BigInt(run_len(rng)));
            bit ^= 1;
        }
        CHECK(oscillation_number(rl, kLo, kHi) ==
              oscillation_number(rl.materialize(), kLo, kHi));
    }
}

TEST_CASE("factor average oscillation") {
    BinaryString ones = BinaryString::from_string("111111111111");
    auto all_ones = factor_average_oscillation(ones, 4, kLo, kHi);
    CHECK(all_ones.average == R(0));
    CHECK(all_ones.factor_count == 9);

    std::string repeated;
    for (int i = 0; i < 4; ++i) repeated += "0111";
    auto report = factor_average_oscillation(BinaryString::from_string(repeated), 4, kLo, kHi);
    CHECK(report.factor_count == 13);
    Rational total = 0;
    for (std::size_t start = 0; start < 13; ++start) {
        BinaryString factor = BinaryString::from_string(repeated.substr(start, 4));
        CHECK(report.oscillations[start] == oscillation_number(factor, kLo, kHi));
        total += Rational(report.oscillations[start]);
    }
    CHECK(report.average == total / R(13));

    CHECK_THROWS_AS(factor_average_oscillation(ones, 13, kLo, kHi), error);
}

TEST_CASE("adversarial construction certifies k oscillations") {
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{5}}) {
        auto s = adversarial_string(k, kLo, kHi);
        CHECK(oscillation_number(s, kLo, kHi) >= k);
    }
    // lengths grow with k
    BigInt prev = 0;
    for (std::size_t k = 1; k <= 8; ++k) {
        auto rl = adversarial_runs(k, kLo, kHi);
        CHECK(oscillation_number(rl, kLo, kHi) >= k);
        BigInt len = rl.total_length();
        CHECK(len > prev);
        prev = len;
    }
}

TEST_CASE("adversarial construction scales to large k via run lengths") {
    auto rl = adversarial_runs(50, kLo, kHi);
    CHECK(oscillation_number(rl, kLo, kHi) >= 50);
    // far beyond anything materializable
    CHECK(rl.total_length() > BigInt(1) << 40);
    CHECK_THROWS_AS(rl.materialize(), error);
}
