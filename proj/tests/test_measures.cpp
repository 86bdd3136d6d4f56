#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "test_helpers.hpp"
#include "upcross/measures.hpp"

using namespace upcross;
using testutil::R;

namespace {
BinaryString bs(const char* s) { return BinaryString::from_string(s); }
}  // namespace

TEST_CASE("bernoulli evaluator") {
    auto uniform = bernoulli(R(1, 2));
    CHECK(uniform->prob(bs("")) == R(1));
    CHECK(uniform->prob(bs("0110")) == R(1, 16));

    auto biased = bernoulli(R(3, 10));
    CHECK(biased->prob(bs("01")) == R(21, 100));

    auto point = bernoulli(R(0));
    CHECK(point->prob(bs("0000")) == R(1));
    CHECK(point->prob(bs("0100")) == R(0));

    CHECK_THROWS_AS(bernoulli(R(11, 10)), error);
    CHECK_THROWS_AS(bernoulli(R(-1, 10)), error);
}

TEST_CASE("markov stationary vector") {
    auto m = markov(R(1, 5), R(1, 2));
    CHECK(m->prob(bs("1")) == R(2, 7));
    CHECK(m->prob(bs("0")) == R(5, 7));

    // p01 = p11 = q reduces to bernoulli(q)
    auto reduced = markov(R(3, 10), R(3, 10));
    auto b = bernoulli(R(3, 10));
    for (std::uint64_t code = 0; code < 256; ++code) {
        BinaryString x;
        for (int i = 7; i >= 0; --i)
            x.bits.push_back(static_cast<std::uint8_t>((code >> i) & 1));
        CHECK(reduced->prob(x) == b->prob(x));
    }

    // symmetric chain: p01 = 1 - p11, p11 = 1/2
    auto sym = markov(R(1, 2), R(1, 2));
    CHECK(sym->prob(bs("0")) == R(1, 2));
    CHECK(sym->prob(bs("1")) == R(1, 2));

    CHECK_THROWS_AS(markov(R(0), R(1)), error);
    CHECK_NOTHROW(markov_with_initial(R(0), R(1), R(1, 3)));
}

TEST_CASE("mixture evaluator") {
    auto single = mixture({R(1)}, {bernoulli(R(3, 10))});
    CHECK(single->prob(bs("011")) == bernoulli(R(3, 10))->prob(bs("011")));

    auto two_point = mixture({R(1, 2), R(1, 2)}, {bernoulli(R(0)), bernoulli(R(1))});
    CHECK(two_point->prob(bs("00")) == R(1, 2));
    CHECK(two_point->prob(bs("11")) == R(1, 2));
    CHECK(two_point->prob(bs("01")) == R(0));

    CHECK_THROWS_AS(mixture({R(1, 2)}, {bernoulli(R(0)), bernoulli(R(1))}), error);
    CHECK_THROWS_AS(mixture({R(1, 2), R(1, 4)}, {bernoulli(R(0)), bernoulli(R(1))}), error);
}

TEST_CASE("axioms hold exactly for the built-in families") {
    for (const auto& m :
         {bernoulli(R(3, 10)), markov(R(1, 5), R(1, 2)),
          mixture({R(1, 2), R(1, 2)}, {bernoulli(R(0)), bernoulli(R(1))}),
          mixture({R(1, 3), R(2, 3)}, {bernoulli(R(1, 4)), markov(R(1, 5), R(1, 2))})}) {
        auto report = check_axioms(*m, 8);
        CHECK(report.kolmogorov_ok);
        CHECK(report.stationary_ok);
        CHECK(report.worst_violation == R(0));
    }
    CHECK_THROWS_AS(check_axioms(*bernoulli(R(1, 2)), 17), error);
}

TEST_CASE("axiom checker catches a broken evaluator") {
    class Broken final : public StationaryMeasure {
    public:
        Rational prob(const BinaryString&) const override { return Rational(1); }
        std::string describe() const override { return "broken"; }
        std::unique_ptr<ProbWalker> walker() const override {
            class W final : public ProbWalker {
            public:
                void push(std::uint8_t) override {}
                void pop() override {}
                const Rational& value() const override { return one_; }

            private:
                Rational one_{1};
            };
            return std::make_unique<W>();
        }
    };
    auto report = check_axioms(Broken{}, 3);
    CHECK_FALSE(report.kolmogorov_ok);
    CHECK(report.worst_violation > R(0));
}

TEST_CASE("off-stationary markov fails only the stationarity axiom") {
    auto control = markov_with_initial(R(1, 5), R(1, 2), R(1, 2));
    auto report = check_axioms(*control, 6);
    CHECK(report.kolmogorov_ok);
    CHECK_FALSE(report.stationary_ok);
}

TEST_CASE("walker agrees with direct evaluation") {
    for (const auto& m :
         {bernoulli(R(3, 10)), markov(R(1, 5), R(1, 2)),
          mixture({R(1, 2), R(1, 2)}, {bernoulli(R(1, 4)), bernoulli(R(3, 4))})}) {
        auto w = m->walker();
        BinaryString x;
        for (std::uint8_t bit : {1, 0, 0, 1, 1, 0}) {
            w->push(bit);
            x.bits.push_back(bit);
            CHECK(w->value() == m->prob(x));
        }
        w->pop();
        x.bits.pop_back();
        CHECK(w->value() == m->prob(x));
    }
}

TEST_CASE("sampler frequencies match cylinder probabilities statistically") {
    // 4-sigma binomial check on all cylinders of length <= 3, fixed seed
    auto m = markov(R(1, 5), R(1, 2));
    const std::size_t trials = 20000;
    for (std::size_t len = 1; len <= 3; ++len) {
        std::vector<std::size_t> hits(std::size_t{1} << len, 0);
        for (std::size_t t = 0; t < trials; ++t) {
            BinaryString x = m->sample_prefix(len, 1000 + t);
            std::size_t idx = 0;
            for (auto b : x.bits) idx = (idx << 1) | b;
            ++hits[idx];
        }
        for (std::size_t idx = 0; idx < hits.size(); ++idx) {
            BinaryString x;
            for (std::size_t i = 0; i < len; ++i)
                x.bits.push_back(static_cast<std::uint8_t>((idx >> (len - 1 - i)) & 1));
            double p = m->prob(x).convert_to<double>();
            double expected = p * trials;
            double sigma = std::sqrt(p * (1 - p) * trials);
            CHECK(std::abs(static_cast<double>(hits[idx]) - expected) <= 4 * sigma + 1e-9);
        }
    }
}
