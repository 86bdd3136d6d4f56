#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/rational.hpp"
#include "upcross/sequence.hpp"

namespace upcross {

struct WindowReport {
    std::vector<std::size_t> counts;  // C_n(a^(1)) .. C_n(a^(N))
    Rational average;
    Rational bound;
    Rational constant_c;
    bool holds = false;
    /// False when N < n; the bound is only claimed for N >= n, but the
    /// average is still computed.
    bool lemma_applicable = true;
};

/// Default for the lemma's unnamed absolute constant; validated (not proven)
/// by the exhaustive and randomized campaigns.
inline Rational default_lemma_constant() { return Rational(12); }

/// Average upcrossing count over N sliding windows of length n, with the
/// bound constant_c * (A + |alpha| + |beta|) / (beta - alpha).
inline WindowReport window_average(const BoundedSequence& seq, const Gap& gap,
                                   std::size_t n, std::size_t N,
                                   const Rational& constant_c = default_lemma_constant()) {
    if (n == 0 || N == 0)
        throw error(errc::precondition_violated, "window_average needs n >= 1 and N >= 1");
    if (seq.size() < N + n - 1)
        throw error(errc::window_too_short,
                    "sequence too short: need L >= N + n - 1");

    WindowReport report;
    report.constant_c = constant_c;
    report.lemma_applicable = N >= n;
    report.counts.reserve(N);

    Rational total = 0;
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t c = count_upcrossings(seq.window(i, n), gap, n).count;
        report.counts.push_back(c);
        total += Rational(c);
    }
    report.average = total / Rational(N);
    report.bound = constant_c * (seq.bound() + gap.endpoint_mass()) / gap.width();
    report.holds = report.average <= report.bound;
    return report;
}

/// Sequence generators for probing the lemma's constant.
struct GeneratorSpec {
    enum class Kind { constant, uniform_random, square_wave };
    Kind kind = Kind::uniform_random;
    Rational amplitude = Rational(1);  // A
    Rational value = Rational(0);      // constant generator only
    std::size_t period = 2;            // square wave half-period
    std::uint64_t seed = 0;
    unsigned denominator = 8;          // granularity of random entries
};

inline BoundedSequence generate_sequence(const GeneratorSpec& spec, std::size_t length,
                                         std::uint64_t trial_offset = 0) {
    std::vector<Rational> terms;
    terms.reserve(length);
    switch (spec.kind) {
        case GeneratorSpec::Kind::constant:
            terms.assign(length, spec.value);
            break;
        case GeneratorSpec::Kind::square_wave: {
            std::size_t period = spec.period == 0 ? 1 : spec.period;
            for (std::size_t i = 0; i < length; ++i) {
                bool up = (i / period) % 2 == 0;
                terms.push_back(up ? spec.amplitude : -spec.amplitude);
            }
            break;
        }
        case GeneratorSpec::Kind::uniform_random: {
            std::mt19937_64 rng(spec.seed + 0x9e3779b97f4a7c15ULL * (trial_offset + 1));
            // entries k/denominator with |k/denominator| <= A
            Rational scaled = spec.amplitude * Rational(spec.denominator);
            long hi = (rat_num(scaled) / rat_den(scaled)).convert_to<long>();
            std::uniform_int_distribution<long> dist(-hi, hi);
            for (std::size_t i = 0; i < length; ++i)
                terms.emplace_back(Rational(dist(rng), spec.denominator));
            break;
        }
    }
    return BoundedSequence(std::move(terms), spec.amplitude);
}

struct ConstantEstimate {
    Rational worst_ratio;
    BoundedSequence witness;
};

/// Empirical probe of the lemma constant: over `trials` generated sequences,
/// the largest observed average * (beta - alpha) / (A + |alpha| + |beta|).
inline ConstantEstimate estimate_constant(const GeneratorSpec& spec, const Gap& gap,
                                          std::size_t n, std::size_t N,
                                          std::size_t trials) {
    if (N < n)
        throw error(errc::precondition_violated, "estimate_constant requires N >= n");
    std::size_t length = N + n - 1;
    ConstantEstimate best{Rational(-1), generate_sequence(spec, length, 0)};
    for (std::size_t t = 0; t < trials; ++t) {
        BoundedSequence seq = generate_sequence(spec, length, t);
        WindowReport report = window_average(seq, gap, n, N, Rational(1));
        Rational ratio =
            report.average * gap.width() / (seq.bound() + gap.endpoint_mass());
        if (ratio > best.worst_ratio) {
            best.worst_ratio = ratio;
            best.witness = seq;
        }
    }
    return best;
}

}  // namespace upcross
