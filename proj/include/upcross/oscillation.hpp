#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/rational.hpp"
#include "upcross/sequence.hpp"

namespace upcross {

struct BinaryString {
    std::vector<std::uint8_t> bits;

    BinaryString() = default;
    explicit BinaryString(std::vector<std::uint8_t> b) : bits(std::move(b)) {}

    static BinaryString from_string(std::string_view text) {
        BinaryString s;
        s.bits.reserve(text.size());
        for (char c : text) {
            if (c == '0')
                s.bits.push_back(0);
            else if (c == '1')
                s.bits.push_back(1);
            else
                throw error(errc::parse_error, "binary string may contain only 0 and 1");
        }
        return s;
    }

    std::size_t size() const { return bits.size(); }

    std::string to_string() const {
        std::string s;
        s.reserve(bits.size());
        for (auto b : bits) s.push_back(b ? '1' : '0');
        return s;
    }
};

/// Run-length form: maximal blocks of equal bits. Lengths are big integers so
/// adversarial constructions whose explicit length is astronomical stay
/// representable.
struct RunLengthBinary {
    std::vector<std::pair<std::uint8_t, BigInt>> runs;

    BigInt total_length() const {
        BigInt t = 0;
        for (const auto& [bit, len] : runs) t += len;
        return t;
    }

    /// Explicit bits; refuses anything above the cap.
    BinaryString materialize(std::size_t cap = std::size_t{1} << 27) const {
        if (total_length() > cap)
            throw error(errc::too_large, "run-length string too long to materialize");
        BinaryString out;
        out.bits.reserve(total_length().convert_to<std::size_t>());
        for (const auto& [bit, len] : runs) {
            std::size_t n = len.convert_to<std::size_t>();
            out.bits.insert(out.bits.end(), n, bit);
        }
        return out;
    }
};

namespace detail {

inline void check_thresholds(const Rational& lo, const Rational& hi) {
    if (!(lo < hi))
        throw error(errc::bad_thresholds, "thresholds require lo < hi");
    if (lo < 0 || hi > 1)
        throw error(errc::bad_thresholds, "thresholds must lie in [0, 1]");
}

}  // namespace detail

/// Number of completed (frequency < lo, later frequency > hi) pairs of the
/// ones-frequency over prefixes, strict inequalities, greedy scan.
/// Frequencies are running averages of the bits, so this agrees exactly with
/// count_upcrossings on the bit sequence.
inline std::size_t oscillation_number(const BinaryString& x, const Rational& lo,
                                      const Rational& hi) {
    detail::check_thresholds(lo, hi);
    if (x.bits.empty())
        throw error(errc::empty_sequence, "oscillation number needs a nonempty string");

    const BigInt lo_num = rat_num(lo), lo_den = rat_den(lo);
    const BigInt hi_num = rat_num(hi), hi_den = rat_den(hi);
    BigInt ones = 0;
    std::size_t count = 0;
    bool seeking_low = true;
    for (std::size_t k = 1; k <= x.bits.size(); ++k) {
        ones += x.bits[k - 1];
        if (seeking_low) {
            if (ones * lo_den < lo_num * k) seeking_low = false;  // f_k < lo
        } else {
            if (ones * hi_den > hi_num * k) {  // f_k > hi
                ++count;
                seeking_low = true;
            }
        }
    }
    return count;
}

/// Same count on a run-length string. Within a run the frequency is monotone,
/// so evaluating at run boundaries is exact.
inline std::size_t oscillation_number(const RunLengthBinary& x, const Rational& lo,
                                      const Rational& hi) {
    detail::check_thresholds(lo, hi);
    if (x.runs.empty())
        throw error(errc::empty_sequence, "oscillation number needs a nonempty string");

    const BigInt lo_num = rat_num(lo), lo_den = rat_den(lo);
    const BigInt hi_num = rat_num(hi), hi_den = rat_den(hi);
    BigInt ones = 0, len = 0;
    std::size_t count = 0;
    bool seeking_low = true;
    for (const auto& [bit, run_len] : x.runs) {
        // During a 0-run the frequency decreases toward the run end; during a
        // 1-run it increases. Either way the run end is the extreme point,
        // and the opposite crossing cannot occur before the next run.
        len += run_len;
        if (bit) ones += run_len;
        if (seeking_low) {
            if (ones * lo_den < lo_num * len) seeking_low = false;
        } else {
            if (ones * hi_den > hi_num * len) {
                ++count;
                seeking_low = true;
            }
        }
    }
    return count;
}

struct OscillationReport {
    std::size_t n = 0;
    std::size_t factor_count = 0;
    std::vector<std::size_t> oscillations;  // one per factor, in start order
    Rational average;
    Rational threshold_lo;
    Rational threshold_hi;
};

/// Oscillation number of every contiguous length-n factor of x, plus the
/// exact average.
inline OscillationReport factor_average_oscillation(const BinaryString& x, std::size_t n,
                                                    const Rational& lo, const Rational& hi) {
    detail::check_thresholds(lo, hi);
    if (n == 0 || n > x.size())
        throw error(errc::window_too_long, "factor length must satisfy 1 <= n <= |x|");

    OscillationReport report;
    report.n = n;
    report.factor_count = x.size() - n + 1;
    report.threshold_lo = lo;
    report.threshold_hi = hi;
    report.oscillations.reserve(report.factor_count);

    const BigInt lo_num = rat_num(lo), lo_den = rat_den(lo);
    const BigInt hi_num = rat_num(hi), hi_den = rat_den(hi);
    std::uint64_t total = 0;
    for (std::size_t start = 0; start < report.factor_count; ++start) {
        std::uint64_t ones = 0;
        std::size_t count = 0;
        bool seeking_low = true;
        for (std::size_t k = 1; k <= n; ++k) {
            ones += x.bits[start + k - 1];
            if (seeking_low) {
                if (BigInt(ones) * lo_den < lo_num * k) seeking_low = false;
            } else {
                if (BigInt(ones) * hi_den > hi_num * k) {
                    ++count;
                    seeking_low = true;
                }
            }
        }
        report.oscillations.push_back(count);
        total += count;
    }
    report.average = Rational(total) / Rational(report.factor_count);
    return report;
}

/// Builds a string (as runs) whose own oscillation number is >= k: alternate
/// minimal 0-blocks and 1-blocks that push the ones-frequency strictly below
/// lo and strictly above hi in turn. Lengths grow geometrically with k.
inline RunLengthBinary adversarial_runs(std::size_t k, const Rational& lo,
                                        const Rational& hi) {
    detail::check_thresholds(lo, hi);
    if (k == 0)
        throw error(errc::bad_parameter, "adversarial construction needs k >= 1");
    if (lo == 0)
        throw error(errc::bad_thresholds,
                    "frequency cannot drop strictly below 0; need lo > 0");
    if (hi == 1)
        throw error(errc::bad_thresholds,
                    "frequency cannot rise strictly above 1; need hi < 1");

    RunLengthBinary s;
    BigInt ones = 0, len = 1;
    s.runs.emplace_back(0, BigInt(1));  // frequency 0 < lo

    auto ceil_plus_one = [](const Rational& r) {
        // smallest integer strictly greater than r
        BigInt q = rat_num(r) / rat_den(r);
        if (q * rat_den(r) <= rat_num(r)) ++q;
        return q;
    };

    for (std::size_t cycle = 0; cycle < k; ++cycle) {
        // append x ones: (ones + x) / (len + x) > hi  <=>  x > (hi*len - ones)/(1 - hi)
        Rational need = (hi * Rational(len) - Rational(ones)) / (Rational(1) - hi);
        BigInt x = ceil_plus_one(need);
        if (x < 1) x = 1;
        s.runs.emplace_back(1, x);
        ones += x;
        len += x;
        if (cycle + 1 == k) break;
        // append y zeros: ones / (len + y) < lo  <=>  y > ones/lo - len
        Rational need0 = Rational(ones) / lo - Rational(len);
        BigInt y = ceil_plus_one(need0);
        if (y < 1) y = 1;
        s.runs.emplace_back(0, y);
        len += y;
    }
    return s;
}

/// Explicit-bit variant; only feasible when the construction fits in memory.
inline BinaryString adversarial_string(std::size_t k, const Rational& lo,
                                       const Rational& hi) {
    return adversarial_runs(k, lo, hi).materialize();
}

}  // namespace upcross
