#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/measures.hpp"
#include "upcross/oscillation.hpp"
#include "upcross/rational.hpp"
#include "upcross/sequence.hpp"

namespace upcross {

/// Finite-window observable: a function of an infinite binary sequence that
/// depends only on its first `window` bits, tabulated over all 2^window words.
class Observable {
public:
    Observable(std::size_t window, std::vector<Rational> table)
        : window_(window), table_(std::move(table)) {
        if (window_ == 0 || window_ > 20)
            throw error(errc::bad_parameter, "observable window must be in 1..20");
        if (table_.size() != (std::size_t{1} << window_))
            throw error(errc::bad_parameter, "observable table must have 2^window entries");
        bound_ = 0;
        for (const auto& v : table_) {
            Rational mag = rational_abs(v);
            if (mag > bound_) bound_ = mag;
        }
    }

    static Observable from_table(std::size_t window,
                                 const std::map<std::string, Rational>& entries) {
        std::vector<Rational> table(std::size_t{1} << window, Rational(0));
        std::vector<bool> seen(table.size(), false);
        for (const auto& [word, value] : entries) {
            if (word.size() != window)
                throw error(errc::bad_parameter, "table word '" + word + "' has wrong length");
            std::size_t idx = 0;
            for (char c : word) {
                if (c != '0' && c != '1')
                    throw error(errc::bad_parameter, "table word must be binary");
                idx = (idx << 1) | static_cast<std::size_t>(c == '1');
            }
            if (seen[idx])
                throw error(errc::bad_parameter, "duplicate table word '" + word + "'");
            seen[idx] = true;
            table[idx] = value;
        }
        for (bool s : seen)
            if (!s) throw error(errc::bad_parameter, "observable table is missing entries");
        return Observable(window, std::move(table));
    }

    static Observable first_bit() { return Observable(1, {Rational(0), Rational(1)}); }

    static Observable constant(const Rational& value) {
        return Observable(1, {value, value});
    }

    /// Indicator of one window word, e.g. "01".
    static Observable indicator(const std::string& word) {
        if (word.empty())
            throw error(errc::bad_parameter, "indicator word must be nonempty");
        std::size_t idx = 0;
        for (char c : word) {
            if (c != '0' && c != '1')
                throw error(errc::bad_parameter, "indicator word must be binary");
            idx = (idx << 1) | static_cast<std::size_t>(c == '1');
        }
        std::vector<Rational> table(std::size_t{1} << word.size(), Rational(0));
        table[idx] = Rational(1);
        return Observable(word.size(), std::move(table));
    }

    std::size_t window() const { return window_; }
    const Rational& bound() const { return bound_; }  // F = max |table value|
    const std::vector<Rational>& table() const { return table_; }

    /// Value on the window starting at `offset` (0-based) of the bits.
    const Rational& eval(const std::vector<std::uint8_t>& bits, std::size_t offset) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < window_; ++i)
            idx = (idx << 1) | bits[offset + i];
        return table_[idx];
    }

private:
    std::size_t window_;
    std::vector<Rational> table_;
    Rational bound_;
};

/// f evaluated on each shifted window of the prefix: values for shifts
/// 0..count-1 where count = |prefix| - window + 1.
inline std::vector<Rational> orbit_values(const BinaryString& prefix, const Observable& f) {
    if (prefix.size() < f.window())
        throw error(errc::prefix_too_short, "prefix shorter than the observable window");
    std::vector<Rational> values;
    values.reserve(prefix.size() - f.window() + 1);
    for (std::size_t i = 0; i + f.window() <= prefix.size(); ++i)
        values.push_back(f.eval(prefix.bits, i));
    return values;
}

struct OrbitAverages {
    std::vector<Rational> values;  // Birkhoff averages for horizons 1..n
    std::size_t horizon = 0;
};

/// Running averages of f along the shift orbit determined by the prefix.
inline OrbitAverages birkhoff_averages(const BinaryString& prefix, const Observable& f,
                                       std::size_t n) {
    if (n == 0)
        throw error(errc::precondition_violated, "birkhoff_averages needs n >= 1");
    if (prefix.size() < n + f.window() - 1)
        throw error(errc::prefix_too_short,
                    "prefix must have at least n + window - 1 bits");
    auto values = orbit_values(prefix, f);
    values.resize(n);
    BoundedSequence seq(std::move(values), f.bound());
    return OrbitAverages{running_averages(seq), n};
}

namespace detail {

/// DFS over all binary strings of the full cylinder length, carrying the
/// measure walker, the running orbit sum, and the greedy crossing state.
/// Orbit values are produced only once the depth passes `shift` whole
/// positions (j = shift gives E[C_n(T^j x)]).
inline Rational expected_upcrossings_enumerated(const StationaryMeasure& m,
                                                const Observable& f, const Gap& gap,
                                                std::size_t n, std::size_t shift) {
    const std::size_t k = f.window();
    const std::size_t length = n + shift + k - 1;
    if (length > 20)
        throw error(errc::too_large, "exact enumeration is limited to 2^20 cylinders");

    auto walker = m.walker();
    std::vector<std::uint8_t> bits;
    bits.reserve(length);
    Rational total = 0;

    auto dfs = [&](auto&& self, Rational sum, bool seeking_low, std::size_t count) -> void {
        std::size_t depth = bits.size();
        if (depth >= shift + k) {
            // one new orbit value: window ending at the current last bit
            std::size_t t = depth - shift - k + 1;  // orbit terms so far
            sum += f.eval(bits, depth - k);
            if (seeking_low) {
                if (sum < gap.alpha * Rational(t)) seeking_low = false;
            } else if (sum > gap.beta * Rational(t)) {
                ++count;
                seeking_low = true;
            }
        }
        if (depth == length) {
            if (count > 0) total += walker->value() * Rational(count);
            return;
        }
        for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
            walker->push(bit);
            bits.push_back(bit);
            self(self, sum, seeking_low, count);
            bits.pop_back();
            walker->pop();
        }
    };

    // The root contributes no orbit value; run children directly so the
    // depth >= shift + k guard above sees post-push depths only.
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
        walker->push(bit);
        bits.push_back(bit);
        dfs(dfs, Rational(0), true, 0);
        bits.pop_back();
        walker->pop();
    }
    return total;
}

}  // namespace detail

/// E[C_n] by full cylinder enumeration at length n + window - 1. Exact.
inline Rational exact_expected_upcrossings(const StationaryMeasure& m, const Observable& f,
                                           const Gap& gap, std::size_t n) {
    if (n == 0) return Rational(0);
    return detail::expected_upcrossings_enumerated(m, f, gap, n, 0);
}

struct ShiftInvarianceReport {
    Rational e0;
    Rational ej;
    bool equal = false;
};

/// Compares E[C_n(x)] with E[C_n(T^j x)], both by exact enumeration. Equal
/// for stationary measures; the averaging swap rests on exactly this.
inline ShiftInvarianceReport shift_invariance_of_expectation(const StationaryMeasure& m,
                                                             const Observable& f,
                                                             const Gap& gap, std::size_t n,
                                                             std::size_t j) {
    ShiftInvarianceReport report;
    report.e0 = exact_expected_upcrossings(m, f, gap, n);
    report.ej = j == 0 ? report.e0
                       : detail::expected_upcrossings_enumerated(m, f, gap, n, j);
    report.equal = report.e0 == report.ej;
    return report;
}

struct MonteCarloEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t trials = 0;
};

/// Sample mean of C_n over seeded sampled prefixes. Deterministic given
/// (seed, trials); carries a standard error, never gates exact checks.
inline MonteCarloEstimate monte_carlo_expected_upcrossings(const StationaryMeasure& m,
                                                           const Observable& f,
                                                           const Gap& gap, std::size_t n,
                                                           std::size_t trials,
                                                           std::uint64_t seed) {
    if (trials == 0)
        throw error(errc::precondition_violated, "monte carlo needs trials >= 1");
    const std::size_t length = n + f.window() - 1;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        BinaryString prefix = m.sample_prefix(length, seed + t);
        auto values = orbit_values(prefix, f);
        BoundedSequence seq(std::move(values), f.bound());
        auto c = static_cast<double>(count_upcrossings(seq, gap, n).count);
        sum += c;
        sum_sq += c * c;
    }
    MonteCarloEstimate est;
    est.trials = trials;
    est.estimate = sum / static_cast<double>(trials);
    double variance =
        (sum_sq / static_cast<double>(trials)) - est.estimate * est.estimate;
    if (variance < 0) variance = 0;
    est.stderr_ = std::sqrt(variance / static_cast<double>(trials));
    return est;
}

}  // namespace upcross
