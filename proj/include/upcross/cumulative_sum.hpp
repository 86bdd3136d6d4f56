#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/rational.hpp"
#include "upcross/sequence.hpp"

namespace upcross {

/// Disjoint index intervals 0 <= l_1 < r_1 < l_2 < r_2 < ... <= n into the
/// partial-sum path. May be empty.
struct IntervalFamily {
    std::vector<std::pair<std::size_t, std::size_t>> intervals;

    std::size_t size() const { return intervals.size(); }
};

struct CumSumResult {
    Rational value;
    IntervalFamily family;
    std::size_t family_size = 0;
};

/// Slope-adjusted value of one family against the path h:
/// sum of [h(r) - beta*r] - [h(l) - alpha*l].
inline Rational family_value(const std::vector<Rational>& h, const Gap& gap,
                             const IntervalFamily& family) {
    Rational total = 0;
    for (const auto& [l, r] : family.intervals) {
        total += (h[r] - gap.beta * Rational(r)) - (h[l] - gap.alpha * Rational(l));
    }
    return total;
}

namespace detail {

struct CumState {
    bool feasible = false;
    Rational value;
    std::size_t count = 0;
};

// Larger value wins; on equal value, larger interval count.
inline bool cum_better(const CumState& a, const CumState& b) {
    if (a.feasible != b.feasible) return a.feasible;
    if (!a.feasible) return false;
    if (a.value != b.value) return a.value > b.value;
    return a.count > b.count;
}

inline bool cum_equal(const CumState& a, const CumState& b) {
    return a.feasible && b.feasible && a.value == b.value && a.count == b.count;
}

}  // namespace detail

/// Maximum over all interval families of the slope-adjusted sum, by a
/// two-state DP over positions 0..n (no open interval / interval opened).
/// Among optimal families the returned one has maximal interval count, ties
/// broken toward the lexicographically smallest endpoint list.
inline CumSumResult cumulative_sum(const BoundedSequence& seq, const Gap& gap,
                                   std::size_t n) {
    if (n > seq.size())
        throw error(errc::index_out_of_range, "n exceeds sequence length");

    const auto h = partial_sums(seq);
    using detail::CumState;

    // Suffix tables: best completion from position k onward, ending with no
    // open interval. closed[k] may also open at k; open[k] may close at k.
    std::vector<CumState> closed(n + 2), open(n + 2);
    closed[n + 1] = {true, Rational(0), 0};
    open[n + 1] = {};  // a dangling open interval is not a family

    for (std::size_t k = n + 1; k-- > 0;) {
        // open state at position k: close here, or skip
        CumState best = open[k + 1];
        if (closed[k + 1].feasible) {
            CumState close_here{true,
                                closed[k + 1].value + h[k] - gap.beta * Rational(k),
                                closed[k + 1].count};
            if (detail::cum_better(close_here, best)) best = close_here;
        }
        open[k] = best;

        // closed state at position k: open here, or skip
        best = closed[k + 1];
        if (open[k + 1].feasible) {
            CumState open_here{true,
                               open[k + 1].value - (h[k] - gap.alpha * Rational(k)),
                               open[k + 1].count + 1};
            if (detail::cum_better(open_here, best)) best = open_here;
        }
        closed[k] = best;
    }

    CumSumResult result;
    result.value = closed[0].value;
    result.family_size = closed[0].count;

    // Forward reconstruction. Preferring to open (and close) at the earliest
    // admissible position yields the lexicographically smallest endpoint list
    // among maximal-count optima.
    bool in_open = false;
    std::size_t pending_l = 0;
    CumState target = closed[0];
    for (std::size_t k = 0; k <= n; ++k) {
        if (!in_open) {
            if (open[k + 1].feasible) {
                CumState open_here{true,
                                   open[k + 1].value - (h[k] - gap.alpha * Rational(k)),
                                   open[k + 1].count + 1};
                if (detail::cum_equal(open_here, target)) {
                    pending_l = k;
                    in_open = true;
                    target = open[k + 1];
                    continue;
                }
            }
            target = closed[k + 1];
        } else {
            if (closed[k + 1].feasible) {
                CumState close_here{true,
                                    closed[k + 1].value + h[k] - gap.beta * Rational(k),
                                    closed[k + 1].count};
                if (detail::cum_equal(close_here, target)) {
                    result.family.intervals.emplace_back(pending_l, k);
                    in_open = false;
                    target = closed[k + 1];
                    continue;
                }
            }
            target = open[k + 1];
        }
    }
    return result;
}

/// Exhaustive oracle: enumerates every interval family on 0..n. Exponential;
/// refuses n > 14.
inline CumSumResult cumulative_sum_bruteforce(const BoundedSequence& seq, const Gap& gap,
                                              std::size_t n) {
    if (n > seq.size())
        throw error(errc::index_out_of_range, "n exceeds sequence length");
    if (n > 14)
        throw error(errc::too_large, "brute-force enumeration is limited to n <= 14");

    const auto h = partial_sums(seq);

    CumSumResult best;
    best.value = 0;  // empty family

    std::vector<std::pair<std::size_t, std::size_t>> current;
    Rational current_value = 0;

    // Families are generated in lexicographic endpoint order, so the first
    // family reaching the best (value, size) is the canonical one.
    auto consider = [&]() {
        bool better = current_value > best.value ||
                      (current_value == best.value && current.size() > best.family_size);
        if (better) {
            best.value = current_value;
            best.family.intervals = current;
            best.family_size = current.size();
        }
    };

    auto recurse = [&](auto&& self, std::size_t start) -> void {
        consider();
        for (std::size_t l = start; l + 1 <= n; ++l) {
            for (std::size_t r = l + 1; r <= n; ++r) {
                Rational term =
                    (h[r] - gap.beta * Rational(r)) - (h[l] - gap.alpha * Rational(l));
                current.emplace_back(l, r);
                current_value += term;
                self(self, r + 1);
                current_value -= term;
                current.pop_back();
            }
        }
    };
    recurse(recurse, 0);
    return best;
}

/// Default boundary-loss constant for the potential step: the shift can cost
/// at most this much when the optimal family touches the origin.
inline Rational default_step_constant(const BoundedSequence& seq, const Gap& gap) {
    return seq.bound() + rational_abs(gap.alpha) + 2 * rational_abs(gap.beta) + gap.width();
}

struct PotentialStepReport {
    Rational delta;
    std::size_t s = 0;
    Rational lower_bound;
    bool holds = false;
};

/// Change of the cumulative sum when the origin moves one step right (drop
/// a_1, append a_{n+1}), against the lower bound s*(beta-alpha) - C0.
inline PotentialStepReport potential_step(const BoundedSequence& seq, const Gap& gap,
                                          std::size_t n) {
    if (n + 1 > seq.size())
        throw error(errc::index_out_of_range, "potential step needs n + 1 terms");

    CumSumResult before = cumulative_sum(seq.window(0, n), gap, n);
    CumSumResult after = cumulative_sum(seq.window(1, n), gap, n);

    PotentialStepReport report;
    report.delta = after.value - before.value;
    report.s = before.family_size;
    report.lower_bound =
        Rational(report.s) * gap.width() - default_step_constant(seq, gap);
    report.holds = report.delta >= report.lower_bound;
    return report;
}

struct ThreePointsReport {
    std::size_t c_n = 0;
    std::size_t s = 0;
    bool holds = false;
};

/// The three-points consequence: C_n <= 3s + 2 where s is the size of the
/// maximal-count optimal family.
inline ThreePointsReport upcrossings_vs_family_size(const BoundedSequence& seq,
                                                    const Gap& gap, std::size_t n) {
    ThreePointsReport report;
    report.c_n = count_upcrossings(seq, gap, n).count;
    report.s = cumulative_sum(seq, gap, n).family_size;
    report.holds = report.c_n <= 3 * report.s + 2;
    return report;
}

struct UpperBoundReport {
    Rational value;
    Rational bound;
    bool holds = false;
};

/// Cumulative sum never exceeds (A + |alpha| + |beta|) * n.
inline UpperBoundReport cumsum_upper_bound(const BoundedSequence& seq, const Gap& gap,
                                           std::size_t n) {
    UpperBoundReport report;
    report.value = cumulative_sum(seq, gap, n).value;
    report.bound = (seq.bound() + gap.endpoint_mass()) * Rational(n);
    report.holds = report.value <= report.bound;
    return report;
}

}  // namespace upcross
