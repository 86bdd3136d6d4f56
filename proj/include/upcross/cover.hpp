#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <string>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/measures.hpp"
#include "upcross/orbit.hpp"
#include "upcross/rational.hpp"
#include "upcross/sequence.hpp"

namespace upcross {

/// Prefix-free family of binary strings whose cylinders cover the event
/// "the Birkhoff averages of f make >= m upcrossings of the gap within the
/// horizon the string itself determines". Each string is a minimal witness.
struct CylinderCover {
    std::vector<std::string> strings;  // lexicographically sorted
    std::size_t m;
    Gap gap;
    Observable observable;
    std::size_t depth_limit;

    CylinderCover(std::size_t m_, Gap gap_, Observable obs, std::size_t depth)
        : m(m_), gap(std::move(gap_)), observable(std::move(obs)), depth_limit(depth) {}
};

inline bool is_prefix(const std::string& shorter, const std::string& longer) {
    return shorter.size() <= longer.size() &&
           longer.compare(0, shorter.size(), shorter) == 0;
}

inline bool is_prefix_free(const std::vector<std::string>& sorted_strings) {
    for (std::size_t i = 0; i + 1 < sorted_strings.size(); ++i)
        if (is_prefix(sorted_strings[i], sorted_strings[i + 1])) return false;
    return true;
}

/// Every cylinder of `inner` is contained in some cylinder of `outer`.
inline bool cover_event_subset(const CylinderCover& inner, const CylinderCover& outer) {
    for (const auto& x : inner.strings) {
        bool contained = false;
        for (const auto& y : outer.strings) {
            if (is_prefix(y, x)) {
                contained = true;
                break;
            }
        }
        if (!contained) return false;
    }
    return true;
}

namespace detail {

struct CoverSearchState {
    std::vector<std::uint8_t> bits;
    Rational sum;           // running sum of orbit values along this prefix
    bool seeking_low = true;
    std::size_t count = 0;  // greedy upcrossings witnessed so far
};

/// Extends the state by one bit; returns true when the node becomes a
/// minimal witness (count just reached m).
inline bool cover_step(CoverSearchState& st, std::uint8_t bit, const Observable& f,
                       const Gap& gap, std::size_t m) {
    st.bits.push_back(bit);
    const std::size_t depth = st.bits.size();
    const std::size_t k = f.window();
    if (depth < k) return false;
    const std::size_t t = depth - k + 1;
    st.sum += f.eval(st.bits, depth - k);
    if (st.seeking_low) {
        if (st.sum < gap.alpha * Rational(t)) st.seeking_low = false;
    } else if (st.sum > gap.beta * Rational(t)) {
        ++st.count;
        st.seeking_low = true;
    }
    return st.count >= m;
}

inline void cover_dfs(CoverSearchState& st, const Observable& f, const Gap& gap,
                      std::size_t m, std::size_t depth_limit,
                      std::vector<std::string>& out) {
    if (st.bits.size() == depth_limit) return;
    for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
        CoverSearchState child = st;  // copy; the tree is shallow
        if (cover_step(child, bit, f, gap, m)) {
            std::string s;
            s.reserve(child.bits.size());
            for (auto b : child.bits) s.push_back(b ? '1' : '0');
            out.push_back(std::move(s));  // minimal witness; prune subtree
            continue;
        }
        cover_dfs(child, f, gap, m, depth_limit, out);
    }
}

}  // namespace detail

/// Depth-first enumeration of minimal witnesses of ">= m upcrossings" up to
/// depth_limit, with subtree pruning at each emitted string. The result is
/// prefix-free by construction and sorted lexicographically.
///
/// `threads` > 1 partitions the search below a fixed split depth; the output
/// is byte-identical to the serial run.
inline CylinderCover enumerate_bad_cylinders(const Observable& f, const Gap& gap,
                                             std::size_t m, std::size_t depth_limit,
                                             unsigned threads = 1) {
    if (depth_limit > 24)
        throw error(errc::too_deep, "cover enumeration is limited to depth <= 24");
    if (m == 0)
        throw error(errc::bad_parameter, "upcrossing threshold m must be >= 1");

    CylinderCover cover(m, gap, f, depth_limit);

    detail::CoverSearchState root;
    if (threads <= 1 || depth_limit <= 4) {
        detail::cover_dfs(root, f, gap, m, depth_limit, cover.strings);
    } else {
        // Serial search down to the split depth, then one async task per
        // surviving frontier node, merged in frontier order.
        const std::size_t split = std::min<std::size_t>(4, depth_limit - 1);
        std::vector<detail::CoverSearchState> frontier;
        auto top = [&](auto&& self, detail::CoverSearchState& st) -> void {
            if (st.bits.size() == split) {
                frontier.push_back(st);
                return;
            }
            for (std::uint8_t bit : {std::uint8_t{0}, std::uint8_t{1}}) {
                detail::CoverSearchState child = st;
                if (detail::cover_step(child, bit, f, gap, m)) {
                    std::string s;
                    for (auto b : child.bits) s.push_back(b ? '1' : '0');
                    cover.strings.push_back(std::move(s));
                    continue;
                }
                self(self, child);
            }
        };
        top(top, root);

        std::vector<std::future<std::vector<std::string>>> tasks;
        tasks.reserve(frontier.size());
        for (auto& st : frontier) {
            tasks.push_back(std::async(std::launch::async, [&, st]() mutable {
                std::vector<std::string> local;
                detail::cover_dfs(st, f, gap, m, depth_limit, local);
                return local;
            }));
        }
        for (auto& t : tasks) {
            auto local = t.get();
            cover.strings.insert(cover.strings.end(), local.begin(), local.end());
        }
    }
    std::sort(cover.strings.begin(), cover.strings.end());
    return cover;
}

/// Total measure of the cover; well-defined by prefix-freeness.
inline Rational cover_measure(const CylinderCover& cover, const StationaryMeasure& m) {
    Rational total = 0;
    for (const auto& s : cover.strings)
        total += m.prob(BinaryString::from_string(s));
    return total;
}

/// Measure of the cover restricted to strings of length <= max_length, i.e.
/// the witnesses already visible at a finite horizon.
inline Rational cover_measure_truncated(const CylinderCover& cover,
                                        const StationaryMeasure& m,
                                        std::size_t max_length) {
    Rational total = 0;
    for (const auto& s : cover.strings)
        if (s.size() <= max_length) total += m.prob(BinaryString::from_string(s));
    return total;
}

struct UniformBoundReport {
    std::vector<Rational> per_measure;
    Rational bound;
    bool holds = false;
    CylinderCover cover;
};

/// Builds the cover once and evaluates its measure under every supplied
/// measure against c * (F + |alpha| + |beta|) / ((beta - alpha) * m). The
/// single-cover-many-measures structure is the point: the enumeration never
/// consults any measure.
inline UniformBoundReport verify_uniform_bound(const Observable& f, const Gap& gap,
                                               std::size_t m, std::size_t depth_limit,
                                               const std::vector<MeasurePtr>& measures,
                                               const Rational& constant_c,
                                               unsigned threads = 1) {
    UniformBoundReport report{{},
                              constant_c * (f.bound() + gap.endpoint_mass()) /
                                  (gap.width() * Rational(m)),
                              true,
                              enumerate_bad_cylinders(f, gap, m, depth_limit, threads)};
    for (const auto& measure : measures) {
        Rational value = cover_measure(report.cover, *measure);
        if (value > report.bound) report.holds = false;
        report.per_measure.push_back(std::move(value));
    }
    return report;
}

}  // namespace upcross
