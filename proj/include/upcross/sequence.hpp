#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/rational.hpp"

namespace upcross {

/// Open interval (alpha, beta) whose repeated crossing witnesses
/// non-convergence of the running averages.
struct Gap {
    Rational alpha;
    Rational beta;

    Gap(Rational a, Rational b) : alpha(std::move(a)), beta(std::move(b)) {
        if (!(alpha < beta))
            throw error(errc::bad_parameter, "gap requires alpha < beta");
    }

    Rational width() const { return beta - alpha; }

    /// |alpha| + |beta|, the term that pairs with the amplitude bound in
    /// every estimate here.
    Rational endpoint_mass() const { return rational_abs(alpha) + rational_abs(beta); }
};

/// Finite prefix a_1..a_L of a rational sequence together with a certified
/// amplitude bound A. The bound is caller-supplied and validated, never
/// inferred.
class BoundedSequence {
public:
    BoundedSequence(std::vector<Rational> terms, Rational bound)
        : terms_(std::move(terms)), bound_(std::move(bound)) {
        if (bound_ < 0)
            throw error(errc::bad_parameter, "bound must be nonnegative");
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (rational_abs(terms_[i]) > bound_)
                throw error(errc::bad_parameter,
                            "term " + std::to_string(i + 1) + " exceeds the stated bound");
        }
    }

    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const std::vector<Rational>& terms() const { return terms_; }
    const Rational& bound() const { return bound_; }
    const Rational& term(std::size_t i) const { return terms_[i]; }  // 0-based

    /// Contiguous window [start, start+len), 0-based, keeping the bound.
    BoundedSequence window(std::size_t start, std::size_t len) const {
        if (start + len > terms_.size())
            throw error(errc::index_out_of_range, "window exceeds sequence length");
        std::vector<Rational> w(terms_.begin() + static_cast<std::ptrdiff_t>(start),
                                terms_.begin() + static_cast<std::ptrdiff_t>(start + len));
        return BoundedSequence(std::move(w), bound_);
    }

    /// The shifted sequence a^(i) = (a_i, a_{i+1}, ...), i 1-based.
    BoundedSequence shifted(std::size_t i) const {
        if (i < 1 || i > terms_.size() + 1)
            throw error(errc::index_out_of_range, "shift origin out of range");
        return window(i - 1, terms_.size() - (i - 1));
    }

private:
    std::vector<Rational> terms_;
    Rational bound_;
};

struct UpcrossingResult {
    std::size_t count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> witnesses;  // 1-based (l_i, r_i)
};

/// h(0..L) with h(0) = 0 and h(k) = a_1 + ... + a_k.
inline std::vector<Rational> partial_sums(const BoundedSequence& seq) {
    std::vector<Rational> h;
    h.reserve(seq.size() + 1);
    h.emplace_back(0);
    for (const auto& a : seq.terms()) h.push_back(h.back() + a);
    return h;
}

/// E(a)_k = (a_1 + ... + a_k) / k for k = 1..L.
inline std::vector<Rational> running_averages(const BoundedSequence& seq) {
    if (seq.empty())
        throw error(errc::empty_sequence, "running averages need at least one term");
    std::vector<Rational> avg;
    avg.reserve(seq.size());
    Rational sum = 0;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        sum += seq.term(k);
        avg.push_back(sum / Rational(k + 1));
    }
    return avg;
}

namespace detail {

/// Greedy two-state scan over a prefix of an averages sequence. Seeks a value
/// strictly below `lo`, then one strictly above `hi`, and repeats; witnesses
/// take the earliest qualifying index.
inline UpcrossingResult greedy_crossings(const std::vector<Rational>& averages,
                                         const Rational& lo, const Rational& hi,
                                         std::size_t n) {
    UpcrossingResult result;
    bool seeking_low = true;
    std::size_t open_l = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const Rational& v = averages[k - 1];
        if (seeking_low) {
            if (v < lo) {
                open_l = k;
                seeking_low = false;
            }
        } else {
            if (v > hi) {
                result.witnesses.emplace_back(open_l, k);
                seeking_low = true;
            }
        }
    }
    result.count = result.witnesses.size();
    return result;
}

}  // namespace detail

/// C_n(a): the maximal number of interleaved pairs (l_i, r_i) with
/// l_i < r_i <= n, average at l_i strictly below alpha, average at r_i
/// strictly above beta. Greedy earliest-index scan; its maximality is a
/// tested property.
inline UpcrossingResult count_upcrossings(const BoundedSequence& seq, const Gap& gap,
                                          std::size_t n) {
    if (n > seq.size())
        throw error(errc::index_out_of_range, "n exceeds sequence length");
    if (n == 0) return {};
    return detail::greedy_crossings(running_averages(seq), gap.alpha, gap.beta, n);
}

/// Symmetric count: strictly above beta first, then strictly below alpha.
inline UpcrossingResult count_downcrossings(const BoundedSequence& seq, const Gap& gap,
                                            std::size_t n) {
    if (n > seq.size())
        throw error(errc::index_out_of_range, "n exceeds sequence length");
    if (n == 0) return {};
    auto averages = running_averages(seq);
    std::vector<Rational> negated;
    negated.reserve(averages.size());
    for (const auto& v : averages) negated.push_back(-v);
    return detail::greedy_crossings(negated, -gap.beta, -gap.alpha, n);
}

}  // namespace upcross
