#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "upcross/errors.hpp"
#include "upcross/oscillation.hpp"
#include "upcross/rational.hpp"

namespace upcross {

class StationaryMeasure;
using MeasurePtr = std::shared_ptr<const StationaryMeasure>;

/// Incremental prefix-probability evaluator: push bits, read p(prefix), pop.
/// Lets enumeration walk the binary tree without recomputing p from scratch.
class ProbWalker {
public:
    virtual ~ProbWalker() = default;
    virtual void push(std::uint8_t bit) = 0;
    virtual void pop() = 0;
    virtual const Rational& value() const = 0;
};

/// A measure on the binary Cantor space given by exact cylinder probabilities
/// p(x). Stationarity is a checked property, not a structural guarantee; the
/// off-stationary Markov control deliberately violates it.
class StationaryMeasure {
public:
    virtual ~StationaryMeasure() = default;

    virtual Rational prob(const BinaryString& x) const = 0;
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<ProbWalker> walker() const = 0;

    /// Samples a length-L prefix by the conditional chain rule, converting
    /// conditionals to double. Statistical use only; never feeds exact checks.
    virtual BinaryString sample_prefix(std::size_t length, std::uint64_t seed) const {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        BinaryString x;
        x.bits.reserve(length);
        auto w = walker();
        for (std::size_t i = 0; i < length; ++i) {
            Rational p = w->value();
            w->push(1);
            Rational p1 = w->value();
            double conditional = p == 0 ? 0.0 : (p1 / p).convert_to<double>();
            std::uint8_t bit = unit(rng) < conditional ? 1 : 0;
            if (bit == 0) {
                w->pop();
                w->push(0);
            }
            x.bits.push_back(bit);
        }
        return x;
    }
};

namespace detail {

class StackWalker : public ProbWalker {
public:
    explicit StackWalker(Rational root) { stack_.push_back(std::move(root)); }
    void pop() override { stack_.pop_back(); }
    const Rational& value() const override { return stack_.back(); }

protected:
    std::vector<Rational> stack_;
};

}  // namespace detail

class BernoulliMeasure final : public StationaryMeasure {
public:
    explicit BernoulliMeasure(Rational q) : q_(std::move(q)) {
        if (q_ < 0 || q_ > 1)
            throw error(errc::bad_parameter, "bernoulli parameter must lie in [0, 1]");
    }

    Rational prob(const BinaryString& x) const override {
        Rational p = 1;
        for (auto b : x.bits) p *= b ? q_ : Rational(1) - q_;
        return p;
    }

    std::string describe() const override {
        return "bernoulli(" + format_rational(q_) + ")";
    }

    std::unique_ptr<ProbWalker> walker() const override {
        class W final : public detail::StackWalker {
        public:
            explicit W(Rational q) : StackWalker(Rational(1)), q_(std::move(q)) {}
            void push(std::uint8_t bit) override {
                stack_.push_back(stack_.back() * (bit ? q_ : Rational(1) - q_));
            }

        private:
            Rational q_;
        };
        return std::make_unique<W>(q_);
    }

    const Rational& q() const { return q_; }

private:
    Rational q_;
};

/// Two-state Markov chain; p01 = P(next = 1 | current = 0),
/// p11 = P(next = 1 | current = 1). The initial distribution defaults to the
/// stationary vector; an explicit pi0 gives the (generally non-stationary)
/// control.
class MarkovMeasure final : public StationaryMeasure {
public:
    MarkovMeasure(Rational p01, Rational p11)
        : MarkovMeasure(std::move(p01), std::move(p11), Rational(0), false) {
        Rational denom = p01_ + Rational(1) - p11_;
        if (denom == 0)
            throw error(errc::no_unique_stationary,
                        "chain has no unique stationary distribution; supply pi0");
        pi0_ = (Rational(1) - p11_) / denom;
    }

    MarkovMeasure(Rational p01, Rational p11, Rational pi0)
        : MarkovMeasure(std::move(p01), std::move(p11), std::move(pi0), true) {}

    Rational prob(const BinaryString& x) const override {
        if (x.bits.empty()) return Rational(1);
        Rational p = x.bits[0] ? Rational(1) - pi0_ : pi0_;
        for (std::size_t i = 1; i < x.bits.size(); ++i)
            p *= transition(x.bits[i - 1], x.bits[i]);
        return p;
    }

    std::string describe() const override {
        std::string s = "markov(p01=" + format_rational(p01_) +
                        ", p11=" + format_rational(p11_);
        if (explicit_initial_) s += ", pi0=" + format_rational(pi0_);
        return s + ")";
    }

    std::unique_ptr<ProbWalker> walker() const override {
        class W final : public detail::StackWalker {
        public:
            explicit W(const MarkovMeasure& m) : StackWalker(Rational(1)), m_(m) {}
            void push(std::uint8_t bit) override {
                Rational next = bits_.empty()
                                    ? stack_.back() * (bit ? Rational(1) - m_.pi0_ : m_.pi0_)
                                    : stack_.back() * m_.transition(bits_.back(), bit);
                stack_.push_back(std::move(next));
                bits_.push_back(bit);
            }
            void pop() override {
                stack_.pop_back();
                bits_.pop_back();
            }

        private:
            const MarkovMeasure& m_;
            std::vector<std::uint8_t> bits_;
        };
        return std::make_unique<W>(*this);
    }

    Rational transition(std::uint8_t from, std::uint8_t to) const {
        Rational p1 = from ? p11_ : p01_;
        return to ? p1 : Rational(1) - p1;
    }

    const Rational& pi0() const { return pi0_; }

private:
    MarkovMeasure(Rational p01, Rational p11, Rational pi0, bool explicit_initial)
        : p01_(std::move(p01)), p11_(std::move(p11)), pi0_(std::move(pi0)),
          explicit_initial_(explicit_initial) {
        if (p01_ < 0 || p01_ > 1 || p11_ < 0 || p11_ > 1)
            throw error(errc::bad_parameter, "markov parameters must lie in [0, 1]");
        if (explicit_initial_ && (pi0_ < 0 || pi0_ > 1))
            throw error(errc::bad_parameter, "initial distribution must lie in [0, 1]");
    }

    Rational p01_;
    Rational p11_;
    Rational pi0_;
    bool explicit_initial_ = false;
};

class MixtureMeasure final : public StationaryMeasure {
public:
    MixtureMeasure(std::vector<Rational> weights, std::vector<MeasurePtr> components)
        : weights_(std::move(weights)), components_(std::move(components)) {
        if (weights_.empty() || weights_.size() != components_.size())
            throw error(errc::bad_weights, "mixture needs matching weights and components");
        Rational total = 0;
        for (const auto& w : weights_) {
            if (w < 0) throw error(errc::bad_weights, "mixture weights must be nonnegative");
            total += w;
        }
        if (total != 1)
            throw error(errc::bad_weights, "mixture weights must sum to 1");
        for (const auto& c : components_)
            if (!c) throw error(errc::bad_weights, "null mixture component");
    }

    Rational prob(const BinaryString& x) const override {
        Rational p = 0;
        for (std::size_t i = 0; i < components_.size(); ++i)
            p += weights_[i] * components_[i]->prob(x);
        return p;
    }

    std::string describe() const override {
        std::string s = "mixture(";
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i) s += ", ";
            s += format_rational(weights_[i]) + "*" + components_[i]->describe();
        }
        return s + ")";
    }

    std::unique_ptr<ProbWalker> walker() const override {
        class W final : public ProbWalker {
        public:
            explicit W(const MixtureMeasure& m) : m_(m) {
                for (const auto& c : m.components_) walkers_.push_back(c->walker());
                combine();
            }
            void push(std::uint8_t bit) override {
                for (auto& w : walkers_) w->push(bit);
                combine();
            }
            void pop() override {
                for (auto& w : walkers_) w->pop();
                values_.pop_back();
            }
            const Rational& value() const override { return values_.back(); }

        private:
            void combine() {
                Rational p = 0;
                for (std::size_t i = 0; i < walkers_.size(); ++i)
                    p += m_.weights_[i] * walkers_[i]->value();
                values_.push_back(std::move(p));
            }
            const MixtureMeasure& m_;
            std::vector<std::unique_ptr<ProbWalker>> walkers_;
            std::vector<Rational> values_;
        };
        return std::make_unique<W>(*this);
    }

    /// Pick a component by weight, then sample it.
    BinaryString sample_prefix(std::size_t length, std::uint64_t seed) const override {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double u = unit(rng);
        double cumulative = 0.0;
        std::size_t pick = components_.size() - 1;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            cumulative += weights_[i].convert_to<double>();
            if (u < cumulative) {
                pick = i;
                break;
            }
        }
        return components_[pick]->sample_prefix(length, rng());
    }

private:
    std::vector<Rational> weights_;
    std::vector<MeasurePtr> components_;
};

inline MeasurePtr bernoulli(Rational q) {
    return std::make_shared<BernoulliMeasure>(std::move(q));
}

inline MeasurePtr markov(Rational p01, Rational p11) {
    return std::make_shared<MarkovMeasure>(std::move(p01), std::move(p11));
}

inline MeasurePtr markov_with_initial(Rational p01, Rational p11, Rational pi0) {
    return std::make_shared<MarkovMeasure>(std::move(p01), std::move(p11), std::move(pi0));
}

inline MeasurePtr mixture(std::vector<Rational> weights, std::vector<MeasurePtr> components) {
    return std::make_shared<MixtureMeasure>(std::move(weights), std::move(components));
}

struct AxiomReport {
    bool kolmogorov_ok = false;  // p(L) = 1, p(x) = p(x0) + p(x1), p >= 0
    bool stationary_ok = false;  // p(x) = p(0x) + p(1x)
    Rational worst_violation;    // largest |defect| seen; 0 for exact evaluators
};

/// Exact axiom check over all strings of length < depth (children reach
/// length depth). 2^depth enumeration; refuses depth > 16.
inline AxiomReport check_axioms(const StationaryMeasure& m, std::size_t depth) {
    if (depth > 16)
        throw error(errc::too_deep, "axiom check is limited to depth <= 16");

    AxiomReport report;
    report.kolmogorov_ok = true;
    report.stationary_ok = true;
    report.worst_violation = 0;

    auto note = [&](const Rational& defect, bool& flag) {
        if (defect != 0) {
            flag = false;
            Rational mag = rational_abs(defect);
            if (mag > report.worst_violation) report.worst_violation = mag;
        }
    };

    BinaryString empty;
    note(m.prob(empty) - Rational(1), report.kolmogorov_ok);

    for (std::size_t len = 0; len < depth; ++len) {
        BinaryString x;
        x.bits.assign(len, 0);
        for (std::uint64_t code = 0; code < (std::uint64_t{1} << len); ++code) {
            for (std::size_t i = 0; i < len; ++i)
                x.bits[i] = static_cast<std::uint8_t>((code >> (len - 1 - i)) & 1);

            Rational p = m.prob(x);
            if (p < 0) note(p, report.kolmogorov_ok);

            BinaryString x0 = x, x1 = x;
            x0.bits.push_back(0);
            x1.bits.push_back(1);
            note(p - m.prob(x0) - m.prob(x1), report.kolmogorov_ok);

            BinaryString zx, ox;
            zx.bits.push_back(0);
            ox.bits.push_back(1);
            zx.bits.insert(zx.bits.end(), x.bits.begin(), x.bits.end());
            ox.bits.insert(ox.bits.end(), x.bits.begin(), x.bits.end());
            note(p - m.prob(zx) - m.prob(ox), report.stationary_ok);
        }
    }
    return report;
}

}  // namespace upcross
