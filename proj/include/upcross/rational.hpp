#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "upcross/errors.hpp"

namespace upcross {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Serializes as "p/q" ("p" when q == 1).
inline std::string format_rational(const Rational& r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1) {
        s += '/';
        s += rat_den(r).str();
    }
    return s;
}

/// Always "p/q", even for integers. Used in file formats that require the
/// explicit slash form.
inline std::string format_rational_pq(const Rational& r) {
    return rat_num(r).str() + "/" + rat_den(r).str();
}

namespace detail {

inline bool parse_integer(std::string_view s, BigInt& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '+' || s[0] == '-') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    out = BigInt(std::string(s));
    return true;
}

}  // namespace detail

/// Parses "p/q" (integers, q > 0) or a decimal literal, converted exactly to
/// p/10^k. Throws errc::parse_error on anything else.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw error(errc::parse_error, "cannot parse rational: '" + std::string(text) + "'");
    };
    if (text.empty()) return fail();

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt p, q;
        if (!detail::parse_integer(text.substr(0, slash), p)) return fail();
        if (!detail::parse_integer(text.substr(slash + 1), q)) return fail();
        if (q <= 0) throw error(errc::parse_error, "denominator must be positive: '" + std::string(text) + "'");
        return Rational(p, q);
    }

    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string_view whole = text.substr(0, dot);
        std::string_view frac = text.substr(dot + 1);
        bool negative = !whole.empty() && whole[0] == '-';
        BigInt w = 0;
        if (!whole.empty() && whole != "-" && whole != "+") {
            if (!detail::parse_integer(whole, w)) return fail();
        }
        if (frac.empty()) return Rational(w);
        BigInt f;
        if (frac[0] == '+' || frac[0] == '-') return fail();
        if (!detail::parse_integer(frac, f)) return fail();
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        BigInt num = boost::multiprecision::abs(w) * scale + f;
        if (negative || w < 0) num = -num;
        return Rational(num, scale);
    }

    BigInt p;
    if (!detail::parse_integer(text, p)) return fail();
    return Rational(p);
}

inline Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace upcross
