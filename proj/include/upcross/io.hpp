#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "upcross/cover.hpp"
#include "upcross/errors.hpp"
#include "upcross/measures.hpp"
#include "upcross/orbit.hpp"
#include "upcross/oscillation.hpp"
#include "upcross/rational.hpp"

namespace upcross {

namespace detail {

inline std::string trimmed(const std::string& line) {
    auto begin = line.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    auto end = line.find_last_not_of(" \t\r\n");
    return line.substr(begin, end - begin + 1);
}

}  // namespace detail

/// Sequence file: one rational per line, "p/q" or decimal; '#' comments and
/// blank lines ignored. Parse errors name the offending line.
inline std::vector<Rational> read_sequence(std::istream& in) {
    std::vector<Rational> terms;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = detail::trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        try {
            terms.push_back(parse_rational(t));
        } catch (const error&) {
            throw error(errc::parse_error,
                        "line " + std::to_string(line_no) + ": cannot parse '" + t + "'");
        }
    }
    return terms;
}

inline std::vector<Rational> read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error(errc::parse_error, "cannot open sequence file: " + path);
    return read_sequence(in);
}

/// Binary string file: ASCII 0/1, whitespace ignored.
inline BinaryString read_bits(std::istream& in) {
    BinaryString s;
    char c;
    std::size_t pos = 0;
    while (in.get(c)) {
        ++pos;
        if (c == '0')
            s.bits.push_back(0);
        else if (c == '1')
            s.bits.push_back(1);
        else if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
            continue;
        else
            throw error(errc::parse_error,
                        "unexpected character at offset " + std::to_string(pos));
    }
    return s;
}

inline BinaryString read_bits_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error(errc::parse_error, "cannot open bits file: " + path);
    return read_bits(in);
}

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& field) {
    if (!j.contains(field) || !j[field].is_string())
        throw error(errc::parse_error, "expected rational string field '" + field + "'");
    return parse_rational(j[field].get<std::string>());
}

}  // namespace detail

/// Measure spec JSON:
///   {"kind":"bernoulli","q":"3/10"}
///   {"kind":"markov","p01":"1/5","p11":"1/2"}            (optional "pi0")
///   {"kind":"mixture","weights":[...],"components":[...]}
inline MeasurePtr measure_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw error(errc::parse_error, "measure spec must be an object with 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "bernoulli") return bernoulli(detail::json_rational(j, "q"));
    if (kind == "markov") {
        Rational p01 = detail::json_rational(j, "p01");
        Rational p11 = detail::json_rational(j, "p11");
        if (j.contains("pi0"))
            return markov_with_initial(p01, p11, detail::json_rational(j, "pi0"));
        return markov(p01, p11);
    }
    if (kind == "mixture") {
        if (!j.contains("weights") || !j.contains("components"))
            throw error(errc::parse_error, "mixture spec needs weights and components");
        std::vector<Rational> weights;
        for (const auto& w : j["weights"])
            weights.push_back(parse_rational(w.get<std::string>()));
        std::vector<MeasurePtr> components;
        for (const auto& c : j["components"]) components.push_back(measure_from_json(c));
        return mixture(std::move(weights), std::move(components));
    }
    throw error(errc::parse_error, "unknown measure kind: " + kind);
}

inline MeasurePtr read_measure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error(errc::parse_error, "cannot open measure file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
    return measure_from_json(j);
}

/// Observable spec JSON: {"window":2,"table":{"00":"0","01":"1",...}}.
inline Observable observable_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("window") || !j.contains("table"))
        throw error(errc::parse_error, "observable spec needs 'window' and 'table'");
    auto window = j["window"].get<std::size_t>();
    std::map<std::string, Rational> entries;
    for (const auto& [word, value] : j["table"].items())
        entries[word] = parse_rational(value.get<std::string>());
    return Observable::from_table(window, entries);
}

inline Observable read_observable_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw error(errc::parse_error, "cannot open observable file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error(errc::parse_error, path + ": " + e.what());
    }
    return observable_from_json(j);
}

/// Cover file: header comments with the parameters, then one binary string
/// per line in lexicographic order.
inline void write_cover(std::ostream& out, const CylinderCover& cover) {
    out << "# m=" << cover.m << " alpha=" << format_rational_pq(cover.gap.alpha)
        << " beta=" << format_rational_pq(cover.gap.beta)
        << " window=" << cover.observable.window() << " depth=" << cover.depth_limit
        << "\n";
    for (const auto& s : cover.strings) out << s << "\n";
}

inline std::vector<std::string> read_cover_strings(std::istream& in) {
    std::vector<std::string> strings;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = detail::trimmed(line);
        if (t.empty() || t[0] == '#') continue;
        for (char c : t)
            if (c != '0' && c != '1')
                throw error(errc::parse_error, "cover line is not a binary string: " + t);
        strings.push_back(t);
    }
    return strings;
}

}  // namespace upcross
