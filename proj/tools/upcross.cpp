// Command-line front end: file-driven, seeded, reproducible experiments on
// upcrossing counts, the cumulative-sum potential, the sliding-window bound,
// frequency oscillations, orbit expectations, and effective covers.
//
// Exit codes: 0 success / all bounds hold, 1 precondition violated,
// 2 input parse error, 3 a verified property was violated.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "upcross/cover.hpp"
#include "upcross/cumulative_sum.hpp"
#include "upcross/io.hpp"
#include "upcross/measures.hpp"
#include "upcross/orbit.hpp"
#include "upcross/oscillation.hpp"
#include "upcross/sequence.hpp"
#include "upcross/window_lemma.hpp"

namespace {

using namespace upcross;

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitParse = 2;
constexpr int kExitViolation = 3;

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    void open(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw error(errc::parse_error, "cannot open output file: " + path);
        stream = &file;
    }
    std::ostream& out() { return *stream; }
};

Gap parse_gap(const std::vector<std::string>& gap_strings) {
    return Gap(parse_rational(gap_strings.at(0)), parse_rational(gap_strings.at(1)));
}

std::string json_rat(const Rational& r) { return format_rational_pq(r); }

nlohmann::json witnesses_json(const UpcrossingResult& r) {
    nlohmann::json w = nlohmann::json::array();
    for (const auto& [l, rr] : r.witnesses) w.push_back({l, rr});
    return w;
}

int run_analyze(const std::string& input, const std::vector<std::string>& gap_strings,
                std::optional<std::size_t> n_opt, const std::string& bound_string,
                const std::string& out_path) {
    auto terms = read_sequence_file(input);
    if (terms.empty()) {
        std::cerr << "sequence is empty\n";
        return kExitPrecondition;
    }
    Gap gap = parse_gap(gap_strings);

    Rational bound;
    if (!bound_string.empty()) {
        bound = parse_rational(bound_string);
    } else {
        bound = 0;
        for (const auto& t : terms)
            if (rational_abs(t) > bound) bound = rational_abs(t);
    }
    BoundedSequence seq(terms, bound);
    std::size_t n = n_opt.value_or(seq.size());
    if (n == 0 || n > seq.size()) {
        std::cerr << "n must satisfy 1 <= n <= " << seq.size() << "\n";
        return kExitPrecondition;
    }

    auto up = count_upcrossings(seq, gap, n);
    auto down = count_downcrossings(seq, gap, n);
    auto cum = cumulative_sum(seq, gap, n);
    auto upper = cumsum_upper_bound(seq, gap, n);
    auto three = upcrossings_vs_family_size(seq, gap, n);

    nlohmann::json report;
    report["params"] = {{"input", input},
                        {"alpha", json_rat(gap.alpha)},
                        {"beta", json_rat(gap.beta)},
                        {"n", n},
                        {"bound", json_rat(bound)}};
    report["upcrossings"] = {{"count", up.count}, {"witnesses", witnesses_json(up)}};
    report["downcrossings"] = {{"count", down.count}};
    nlohmann::json family = nlohmann::json::array();
    for (const auto& [l, r] : cum.family.intervals) family.push_back({l, r});
    report["cumulative_sum"] = {{"value", json_rat(cum.value)},
                                {"family", family},
                                {"family_size", cum.family_size}};
    report["inequalities"] = {
        {"nonnegative", cum.value >= 0},
        {"upper_bound", {{"bound", json_rat(upper.bound)}, {"holds", upper.holds}}},
        {"three_points", {{"c_n", three.c_n}, {"s", three.s}, {"holds", three.holds}}}};
    if (n + 1 <= seq.size()) {
        auto step = potential_step(seq, gap, n);
        report["inequalities"]["potential_step"] = {
            {"delta", json_rat(step.delta)},
            {"s", step.s},
            {"lower_bound", json_rat(step.lower_bound)},
            {"holds", step.holds}};
    }

    OutputTarget target;
    target.open(out_path);
    target.out() << report.dump(2) << "\n";

    bool all_hold = upper.holds && three.holds && cum.value >= 0;
    return all_hold ? kExitOk : kExitViolation;
}

int run_lemma_verify(const std::vector<std::string>& gap_strings, std::size_t n,
                     std::size_t N, const std::string& c_string,
                     const std::string& bound_string, std::size_t trials,
                     std::uint64_t seed, bool force, const std::string& out_path) {
    Gap gap = parse_gap(gap_strings);
    Rational c = parse_rational(c_string);
    Rational amplitude = parse_rational(bound_string);
    if (N < n && !force) {
        std::cerr << "the bound is only claimed for N >= n (use --force to compute anyway)\n";
        return kExitPrecondition;
    }

    OutputTarget target;
    target.open(out_path);
    auto& out = target.out();
    out << "seed,n,N,alpha,beta,A,average_num,average_den,bound_num,bound_den,holds\n";

    bool violated = false;
    GeneratorSpec spec;
    spec.kind = GeneratorSpec::Kind::uniform_random;
    spec.amplitude = amplitude;
    spec.seed = seed;
    for (std::size_t t = 0; t < trials; ++t) {
        BoundedSequence seq = generate_sequence(spec, N + n - 1, t);
        WindowReport report = window_average(seq, gap, n, N, c);
        out << seed + t << ',' << n << ',' << N << ',' << format_rational_pq(gap.alpha)
            << ',' << format_rational_pq(gap.beta) << ',' << format_rational_pq(amplitude)
            << ',' << rat_num(report.average) << ',' << rat_den(report.average) << ','
            << rat_num(report.bound) << ',' << rat_den(report.bound) << ','
            << (report.holds ? 1 : 0) << "\n";
        if (!report.holds) {
            violated = true;
            // archive the violating instance
            out << "# violation terms:";
            for (const auto& term : seq.terms()) out << ' ' << format_rational_pq(term);
            out << "\n";
        }
    }
    return violated ? kExitViolation : kExitOk;
}

int run_oscillate(const std::string& input, std::size_t n, const std::string& lo_string,
                  const std::string& hi_string, const std::string& out_path,
                  const std::string& summary_path) {
    BinaryString x = read_bits_file(input);
    Rational lo = parse_rational(lo_string);
    Rational hi = parse_rational(hi_string);
    if (x.size() == 0) {
        std::cerr << "input string is empty\n";
        return kExitPrecondition;
    }
    if (n == 0 || n > x.size()) {
        std::cerr << "factor length must satisfy 1 <= n <= " << x.size() << "\n";
        return kExitPrecondition;
    }

    auto report = factor_average_oscillation(x, n, lo, hi);

    OutputTarget target;
    target.open(out_path);
    auto& out = target.out();
    out << "factor_start,oscillations\n";
    for (std::size_t i = 0; i < report.oscillations.size(); ++i)
        out << i + 1 << ',' << report.oscillations[i] << "\n";

    nlohmann::json summary;
    summary["params"] = {{"input", input},
                         {"n", n},
                         {"lo", json_rat(lo)},
                         {"hi", json_rat(hi)}};
    summary["length"] = x.size();
    summary["factor_count"] = report.factor_count;
    summary["average"] = json_rat(report.average);

    if (!summary_path.empty()) {
        std::ofstream sout(summary_path);
        if (!sout) {
            std::cerr << "cannot open summary file: " << summary_path << "\n";
            return kExitPrecondition;
        }
        sout << summary.dump(2) << "\n";
    } else if (!out_path.empty() && out_path != "-") {
        std::cout << summary.dump(2) << "\n";
    }
    return kExitOk;
}

int run_orbit(const std::string& input, const std::string& observable_path,
              const std::vector<std::string>& gap_strings, std::size_t n,
              const std::string& out_path) {
    BinaryString prefix = read_bits_file(input);
    Observable f = observable_path.empty() ? Observable::first_bit()
                                           : read_observable_file(observable_path);
    Gap gap = parse_gap(gap_strings);
    if (n == 0) n = prefix.size() >= f.window() ? prefix.size() - f.window() + 1 : 0;
    if (n == 0 || prefix.size() < n + f.window() - 1) {
        std::cerr << "prefix must have at least n + window - 1 bits\n";
        return kExitPrecondition;
    }

    auto averages = birkhoff_averages(prefix, f, n);
    auto values = orbit_values(prefix, f);
    values.resize(n);
    BoundedSequence seq(values, f.bound());

    OutputTarget target;
    target.open(out_path);
    auto& out = target.out();
    out << "# input=" << input << " alpha=" << format_rational_pq(gap.alpha)
        << " beta=" << format_rational_pq(gap.beta) << " window=" << f.window() << "\n";
    out << "n,average,upcrossings\n";
    for (std::size_t k = 1; k <= n; ++k) {
        out << k << ',' << format_rational_pq(averages.values[k - 1]) << ','
            << count_upcrossings(seq, gap, k).count << "\n";
    }
    return kExitOk;
}

int run_cover(const std::string& observable_path, const std::vector<std::string>& gap_strings,
              std::size_t m, std::size_t depth, const std::string& c_string,
              const std::vector<std::string>& measure_paths, const std::string& out_path,
              const std::string& report_path, unsigned threads) {
    Observable f = observable_path.empty() ? Observable::first_bit()
                                           : read_observable_file(observable_path);
    Gap gap = parse_gap(gap_strings);
    Rational c = parse_rational(c_string);

    auto cover = enumerate_bad_cylinders(f, gap, m, depth, threads);

    OutputTarget target;
    target.open(out_path);
    write_cover(target.out(), cover);

    if (measure_paths.empty()) return kExitOk;

    Rational bound = c * (f.bound() + gap.endpoint_mass()) / (gap.width() * Rational(m));
    nlohmann::json report;
    report["params"] = {{"m", m},
                        {"depth", depth},
                        {"alpha", json_rat(gap.alpha)},
                        {"beta", json_rat(gap.beta)},
                        {"constant_c", json_rat(c)},
                        {"window", f.window()}};
    report["cover_size"] = cover.strings.size();
    report["bound"] = json_rat(bound);
    bool holds = true;
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& path : measure_paths) {
        auto measure = read_measure_file(path);
        Rational value = cover_measure(cover, *measure);
        bool ok = value <= bound;
        holds = holds && ok;
        entries.push_back({{"measure", measure->describe()},
                           {"value", json_rat(value)},
                           {"holds", ok}});
    }
    report["measures"] = entries;
    report["holds"] = holds;

    if (!report_path.empty()) {
        std::ofstream rout(report_path);
        if (!rout) {
            std::cerr << "cannot open report file: " << report_path << "\n";
            return kExitPrecondition;
        }
        rout << report.dump(2) << "\n";
    } else {
        std::cout << report.dump(2) << "\n";
    }
    return holds ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"upcrossing inequalities, cumulative sums, and effective covers"};
    app.require_subcommand(1);

    // analyze
    std::string an_input, an_bound, an_out;
    std::vector<std::string> an_gap;
    std::optional<std::size_t> an_n;
    auto* analyze = app.add_subcommand("analyze", "upcrossings and cumulative sum of a sequence file");
    analyze->add_option("input", an_input, "sequence file")->required();
    analyze->add_option("--gap", an_gap, "gap endpoints alpha beta")->expected(2)->required();
    analyze->add_option("--n", an_n, "horizon (default: full length)");
    analyze->add_option("--bound", an_bound, "amplitude bound A (default: max |a_i|)");
    analyze->add_option("--out", an_out, "output file (default stdout)");

    // lemma-verify
    std::vector<std::string> lv_gap;
    std::size_t lv_n = 4, lv_N = 8, lv_trials = 1000;
    std::uint64_t lv_seed = 1;
    std::string lv_c = "12", lv_bound = "4", lv_out;
    bool lv_force = false;
    auto* lemma = app.add_subcommand("lemma-verify", "sliding-window average bound campaign");
    lemma->add_option("--gap", lv_gap, "gap endpoints alpha beta")->expected(2)->required();
    lemma->add_option("--n", lv_n, "window length");
    lemma->add_option("--N", lv_N, "number of windows");
    lemma->add_option("--constant-c", lv_c, "lemma constant (default 12)");
    lemma->add_option("--bound", lv_bound, "amplitude of generated entries (default 4)");
    lemma->add_option("--trials", lv_trials, "number of random sequences");
    lemma->add_option("--seed", lv_seed, "campaign seed")->required();
    lemma->add_flag("--force", lv_force, "compute even when N < n");
    lemma->add_option("--out", lv_out, "CSV output file (default stdout)");

    // oscillate
    std::string os_input, os_lo = "2/5", os_hi = "3/5", os_out, os_summary;
    std::size_t os_n = 0;
    auto* oscillate = app.add_subcommand("oscillate", "ones-frequency oscillations over all factors");
    oscillate->add_option("input", os_input, "binary string file")->required();
    oscillate->add_option("--n", os_n, "factor length")->required();
    oscillate->add_option("--lo", os_lo, "lower threshold (default 2/5)");
    oscillate->add_option("--hi", os_hi, "upper threshold (default 3/5)");
    oscillate->add_option("--out", os_out, "per-factor CSV output (default stdout)");
    oscillate->add_option("--summary", os_summary, "summary JSON output file");

    // orbit
    std::string ob_input, ob_observable, ob_out;
    std::vector<std::string> ob_gap;
    std::size_t ob_n = 0;
    auto* orbit = app.add_subcommand("orbit", "Birkhoff averages and crossing counts along a prefix");
    orbit->add_option("input", ob_input, "binary prefix file")->required();
    orbit->add_option("--observable", ob_observable, "observable spec JSON (default: first bit)");
    orbit->add_option("--gap", ob_gap, "gap endpoints alpha beta")->expected(2)->required();
    orbit->add_option("--n", ob_n, "horizon (default: maximal)");
    orbit->add_option("--out", ob_out, "CSV output file (default stdout)");

    // cover
    std::string cv_observable, cv_c = "12", cv_out, cv_report;
    std::vector<std::string> cv_gap, cv_measures;
    std::size_t cv_m = 1, cv_depth = 12;
    unsigned cv_threads = 1;
    auto* cover = app.add_subcommand("cover", "prefix-free cover of the many-upcrossings event");
    cover->add_option("--observable", cv_observable, "observable spec JSON (default: first bit)");
    cover->add_option("--gap", cv_gap, "gap endpoints alpha beta")->expected(2)->required();
    cover->add_option("--m", cv_m, "upcrossing threshold");
    cover->add_option("--depth", cv_depth, "enumeration depth limit");
    cover->add_option("--constant-c", cv_c, "bound constant (default 12)");
    cover->add_option("--measure", cv_measures, "measure spec JSON file (repeatable)");
    cover->add_option("--out", cv_out, "cover output file (default stdout)");
    cover->add_option("--report", cv_report, "measure report JSON file (default stdout)");
    cover->add_option("--threads", cv_threads, "worker threads (output independent)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed())
            return run_analyze(an_input, an_gap, an_n, an_bound, an_out);
        if (lemma->parsed())
            return run_lemma_verify(lv_gap, lv_n, lv_N, lv_c, lv_bound, lv_trials, lv_seed,
                                    lv_force, lv_out);
        if (oscillate->parsed())
            return run_oscillate(os_input, os_n, os_lo, os_hi, os_out, os_summary);
        if (orbit->parsed())
            return run_orbit(ob_input, ob_observable, ob_gap, ob_n, ob_out);
        if (cover->parsed())
            return run_cover(cv_observable, cv_gap, cv_m, cv_depth, cv_c, cv_measures,
                             cv_out, cv_report, cv_threads);
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == errc::parse_error ? kExitParse : kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return kExitOk;
}
