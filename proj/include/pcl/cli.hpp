#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end: argument parsing and the subcommand drivers.
 *
 * Exit codes: 0 everything verified, 1 a proven statement or identity failed,
 * 2 usage error, 3 I/O or internal arithmetic error.
 */

#include "pcl/identities.hpp"
#include "pcl/pgamma.hpp"
#include "pcl/report.hpp"
#include "pcl/verifier.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace pcl::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

enum class Subcommand { Verify, Identities, Gamma, Lemmas };

struct UsageError : Error {
    using Error::Error;
};

/// --help was requested; `what()` holds the help text.
struct HelpRequested : Error {
    using Error::Error;
};

struct CliConfig {
    Subcommand subcommand = Subcommand::Verify;
    std::vector<std::string> statements;  // statement or identity tags; empty = defaults
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 31;
    long r_min = -9;
    long r_max = 1;
    bool probe = false;
    unsigned samples = 50;
    std::uint64_t seed = 42;
    std::uint64_t p = 0;  // gamma
    std::string x;        // gamma
    int precision = 1;    // gamma
    std::optional<std::string> output;
    ReportFormat format = ReportFormat::Json;
    unsigned jobs = 1;
    std::optional<std::string> cache_dir;
    bool no_cache = false;
    bool timings = false;
};

inline unsigned default_jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Flag value, else $PCL_CACHE_DIR, else "cache"; empty when caching is off.
inline std::optional<std::filesystem::path> resolve_cache_dir(const CliConfig& cfg) {
    if (cfg.no_cache) return std::nullopt;
    if (cfg.cache_dir) return std::filesystem::path(*cfg.cache_dir);
    if (const char* env = std::getenv("PCL_CACHE_DIR"); env && *env) return std::filesystem::path(env);
    return std::filesystem::path("cache");
}

inline CliConfig parse_args(int argc, const char* const* argv) {
    CliConfig cfg;
    cfg.jobs = default_jobs();
    CLI::App app{"Exact verification of truncated hypergeometric supercongruences", "pcl"};
    app.require_subcommand(1);

    std::string format = "json";
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", cfg.output, "Report path (stdout when omitted)");
        sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--cache-dir", cfg.cache_dir, "Directory for Gamma_p table cache files");
        sub->add_flag("--no-cache", cfg.no_cache, "Do not read or write the Gamma_p cache");
    };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--statement", cfg.statements, "Statement tag(s); repeat or comma-separate")->delimiter(',');
        sub->add_option("--p-min", cfg.p_min, "Smallest prime");
        sub->add_option("--p-max", cfg.p_max, "Largest prime");
        sub->add_option("--r-min", cfg.r_min, "Smallest r");
        sub->add_option("--r-max", cfg.r_max, "Largest r (<= 1)");
        sub->add_flag("--probe", cfg.probe, "Report the exact valuation of LHS - RHS");
        sub->add_flag("--timings", cfg.timings, "Write wall-clock elapsed_ms instead of 0");
    };

    auto* verify = app.add_subcommand("verify", "Verify congruence statements over admissible (p, r)");
    add_range(verify);
    add_output(verify);
    add_common(verify);

    auto* lemmas = app.add_subcommand("lemmas", "Verify the auxiliary lemma congruences");
    add_range(lemmas);
    add_output(lemmas);
    add_common(lemmas);

    auto* identities = app.add_subcommand("identities", "Run the sampled transformation-formula suites");
    identities->add_option("--identity", cfg.statements, "Identity tag(s)")->delimiter(',');
    identities->add_option("--samples", cfg.samples, "Samples per suite")->check(CLI::PositiveNumber);
    identities->add_option("--seed", cfg.seed, "Sampler seed");
    identities->add_option("--r-min", cfg.r_min, "Smallest r for the r-indexed suites");
    identities->add_option("-o,--output", cfg.output, "Report path (stdout when omitted)");

    std::string x_text;
    auto* gamma = app.add_subcommand("gamma", "Evaluate Gamma_p(x) modulo p^n");
    gamma->add_option("--p", cfg.p, "Odd prime")->required();
    gamma->add_option("--x", x_text, "Rational argument")->required();
    gamma->add_option("--precision", cfg.precision, "Exponent n of the modulus p^n")->check(CLI::PositiveNumber);
    add_common(gamma);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested(app.help("", CLI::AppFormatMode::All));
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    cfg.format = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
    if (*verify || *lemmas) {
        cfg.subcommand = *verify ? Subcommand::Verify : Subcommand::Lemmas;
        if (cfg.p_min > cfg.p_max) throw UsageError("--p-max must not be below --p-min");
        if (cfg.r_max > 1) throw UsageError("--r-max must be <= 1");
        if (cfg.r_min > cfg.r_max) throw UsageError("--r-min must not exceed --r-max");
        bool any_prime = false;
        for (std::uint64_t p = std::max<std::uint64_t>(cfg.p_min, 3); p <= cfg.p_max && !any_prime; ++p)
            any_prime = is_prime(p);
        if (!any_prime) throw UsageError("--p-max: no odd prime in [" + std::to_string(cfg.p_min) + ", " +
                                         std::to_string(cfg.p_max) + "]");
        for (const auto& s : cfg.statements) {
            try {
                StatementId id = parse_statement(s);
                if (*lemmas && !is_lemma(id)) throw UsageError("--statement: " + s + " is not a lemma tag");
            } catch (const InvalidInput& e) {
                throw UsageError(std::string("--statement: ") + e.what());
            }
        }
    } else if (*identities) {
        cfg.subcommand = Subcommand::Identities;
        for (const auto& s : cfg.statements) {
            try {
                parse_identity(s);
            } catch (const InvalidInput& e) {
                throw UsageError(std::string("--identity: ") + e.what());
            }
        }
    } else {
        cfg.subcommand = Subcommand::Gamma;
        try {
            Rational::parse(x_text);
        } catch (const InvalidInput& e) {
            throw UsageError(std::string("--x: ") + e.what());
        }
        if (cfg.p < 3 || !is_prime(cfg.p)) throw UsageError("--p: " + std::to_string(cfg.p) + " is not an odd prime");
        cfg.x = x_text;
    }
    return cfg;
}

inline CliConfig parse_args(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"pcl"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return parse_args(static_cast<int>(argv.size()), argv.data());
}

namespace detail {

inline GammaProvider make_provider(const CliConfig& cfg) {
    if (auto dir = resolve_cache_dir(cfg)) return GammaProvider(*dir);
    return GammaProvider();
}

inline void write_output(const CliConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.output)
        write_text(*cfg.output, text);
    else
        out << text;
}

inline int run_cases(const CliConfig& cfg, const StatementTable& table, const std::vector<StatementId>& defaults,
                     std::ostream& out, std::ostream& err) {
    std::vector<StatementId> ids;
    for (const auto& s : cfg.statements) ids.push_back(parse_statement(s));
    if (ids.empty()) ids = defaults;

    GammaProvider provider = make_provider(cfg);
    RunOptions options{CaseRange{cfg.p_min, cfg.p_max, cfg.r_min, cfg.r_max}, cfg.probe, cfg.jobs};
    std::vector<CaseReport> cases;
    try {
        cases = run_statements(table, ids, options, provider);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitIo;
    }
    try {
        write_output(cfg, render_report(cases, cfg.format, EmitOptions{cfg.timings}), out);
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    }

    std::size_t holds = 0, fails = 0, informational = 0;
    for (const auto& c : cases) {
        if (c.verdict == Verdict::Holds) ++holds;
        if (c.verdict != Verdict::Fails) continue;
        if (find_statement(table, c.statement).conjectural)
            ++informational;
        else
            ++fails;
    }
    err << cases.size() << " cases: " << holds << " hold, " << fails << " fail";
    if (informational) err << ", " << informational << " conjectural case(s) fail (informational)";
    err << '\n';
    return fails == 0 ? kExitOk : kExitViolation;
}

}  // namespace detail

inline int cmd_verify(const CliConfig& cfg, const StatementTable& table, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    std::vector<StatementId> defaults(std::begin(kProvenCongruences), std::end(kProvenCongruences));
    defaults.insert(defaults.end(), std::begin(kLemmas), std::end(kLemmas));
    return detail::run_cases(cfg, table, defaults, out, err);
}

inline int cmd_verify(const CliConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return cmd_verify(cfg, builtin_statements(), out, err);
}

inline int cmd_lemmas(const CliConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return detail::run_cases(cfg, builtin_statements(), {std::begin(kLemmas), std::end(kLemmas)}, out, err);
}

inline int cmd_identities(const CliConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<IdentityId> ids;
    for (const auto& s : cfg.statements) ids.push_back(parse_identity(s));
    if (ids.empty()) ids.assign(std::begin(kAllIdentities), std::end(kAllIdentities));
    SampleConfig sc;
    sc.seed = cfg.seed;
    sc.samples = cfg.samples;
    sc.r_min = cfg.r_min;
    std::vector<SuiteReport> suites;
    try {
        for (auto id : ids) suites.push_back(run_identity_suite(id, sc));
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitIo;
    }
    try {
        detail::write_output(cfg, render_suites(suites), out);
    } catch (const IoError& e) {
        err << e.what() << '\n';
        return kExitIo;
    }
    bool ok = std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.ok(); });
    for (const auto& s : suites)
        err << identity_name(s.identity) << ": " << s.passed << "/" << s.samples << " pass, " << s.skipped_poles
            << " skipped\n";
    return ok ? kExitOk : kExitViolation;
}

inline int cmd_gamma(const CliConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        Rational x = Rational::parse(cfg.x);
        PadicContext ctx(cfg.p, cfg.precision);
        GammaProvider provider = detail::make_provider(cfg);
        ResidueClass g = gamma_p(x, ctx, provider);
        out << "Gamma_" << cfg.p << "(" << x << ") mod " << cfg.p << "^" << cfg.precision << " = " << g.value << '\n';
        return kExitOk;
    } catch (const DomainError& e) {
        err << "--x: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvalidInput& e) {
        err << e.what() << '\n';
        return kExitUsage;
    } catch (const RangeError& e) {
        err << "--precision: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitIo;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CliConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.what();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    switch (cfg.subcommand) {
        case Subcommand::Verify: return cmd_verify(cfg, out, err);
        case Subcommand::Lemmas: return cmd_lemmas(cfg, out, err);
        case Subcommand::Identities: return cmd_identities(cfg, out, err);
        case Subcommand::Gamma: return cmd_gamma(cfg, out, err);
    }
    return kExitIo;
}

}  // namespace pcl::cli
