// Command-line front end: build/evaluate the mod-p Motzkin machine, run the
// brute-force oracles, sweep densities, and verify everything against
// independent routes. Exit codes: 0 success / all checks pass, 1 a
// verification found mismatches, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "motzkin/analysis.hpp"
#include "motzkin/automaton.hpp"
#include "motzkin/oracle.hpp"
#include "motzkin/series.hpp"

using namespace motzkin;

namespace {

constexpr std::uint64_t kLimitCap = 100000000;  // 10^8

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerificationFailure {};

std::uint64_t checked_limit(std::uint64_t limit) {
    if (limit > kLimitCap) throw UsageError("limit exceeds the cap of 100000000");
    return limit;
}

Prime parse_prime(std::uint64_t value) {
    try {
        return Prime::make(value);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::string kind_name(TheoryKind kind) {
    switch (kind) {
        case TheoryKind::exact: return "exact";
        case TheoryKind::lower_bound: return "lower-bound";
        default: return "none";
    }
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw std::runtime_error("cannot open " + out_path + " for writing");
    os << text;
}

void report_verification(const std::string& suite, std::uint32_t p, std::uint64_t limit,
                         const std::vector<std::string>& mismatches, bool json) {
    bool pass = mismatches.empty();
    if (json) {
        nlohmann::ordered_json doc;
        doc["suite"] = suite;
        doc["p"] = p;
        doc["limit"] = limit;
        doc["pass"] = pass;
        doc["mismatches"] = mismatches;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << (pass ? "PASS" : "FAIL") << "\t" << suite << "\tp=" << p
                  << "\tlimit=" << limit << "\tmismatches=" << mismatches.size() << "\n";
    }
    if (!pass) {
        for (const auto& m : mismatches) std::cerr << m << "\n";
        throw VerificationFailure{};
    }
}

void run_build(std::uint64_t prime, const std::string& out) {
    Prime p = parse_prime(prime);
    emit(to_json(build_automaton(p)), out);
}

void run_eval(std::uint64_t prime, std::uint64_t n, const std::string& automaton_path) {
    Prime p = parse_prime(prime);
    if (!automaton_path.empty()) {
        std::ifstream is(automaton_path);
        if (!is) throw UsageError("cannot open " + automaton_path);
        std::stringstream buf;
        buf << is.rdbuf();
        Automaton m = automaton_from_json(buf.str());
        if (!(m.prime() == p))
            throw UsageError("automaton file is for p=" + std::to_string(m.prime().value()) +
                             ", not p=" + std::to_string(p.value()));
        std::cout << m.eval(n) << "\n";
        return;
    }
    std::cout << build_automaton(p).eval(n) << "\n";
}

void run_oracle(std::uint64_t prime, std::uint64_t limit, const std::string& out) {
    Prime p = parse_prime(prime);
    limit = checked_limit(limit);
    MotzkinTable table = motzkin_convolution(p, limit);
    if (!out.empty()) {
        write_table(table, out);
        return;
    }
    std::ostringstream os;
    for (std::size_t n = 0; n < table.values.size(); ++n) {
        os << n << "\t" << table.values[n] << "\n";
    }
    std::cout << os.str();
}

void run_series(std::uint64_t n_max) {
    auto rows = series_recurrence(std::max<std::uint64_t>(n_max, 1));
    std::ostringstream os;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        os << rows[n].n << "\t" << rows[n].a << "\t" << rows[n].b << "\t" << rows[n].c << "\n";
    }
    std::cout << os.str();
}

void run_density(std::uint64_t prime, std::uint32_t residue, std::uint64_t limit, int threads,
                 bool json) {
    Prime p = parse_prime(prime);
    limit = checked_limit(limit);
    if (residue >= p.value()) throw UsageError("residue must be below the prime");
    Automaton m = build_automaton(p);
    DensityReport rep = empirical_density(p, m, residue, limit, threads);
    if (json) {
        nlohmann::ordered_json doc;
        doc["p"] = rep.p;
        doc["residue"] = rep.residue;
        doc["limit"] = rep.limit;
        doc["count"] = rep.count;
        doc["density"] = rep.density;
        doc["theory"] = (rep.kind == TheoryKind::none) ? "" : rep.theory.str();
        doc["kind"] = kind_name(rep.kind);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << rep.p << "\t" << rep.residue << "\t" << rep.limit << "\t" << rep.count
                  << "\t" << rep.density << "\t"
                  << (rep.kind == TheoryKind::none ? "-" : rep.theory.str()) << "\t"
                  << kind_name(rep.kind) << "\n";
    }
}

void run_verify(std::uint64_t prime, std::uint64_t limit, const std::string& suite, bool json) {
    limit = checked_limit(limit);
    if (suite == "classical") {
        if (prime != 2 && prime != 3 && prime != 5)
            throw UsageError("the classical suite covers moduli 2, 3 and 5");
        auto table = motzkin_convolution_mod(static_cast<std::uint32_t>(prime), limit);
        std::vector<std::string> mismatches;
        for (std::uint64_t n = 0; n < table.size(); ++n) {
            auto res = classical_predicate(static_cast<std::uint32_t>(prime), n);
            bool ok = res.residue.has_value() ? (*res.residue == table[n])
                                              : (res.divisible == (table[n] == 0));
            if (!ok) {
                mismatches.push_back("n=" + std::to_string(n) + ": oracle residue " +
                                     std::to_string(table[n]) + ", predicate disagrees");
            }
        }
        report_verification(suite, static_cast<std::uint32_t>(prime), limit, mismatches, json);
        return;
    }

    Prime p = parse_prime(prime);
    Automaton m = build_automaton(p);
    std::vector<std::string> mismatches;
    if (suite == "oracle") {
        MotzkinTable table = cached_table(p, limit);
        for (std::uint64_t n = 0; n < table.values.size(); ++n) {
            if (m.eval(n) != table.values[n]) {
                mismatches.push_back("n=" + std::to_string(n) + ": machine " +
                                     std::to_string(m.eval(n)) + " != oracle " +
                                     std::to_string(table.values[n]));
            }
        }
    } else if (suite == "tables") {
        mismatches = verify_tables(m);
    } else if (suite == "forms") {
        mismatches = verify_forms(p, m, limit);
    } else {
        throw UsageError("unknown suite: " + suite);
    }
    report_verification(suite, p.value(), limit, mismatches, json);
}

void run_criterion(std::uint64_t prime, bool scan, std::uint64_t max_prime, bool json) {
    auto one_prime = [&](const Prime& p) {
        BinomTable binom(p);
        Automaton m = build_automaton(p);
        auto digit = density_one_digit(binom);
        auto rep = forbidden_residues(p, m);
        return std::tuple(digit, rep);
    };

    if (scan) {
        if (max_prime < 5) throw UsageError("--max-prime must be at least 5");
        if (max_prime > 10000) throw UsageError("--max-prime capped at 10000");
        std::ostringstream os;
        for (std::uint64_t v = 5; v <= max_prime; ++v) {
            if (!is_prime(v)) continue;
            Prime p = Prime::make(v);
            auto [digit, rep] = one_prime(p);
            os << v << "\t" << (p.class6() > 0 ? "+1" : "-1") << "\t"
               << (digit ? std::to_string(*digit) : "-") << "\t"
               << (rep.units_generated ? "yes" : "no") << "\t" << rep.forbidden.size() << "\n";
        }
        std::cout << os.str();
        return;
    }

    Prime p = parse_prime(prime);
    auto [digit, rep] = one_prime(p);
    if (json) {
        nlohmann::ordered_json doc;
        doc["p"] = p.value();
        doc["cpd"] = rep.cpd_values;
        doc["density_one_digit"] =
            digit ? nlohmann::ordered_json(*digit) : nlohmann::ordered_json(nullptr);
        doc["forbidden"] = rep.forbidden;
        doc["units_generated"] = rep.units_generated;
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::ostringstream os;
    for (std::size_t d = 0; d < rep.cpd_values.size(); ++d) {
        os << "cpd\t" << d << "\t" << rep.cpd_values[d] << "\n";
    }
    os << "density_one_digit\t" << (digit ? std::to_string(*digit) : "-") << "\n";
    os << "forbidden\t";
    if (rep.forbidden.empty()) {
        os << "-";
    } else {
        for (std::size_t i = 0; i < rep.forbidden.size(); ++i) {
            if (i) os << ",";
            os << rep.forbidden[i];
        }
    }
    os << "\n";
    os << "units_generated\t" << (rep.units_generated ? "true" : "false") << "\n";
    std::cout << os.str();
}

void run_export_dot(std::uint64_t prime, bool collapse) {
    Prime p = parse_prime(prime);
    std::cout << export_dot(build_automaton(p), DotOptions{collapse});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motzkin numbers modulo a prime: automaton, oracles, densities"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "print elapsed time to stderr");

    std::uint64_t prime = 0, n = 0, limit = 0, max_prime = 0;
    std::uint32_t residue = 0;
    int threads = 1;
    std::string out, automaton_path, suite, format = "tsv";
    bool collapse = false, scan = false;

    auto* cmd_build = app.add_subcommand("build", "construct the machine and print it as JSON");
    cmd_build->add_option("--prime", prime, "prime modulus")->required();
    cmd_build->add_option("--out", out, "output file (stdout when absent)");

    auto* cmd_eval = app.add_subcommand("eval", "M_n mod p through the machine");
    cmd_eval->add_option("--prime", prime, "prime modulus")->required();
    cmd_eval->add_option("--n", n, "index")->required();
    cmd_eval->add_option("--automaton", automaton_path, "load the machine from a JSON file");

    auto* cmd_oracle = app.add_subcommand("oracle", "convolution table of M_n mod p");
    cmd_oracle->add_option("--prime", prime, "prime modulus")->required();
    cmd_oracle->add_option("--limit", limit, "largest index")->required();
    cmd_oracle->add_option("--out", out, "write the binary table here instead of stdout rows");

    auto* cmd_series = app.add_subcommand("series", "rows n, a_n, b_n, c_n");
    cmd_series->add_option("--n", n, "largest index")->required();

    auto* cmd_density = app.add_subcommand("density", "empirical residue density");
    cmd_density->add_option("--prime", prime, "prime modulus")->required();
    cmd_density->add_option("--residue", residue, "residue class")->required();
    cmd_density->add_option("--limit", limit, "sweep bound")->required();
    cmd_density->add_option("--threads", threads, "sweep parallelism")->default_val(1);
    cmd_density->add_option("--format", format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));

    auto* cmd_verify = app.add_subcommand("verify", "cross-check a suite; exit 1 on mismatch");
    cmd_verify->add_option("--prime", prime, "modulus")->required();
    cmd_verify->add_option("--limit", limit, "sweep bound")->required();
    cmd_verify->add_option("--suite", suite, "oracle | tables | forms | classical")
        ->required()
        ->check(CLI::IsMember({"oracle", "tables", "forms", "classical"}));
    cmd_verify->add_option("--format", format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));

    auto* cmd_criterion =
        app.add_subcommand("criterion", "digit constants, density-one digit, forbidden residues");
    cmd_criterion->add_option("--prime", prime, "prime modulus");
    cmd_criterion->add_flag("--scan", scan, "scan all primes up to --max-prime");
    cmd_criterion->add_option("--max-prime", max_prime, "scan bound");
    cmd_criterion->add_option("--format", format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));

    auto* cmd_dot = app.add_subcommand("export-dot", "GraphViz rendering of the machine");
    cmd_dot->add_option("--prime", prime, "prime modulus")->required();
    cmd_dot->add_flag("--collapse", collapse, "merge constant states into one node");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto start = std::chrono::steady_clock::now();
    int rc = 0;
    try {
        if (app.got_subcommand(cmd_build)) {
            run_build(prime, out);
        } else if (app.got_subcommand(cmd_eval)) {
            run_eval(prime, n, automaton_path);
        } else if (app.got_subcommand(cmd_oracle)) {
            run_oracle(prime, limit, out);
        } else if (app.got_subcommand(cmd_series)) {
            run_series(n);
        } else if (app.got_subcommand(cmd_density)) {
            run_density(prime, residue, limit, threads, format == "json");
        } else if (app.got_subcommand(cmd_verify)) {
            run_verify(prime, limit, suite, format == "json");
        } else if (app.got_subcommand(cmd_criterion)) {
            if (!scan && prime == 0) throw UsageError("criterion needs --prime or --scan");
            run_criterion(prime, scan, max_prime, format == "json");
        } else if (app.got_subcommand(cmd_dot)) {
            run_export_dot(prime, collapse);
        }
    } catch (const UsageError& e) {
        std::cerr << e.what() << "\n";
        rc = 2;
    } catch (const VerificationFailure&) {
        rc = 1;
    } catch (const AutomatonFormatError& e) {
        std::cerr << e.what() << "\n";
        rc = 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
    }
    if (timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::cerr << "elapsed_ms\t" << ms << "\n";
    }
    return rc;
}
