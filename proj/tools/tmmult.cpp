// Command-line front end: build the automata, verify them against the
// integer oracle, sweep the state-count formula, and answer membership
// queries. Exit codes: 0 success, 1 check failure, 2 usage error,
// 3 resource guard.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "tmmult/constructions.hpp"
#include "tmmult/dfa.hpp"
#include "tmmult/numeration.hpp"
#include "tmmult/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceGuard = 3;

struct BuildArgs {
    std::uint64_t m = 0;
    int p = 0;
    int b = 0;
    std::string stage;
    std::string format = "text";
    std::string out;
};

struct VerifyArgs {
    std::uint64_t m = 0;
    int p = 0;
    std::uint64_t max_n = 100000;
};

struct TableArgs {
    std::uint64_t m_max = 0;
    int p_max = 0;
    std::string out;
};

struct AcceptsArgs {
    std::uint64_t m = 0;
    int p = 0;
    std::optional<std::uint64_t> value;
    std::optional<std::string> word;
};

int emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << out_path << " for writing\n";
        return kExitCheckFailure;
    }
    file << text;
    return kExitOk;
}

int run_build(const BuildArgs& args) {
    using tmmult::Dfa;
    Dfa automaton;
    if (args.stage == "at") {
        if (args.p <= 0) {
            std::cerr << "error: stage 'at' requires --p\n";
            return kExitUsage;
        }
        automaton = tmmult::thue_morse_pair_automaton(args.p);
    } else if (args.stage == "amb") {
        if (args.m == 0 || args.b <= 0) {
            std::cerr << "error: stage 'amb' requires --m and --b\n";
            return kExitUsage;
        }
        automaton = tmmult::multiplication_automaton(args.m, args.b);
    } else {
        if (args.m == 0 || args.p <= 0) {
            std::cerr << "error: stage '" << args.stage << "' requires --m and --p\n";
            return kExitUsage;
        }
        if (args.stage == "product") {
            automaton = tmmult::product_automaton(args.m, args.p);
        } else if (args.stage == "projected") {
            automaton = tmmult::project_second(tmmult::product_automaton(args.m, args.p));
        } else if (args.stage == "minimal-direct") {
            automaton = tmmult::minimal_automaton(args.m, args.p);
        } else {  // minimal
            automaton = tmmult::moore_minimize(
                tmmult::project_second(tmmult::product_automaton(args.m, args.p)));
        }
    }
    const std::string text =
        args.format == "dot" ? tmmult::to_dot(automaton) : tmmult::to_text(automaton);
    return emit(text, args.out);
}

int run_verify(const VerifyArgs& args) {
    bool ok = true;

    const auto mismatch = tmmult::membership_scan(args.m, args.p, args.max_n);
    if (mismatch) {
        std::cout << "membership scan [0," << args.max_n << "]: mismatch at n=" << mismatch->n
                  << " (" << mismatch->detail << ")\n";
        ok = false;
    } else {
        std::cout << "membership scan [0," << args.max_n << "]: ok\n";
    }

    const std::uint64_t formula = tmmult::state_complexity_formula(args.m, args.p);
    const tmmult::Dfa projected =
        tmmult::project_second(tmmult::product_automaton(args.m, args.p));
    const tmmult::Dfa minimized = tmmult::moore_minimize(projected);
    const tmmult::Dfa direct = tmmult::minimal_automaton(args.m, args.p);
    std::cout << "formula states: " << formula << '\n';
    std::cout << "minimized states: " << minimized.num_states() << '\n';
    std::cout << "direct states: " << direct.num_states() << '\n';
    const bool iso = tmmult::isomorphic(minimized, direct);
    std::cout << "isomorphic: " << (iso ? "yes" : "no") << '\n';
    ok = ok && iso && static_cast<std::uint64_t>(minimized.num_states()) == formula &&
         static_cast<std::uint64_t>(direct.num_states()) == formula;

    if (!ok) {
        std::cout << "FAIL\n";
        return kExitCheckFailure;
    }
    std::cout << "ok: states=" << formula << '\n';
    return kExitOk;
}

int run_table(const TableArgs& args) {
    if (args.m_max == 0 || args.p_max <= 0) {
        std::cerr << "error: --m-max and --p-max must be positive\n";
        return kExitUsage;
    }
    const auto rows = tmmult::run_sweep(args.m_max, args.p_max);
    std::ostringstream os;
    tmmult::write_sweep_tsv(os, rows);
    const int emitted = emit(os.str(), args.out);
    if (emitted != kExitOk) {
        return emitted;
    }
    for (const auto& row : rows) {
        if (!row.ok) {
            std::cerr << "check failed at m=" << row.m << " p=" << row.p << ": " << row.note
                      << '\n';
            return kExitCheckFailure;
        }
    }
    return kExitOk;
}

int run_accepts(const AcceptsArgs& args) {
    const int base = 1 << args.p;
    tmmult::DigitWord w;
    if (args.value) {
        w = tmmult::rep(base, *args.value);
    } else {
        w = tmmult::parse_digit_word(base, *args.word);
    }
    const tmmult::Dfa automaton = tmmult::minimal_automaton(args.m, args.p);
    const bool verdict = tmmult::accepts(automaton, w);
    const bool oracle = tmmult::in_m_thue_morse(args.m, tmmult::val(w));
    std::cout << (verdict ? "accept" : "reject") << '\n';
    if (verdict != oracle) {
        std::cerr << "error: automaton and integer oracle disagree on " << tmmult::to_string(w)
                  << '\n';
        return kExitCheckFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minimal automata for the base-2^p expansions of m times the Thue-Morse set"};
    app.require_subcommand(1);

    BuildArgs build_args;
    auto* build = app.add_subcommand("build", "construct one pipeline stage and print it");
    build->add_option("--m", build_args.m, "multiplier (positive)");
    build->add_option("--p", build_args.p, "base exponent, base = 2^p");
    build->add_option("--b", build_args.b, "base for stage 'amb'");
    build->add_option("--stage", build_args.stage, "one of at, amb, product, projected, minimal-direct, minimal")
        ->required()
        ->check(CLI::IsMember({"at", "amb", "product", "projected", "minimal-direct", "minimal"}));
    build->add_option("--format", build_args.format, "output format")
        ->check(CLI::IsMember({"text", "dot"}));
    build->add_option("--out", build_args.out, "write to this file instead of stdout");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "check one (m, p) cell against the oracle");
    verify->add_option("--m", verify_args.m, "multiplier (positive)")->required();
    verify->add_option("--p", verify_args.p, "base exponent")->required();
    verify->add_option("--max-n", verify_args.max_n, "membership scan bound");

    TableArgs table_args;
    auto* table = app.add_subcommand("table", "sweep the state-count formula, emit TSV");
    table->add_option("--m-max", table_args.m_max, "largest multiplier")->required();
    table->add_option("--p-max", table_args.p_max, "largest base exponent")->required();
    table->add_option("--out", table_args.out, "write to this file instead of stdout");

    AcceptsArgs accepts_args;
    std::uint64_t value_opt = 0;
    std::string word_opt;
    auto* accepts = app.add_subcommand("accepts", "membership query against the minimal automaton");
    accepts->add_option("--m", accepts_args.m, "multiplier (positive)")->required();
    accepts->add_option("--p", accepts_args.p, "base exponent")->required();
    auto* value = accepts->add_option("--value", value_opt, "integer to test");
    auto* word = accepts->add_option("--word", word_opt, "digit word to test");
    value->excludes(word);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*build) {
            return run_build(build_args);
        }
        if (*verify) {
            return run_verify(verify_args);
        }
        if (*table) {
            return run_table(table_args);
        }
        if (*accepts) {
            if (value->count() + word->count() != 1) {
                std::cerr << "error: exactly one of --value or --word is required\n";
                return kExitUsage;
            }
            if (value->count()) {
                accepts_args.value = value_opt;
            } else {
                accepts_args.word = word_opt;
            }
            return run_accepts(accepts_args);
        }
    } catch (const tmmult::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitResourceGuard;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitCheckFailure;
    }
    return kExitUsage;
}
