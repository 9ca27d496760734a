#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "tmmult/verify.hpp"

using namespace tmmult;

TEST_CASE("integer oracle") {
    CHECK(in_m_thue_morse(6, 18));
    CHECK_FALSE(in_m_thue_morse(6, 6));
    CHECK(in_m_thue_morse(6, 0));
    CHECK_FALSE(in_m_thue_morse(6, 7));
    CHECK(in_m_thue_morse(1, 3));
    CHECK_THROWS_AS(in_m_thue_morse(0, 3), std::invalid_argument);
}

TEST_CASE("membership scan agrees with the oracle") {
    CHECK_FALSE(membership_scan(6, 2, 10000).has_value());
    CHECK_FALSE(membership_scan(1, 1, 10000).has_value());
    CHECK_FALSE(membership_scan(24, 2, 10000).has_value());
    CHECK_FALSE(membership_scan(6, 2, 18).has_value());
    CHECK(accepts(minimal_automaton(6, 2), parse_digit_word(4, "102")));
}

TEST_CASE("the m=1, p=1 projected product is the two-state parity acceptor") {
    const Dfa proj = project_second(product_automaton(1, 1));
    CHECK(proj.num_states() == 2);
    CHECK(is_complete(proj));
    CHECK(proj.transition(0, 0) == 0);
    CHECK(proj.transition(0, 1) == 1);
    CHECK(proj.transition(1, 1) == 0);
    CHECK(isomorphic(proj, minimal_automaton(1, 1)));
    CHECK(accepts(proj, parse_digit_word(2, "11")));
    CHECK_FALSE(accepts(proj, parse_digit_word(2, "1")));
    CHECK(accepts(proj, parse_digit_word(2, "")));
}

TEST_CASE("quotient_count is an independent minimizer") {
    const Dfa proj = project_second(product_automaton(6, 2));
    CHECK(quotient_count(proj, 12) == 7);
    CHECK(quotient_count(thue_morse_pair_automaton(2), 2) == 2);

    Dfa all(digit_alphabet(2));
    all.add_state("s", true);
    all.set_initial(0);
    all.set_transition(0, 0, 0);
    all.set_transition(0, 1, 0);
    CHECK(quotient_count(all, 5) == 1);

    CHECK_THROWS_AS(quotient_count(multiplication_automaton(6, 4), 5), std::invalid_argument);

    for (std::uint64_t m : {1, 2, 3, 4, 5, 6, 8, 12, 24}) {
        for (int p : {1, 2}) {
            const Dfa projected = project_second(product_automaton(m, p));
            const int minimized = moore_minimize(projected).num_states();
            CHECK(quotient_count(projected) == minimized);
            CHECK(quotient_count(moore_minimize(projected)) == minimized);
        }
    }
}

TEST_CASE("sweep rows carry matching counts") {
    const auto rows = run_sweep(8, 2);
    CHECK(rows.size() == 16);
    for (const SweepRow& row : rows) {
        CHECK(row.ok);
        CHECK(row.minimized_states == row.formula_states);
        CHECK(row.direct_states == row.formula_states);
        CHECK(row.formula_states == 2 * row.k + static_cast<std::uint64_t>((row.z + row.p - 1) / row.p));
    }
    const auto find = [&](std::uint64_t m, int p) {
        for (const auto& row : rows) {
            if (row.m == m && row.p == p) {
                return row;
            }
        }
        return SweepRow{};
    };
    CHECK(find(6, 2).formula_states == 7);
    CHECK(find(5, 1).formula_states == 10);
    CHECK(find(1, 1).formula_states == 2);
    CHECK(find(8, 2).formula_states == 4);
    CHECK(state_complexity_formula(24, 2) == 8);
}

TEST_CASE("sweep TSV format") {
    std::ostringstream os;
    write_sweep_tsv(os, run_sweep(2, 1));
    const std::string text = os.str();
    CHECK(text.rfind("m\tp\tk\tz\tformula\tminimized\tdirect\tok\n", 0) == 0);
    CHECK(text.find("1\t1\t1\t0\t2\t2\t2\ttrue\n") != std::string::npos);
    CHECK(text.find("2\t1\t1\t1\t3\t3\t3\ttrue\n") != std::string::npos);
}

TEST_CASE("odd multipliers need no merging") {
    for (std::uint64_t m = 1; m <= 31; m += 2) {
        for (int p : {1, 2, 3}) {
            const Dfa projected = project_second(product_automaton(m, p));
            CHECK(projected.num_states() == static_cast<int>(2 * m));
            CHECK(moore_minimize(projected).num_states() == static_cast<int>(2 * m));
        }
    }
}
