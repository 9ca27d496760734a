#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "tmmult/dfa.hpp"

using namespace tmmult;

namespace {

// Two-state acceptor of the binary words with evenly many 1s.
Dfa parity_dfa() {
    Dfa a(digit_alphabet(2));
    const int even = a.add_state("even", true);
    const int odd = a.add_state("odd", false);
    a.set_initial(even);
    a.set_transition(even, 0, even);
    a.set_transition(even, 1, odd);
    a.set_transition(odd, 0, odd);
    a.set_transition(odd, 1, even);
    return a;
}

// Same language with a redundant third state: 0 and 2 are interchangeable.
Dfa parity_dfa_redundant() {
    Dfa a(digit_alphabet(2));
    const int s0 = a.add_state("a", true);
    const int s1 = a.add_state("b", false);
    const int s2 = a.add_state("c", true);
    a.set_initial(s0);
    a.set_transition(s0, 0, s2);
    a.set_transition(s0, 1, s1);
    a.set_transition(s1, 0, s1);
    a.set_transition(s1, 1, s0);
    a.set_transition(s2, 0, s0);
    a.set_transition(s2, 1, s1);
    return a;
}

Dfa random_dfa(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nstates(1, 8);
    const int n = nstates(rng);
    Dfa a(digit_alphabet(2));
    for (int s = 0; s < n; ++s) {
        a.add_state(std::to_string(s), rng() % 3 == 0);
    }
    a.set_initial(static_cast<int>(rng() % n));
    for (int s = 0; s < n; ++s) {
        for (int l = 0; l < 2; ++l) {
            if (rng() % 4 != 0) {  // leave some transitions missing
                a.set_transition(s, l, static_cast<int>(rng() % n));
            }
        }
    }
    return a;
}

}  // namespace

TEST_CASE("alphabet ordering and names") {
    const Alphabet d = digit_alphabet(4);
    CHECK(d.size() == 4);
    CHECK(d.letter_name(3) == "3");
    const Alphabet p = pair_alphabet(4);
    CHECK(p.size() == 16);
    CHECK(p.letter_name(0) == "(0,0)");
    CHECK(p.letter_name(6) == "(1,2)");
    CHECK_THROWS_AS(p.letter_name(16), std::invalid_argument);
    CHECK_THROWS_AS(digit_alphabet(1), std::invalid_argument);
}

TEST_CASE("accepts runs words from the initial state") {
    const Dfa a = parity_dfa();
    CHECK(accepts(a, DigitWord{2, {1, 1}}));
    CHECK_FALSE(accepts(a, DigitWord{2, {1}}));
    CHECK(accepts(a, DigitWord{2, {}}));
    CHECK(accepts_from(a, 1, DigitWord{2, {1}}));
    CHECK_THROWS_AS(accepts(a, DigitWord{2, {2}}), std::invalid_argument);
    CHECK_THROWS_AS(accepts(a, DigitWord{3, {1}}), std::invalid_argument);

    Dfa empty(digit_alphabet(2));
    CHECK_FALSE(accepts(empty, DigitWord{2, {}}));

    // missing transitions reject instead of completing into a sink
    Dfa partial(digit_alphabet(2));
    partial.add_state("only", true);
    partial.set_initial(0);
    partial.set_transition(0, 0, 0);
    CHECK(accepts(partial, DigitWord{2, {0, 0}}));
    CHECK_FALSE(accepts(partial, DigitWord{2, {1}}));
}

TEST_CASE("structural predicates") {
    const Dfa a = parity_dfa();
    CHECK(is_complete(a));
    CHECK(is_accessible(a));
    CHECK(is_coaccessible(a));
    CHECK(has_disjoint_states(a));

    Dfa isolated = parity_dfa();
    isolated.add_state("stray", false);
    CHECK_FALSE(is_accessible(isolated));
    CHECK_FALSE(is_coaccessible(isolated));

    Dfa no_finals(digit_alphabet(2));
    no_finals.add_state("s", false);
    no_finals.set_initial(0);
    no_finals.set_transition(0, 0, 0);
    no_finals.set_transition(0, 1, 0);
    CHECK(is_complete(no_finals));
    CHECK_FALSE(is_coaccessible(no_finals));

    Dfa single(digit_alphabet(2));
    single.add_state("s", true);
    single.set_initial(0);
    CHECK(is_accessible(single));
    CHECK(is_coaccessible(single));
    CHECK_FALSE(is_complete(single));

    // two states accepting overlapping languages are not disjoint
    Dfa overlap(digit_alphabet(2));
    overlap.add_state("x", false);
    overlap.add_state("y", false);
    overlap.add_state("f", true);
    overlap.set_initial(0);
    overlap.set_transition(0, 0, 2);
    overlap.set_transition(1, 0, 2);
    CHECK_FALSE(has_disjoint_states(overlap));
}

TEST_CASE("complete_with_sink and trim are inverse on partial machines") {
    Dfa partial(digit_alphabet(2));
    partial.add_state("p", true);
    partial.set_initial(0);
    partial.set_transition(0, 0, 0);
    const Dfa completed = complete_with_sink(partial);
    CHECK(completed.num_states() == 2);
    CHECK(is_complete(completed));
    CHECK(equivalent(partial, completed));

    const Dfa full = parity_dfa();
    CHECK(complete_with_sink(full).num_states() == 2);

    Dfa bare(digit_alphabet(2));
    bare.add_state("s", false);
    bare.set_initial(0);
    CHECK(complete_with_sink(bare).num_states() == 2);

    const Dfa trimmed = trim(completed);
    CHECK(trimmed.num_states() == 1);
    CHECK(equivalent(trimmed, partial));

    Dfa rejecting(digit_alphabet(2));
    rejecting.add_state("s", false);
    rejecting.set_initial(0);
    rejecting.set_transition(0, 0, 0);
    CHECK(trim(rejecting).num_states() == 0);
    CHECK_FALSE(accepts(trim(rejecting), DigitWord{2, {}}));
}

TEST_CASE("moore_minimize merges indistinguishable states") {
    const Dfa redundant = parity_dfa_redundant();
    const Dfa minimized = moore_minimize(redundant);
    CHECK(minimized.num_states() == 2);
    CHECK(equivalent(minimized, parity_dfa()));
    CHECK(moore_minimize(minimized).num_states() == 2);

    const Partition part = moore_refinement(redundant);
    CHECK(part.num_blocks == 2);
    CHECK(part.block_of[0] == part.block_of[2]);

    Dfa partial(digit_alphabet(2));
    partial.add_state("p", true);
    partial.set_initial(0);
    CHECK_THROWS_AS(moore_minimize(partial), std::invalid_argument);

    Dfa stray = parity_dfa();
    stray.add_state("stray", false);
    stray.set_transition(2, 0, 2);
    stray.set_transition(2, 1, 2);
    CHECK_THROWS_AS(moore_minimize(stray), std::invalid_argument);
}

TEST_CASE("equivalent compares languages") {
    CHECK(equivalent(parity_dfa(), parity_dfa_redundant()));

    Dfa swapped = parity_dfa();
    swapped.set_final(0, false);
    swapped.set_final(1, true);
    CHECK_FALSE(equivalent(parity_dfa(), swapped));

    Dfa other_alphabet(digit_alphabet(3));
    other_alphabet.add_state("s", true);
    other_alphabet.set_initial(0);
    CHECK_THROWS_AS(equivalent(parity_dfa(), other_alphabet), std::invalid_argument);
}

TEST_CASE("isomorphic compares structure up to renaming") {
    CHECK(isomorphic(parity_dfa(), parity_dfa()));

    // same machine entered through the other state
    Dfa renamed(digit_alphabet(2));
    renamed.add_state("x", false);
    renamed.add_state("y", true);
    renamed.set_initial(1);
    renamed.set_transition(1, 0, 1);
    renamed.set_transition(1, 1, 0);
    renamed.set_transition(0, 0, 0);
    renamed.set_transition(0, 1, 1);
    CHECK(isomorphic(parity_dfa(), renamed));

    // different state counts can never be isomorphic
    CHECK_FALSE(isomorphic(parity_dfa(), parity_dfa_redundant()));
    // but minimizing the redundant machine recovers the two-state one
    CHECK(isomorphic(parity_dfa(), moore_minimize(parity_dfa_redundant())));

    Dfa inaccessible = parity_dfa();
    inaccessible.add_state("stray", false);
    CHECK_THROWS_AS(isomorphic(parity_dfa(), inaccessible), std::invalid_argument);
}

TEST_CASE("canonical numbering is deterministic") {
    const Dfa a = parity_dfa_redundant();
    CHECK(to_text(a) == to_text(a));
    CHECK(to_dot(a) == to_dot(a));
    const Dfa c = canonicalize(a);
    CHECK(c.num_states() == a.num_states());
    CHECK(isomorphic(c, a));
    CHECK(c.initial() == 0);
}

TEST_CASE("text serialization round trips") {
    const Dfa a = parity_dfa();
    const std::string text = to_text(a);
    CHECK(text.rfind("alphabet: 0 1\n", 0) == 0);
    std::istringstream is(text);
    const Dfa back = read_text(is);
    CHECK(isomorphic(a, back));
    CHECK(equivalent(a, back));

    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const Dfa r = accessible_part(random_dfa(rng));
        std::istringstream rs(to_text(r));
        const Dfa rb = read_text(rs);
        CHECK(equivalent(r, rb));
        CHECK(to_text(rb) == to_text(r));
    }
}

TEST_CASE("dot export marks finals and the initial arrow") {
    const std::string dot = to_dot(parity_dfa());
    CHECK(dot.find("digraph dfa {") != std::string::npos);
    CHECK(dot.find("0 [shape=doublecircle];") != std::string::npos);
    CHECK(dot.find("__start -> 0;") != std::string::npos);
    CHECK(dot.find("0 -> 1 [label=\"1\"];") != std::string::npos);
}

TEST_CASE("random machines survive the trim/complete/minimize pipeline") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 500; ++i) {
        const Dfa a = random_dfa(rng);
        const Dfa rebuilt = moore_minimize(accessible_part(complete_with_sink(trim(a))));
        CHECK(equivalent(a, rebuilt));
        CHECK(rebuilt.num_states() <= complete_with_sink(trim(a)).num_states());
        CHECK(equivalent(a, moore_minimize(accessible_part(complete_with_sink(a)))));
    }
}

TEST_CASE("equivalence behaves like an equivalence relation") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const Dfa a = random_dfa(rng);
        const Dfa b = random_dfa(rng);
        const Dfa c = random_dfa(rng);
        CHECK(equivalent(a, a));
        CHECK(equivalent(a, b) == equivalent(b, a));
        if (equivalent(a, b) && equivalent(b, c)) {
            CHECK(equivalent(a, c));
        }
    }
}
