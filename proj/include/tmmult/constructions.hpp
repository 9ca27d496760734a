#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tmmult/dfa.hpp"
#include "tmmult/numeration.hpp"

namespace tmmult {

// Parity of the number of 1 bits absorbed so far; `even` is the accepting
// side of the two-state Thue-Morse acceptor.
enum class Parity : int { even = 0, odd = 1 };

Parity flipped(Parity x);

// Tag reached from x after absorbing the binary digits of n: unchanged when
// n has evenly many 1 bits, flipped otherwise.
Parity advanced(Parity x, std::uint64_t n);

char parity_char(Parity x);  // 'e' or 'o'

// State (residue, parity) of the product automaton; residue in [0, m).
struct ProductState {
    std::uint64_t residue = 0;
    Parity parity = Parity::even;

    bool operator==(const ProductState&) const = default;
};

// Size caps for automaton builds. max_table_entries bounds states x letters.
struct BuildLimits {
    int max_p = 8;
    std::uint64_t max_m = std::uint64_t{1} << 20;
    std::uint64_t max_table_entries = std::uint64_t{1} << 26;
};

// Two-state acceptor over the pair alphabet of base 2^p: accepts (u, v) iff
// val(u) lies in the Thue-Morse set. The second component is ignored.
Dfa thue_morse_pair_automaton(int p, const BuildLimits& limits = {});

// Partial acceptor over the pair alphabet of base b for the pairs (n, m*n):
// states are the residues mod m, and from state i the letter (d, e) leads to
// j exactly when b*i + e = m*d + j. For every (i, e) exactly one (d, j)
// qualifies (the Euclidean quotient and remainder of b*i + e by m), so each
// state has exactly b outgoing transitions.
Dfa multiplication_automaton(std::uint64_t m, int b, const BuildLimits& limits = {});

// Product of the two automata above with base 2^p: accepts the pair
// expansions of {(t, m*t) : t in the Thue-Morse set}. 2m states (i, x),
// initial and sole final state (0, even); partial like the factor above.
Dfa product_automaton(std::uint64_t m, int p, const BuildLimits& limits = {});

// Index of (i, x) in product_automaton: even-parity block first, so
// (i, even) -> i and (i, odd) -> m + i.
int product_state_index(std::uint64_t m, const ProductState& s);

// Replaces each pair label by its second component. Throws std::logic_error
// if two pair letters with equal second component are defined from one
// state; the automata built here satisfy one-transition-per-(state, e), so
// on them the projection is deterministic by construction.
Dfa project_second(const Dfa& a);

// Block of the indistinguishability partition of the projected product, for
// m = k * 2^z:
//  - accepting: the singleton {(0, even)};
//  - residue(j, x): the 2^z states (j + k*l, advanced(x, l)), defined for
//    j in [1, k) with either parity and for (0, odd);
//  - zero(beta): states whose residue is k * 2^(z-alpha-1) * odd with depth
//    alpha in [beta*p, beta*p + p), the last block absorbing depths to z-1.
struct StateClass {
    enum class Kind { accepting, residue, zero };

    Kind kind = Kind::accepting;
    std::uint64_t j = 0;      // residue kind
    Parity x = Parity::even;  // residue kind
    int beta = 0;             // zero kind

    bool operator==(const StateClass&) const = default;
};

StateClass accepting_class();
StateClass residue_class(std::uint64_t j, Parity x);
StateClass zero_class(int beta);
std::string class_label(const StateClass& c);

// The unique class containing the given product state.
StateClass classify(std::uint64_t m, int p, const ProductState& s);

// Canonical numbering of the classes: accepting -> 0, residue(0, odd) -> 1,
// residue(j, even/odd) -> 2j/2j+1 for j >= 1, zero(beta) -> 2k + beta.
int class_state_index(std::uint64_t m, int p, const StateClass& c);

// Minimal acceptor of the base-2^p expansions of m * T, built directly on
// the classes: 2k + ceil(z/p) states. Every member of a class is checked to
// transition into one common class per digit.
Dfa minimal_automaton(std::uint64_t m, int p, const BuildLimits& limits = {});

// Fixed-length word accepted from state j' of the projected multiplication
// automaton (base 2^p) exactly when j' = j. Defined for odd part k > 1 and
// j in [0, k).
DigitWord selector_word(std::uint64_t m, int p, std::uint64_t j);

// Shortest word accepted from exactly one of the two states, or nullopt when
// they are indistinguishable. The (m, p) overload searches the projected
// product automaton.
std::optional<DigitWord> distinguishing_word(const Dfa& a, int state1, int state2);
std::optional<DigitWord> distinguishing_word(std::uint64_t m, int p, const ProductState& s1,
                                             const ProductState& s2);

}  // namespace tmmult
