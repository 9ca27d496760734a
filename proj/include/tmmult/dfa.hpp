#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tmmult/numeration.hpp"

namespace tmmult {

// Alphabet of an automaton: either the digits 0..base-1 or every pair (d, e)
// of such digits. Letters are addressed by their rank in the total order
// (digits numerically, pairs lexicographically by (first, second)), so the
// pair (d, e) has rank d*base + e.
struct Alphabet {
    enum class Kind { digit, pair };

    Kind kind = Kind::digit;
    int base = 2;

    int size() const { return kind == Kind::digit ? base : base * base; }
    std::string letter_name(int letter) const;

    bool operator==(const Alphabet&) const = default;
};

Alphabet digit_alphabet(int base);
Alphabet pair_alphabet(int base);

inline constexpr int kNoState = -1;

// Deterministic finite automaton over an Alphabet, possibly partial. States
// are dense indices carrying opaque labels; labels are kept for debugging
// only, canonical exports number states by BFS discovery instead. A Dfa with
// no states rejects every word. Values are immutable once built.
class Dfa {
public:
    Dfa() = default;
    explicit Dfa(Alphabet alphabet) : alphabet_(alphabet) {}

    int add_state(std::string label, bool final_state = false);
    void set_initial(int state);
    void set_final(int state, bool final_state = true);
    void set_transition(int from, int letter, int to);

    const Alphabet& alphabet() const { return alphabet_; }
    int num_states() const { return static_cast<int>(final_.size()); }
    int num_transitions() const;
    int initial() const { return initial_; }
    bool is_final(int state) const;
    // Target of (from, letter), or kNoState when the transition is missing.
    int transition(int from, int letter) const;
    const std::string& state_label(int state) const;

private:
    void check_state(int state) const;
    void check_letter(int letter) const;

    Alphabet alphabet_{};
    int initial_ = kNoState;
    std::vector<std::string> labels_;
    std::vector<char> final_;
    std::vector<std::int32_t> delta_;
};

// Letter ranks of a word, validated against the alphabet.
std::vector<int> letter_indices(const Alphabet& a, const DigitWord& w);
std::vector<int> letter_indices(const Alphabet& a, const PairWord& w);

// End state of the run from `state`, or nullopt if a transition is missing.
std::optional<int> run_from(const Dfa& a, int state, std::span<const int> letters);

bool accepts(const Dfa& a, std::span<const int> letters);
bool accepts(const Dfa& a, const DigitWord& w);
bool accepts(const Dfa& a, const PairWord& w);
bool accepts_from(const Dfa& a, int state, const DigitWord& w);
bool accepts_from(const Dfa& a, int state, const PairWord& w);

bool is_complete(const Dfa& a);
bool is_accessible(const Dfa& a);
bool is_coaccessible(const Dfa& a);

// True iff languages accepted from distinct states are pairwise disjoint,
// by reachability over unordered state pairs.
bool has_disjoint_states(const Dfa& a);

// Restriction to the states reachable from the initial state.
Dfa accessible_part(const Dfa& a);

// Restriction to accessible-and-coaccessible states; may be partial or even
// empty. The accepted language is unchanged.
Dfa trim(const Dfa& a);

// Adds one fresh non-final sink absorbing all missing transitions; returns
// complete inputs unchanged. The accepted language is unchanged.
Dfa complete_with_sink(const Dfa& a);

// Grouping of the states into disjoint nonempty blocks; block ids are dense
// and ordered by first occurrence over ascending state index.
struct Partition {
    int num_blocks = 0;
    std::vector<int> block_of;

    std::vector<std::vector<int>> blocks() const;
};

// Coarsest congruence refining the final/non-final split. Requires a
// complete, accessible automaton.
Partition moore_refinement(const Dfa& a);

// Quotient by moore_refinement: complete, accessible, reduced, same language.
Dfa moore_minimize(const Dfa& a);

// Language equality over a shared alphabet, by pair reachability with an
// implicit sink for missing transitions.
bool equivalent(const Dfa& a, const Dfa& b);

// Structural equality up to state renaming, via canonical BFS renumbering.
// Both automata must be accessible.
bool isomorphic(const Dfa& a, const Dfa& b);

// States renumbered in BFS discovery order (letters in alphabet order);
// unreachable states keep their relative order at the end.
Dfa canonicalize(const Dfa& a);

// Text format, one automaton per stream: "alphabet:", "initial:", "finals:"
// header lines followed by one "src letter dst" line per transition, states
// numbered canonically. write_dot emits a Graphviz digraph with doublecircle
// finals, an edge from an invisible node into the initial state, and one
// edge per (src, dst) pair labeled by the comma-separated letters.
void write_text(std::ostream& os, const Dfa& a);
void write_dot(std::ostream& os, const Dfa& a);
std::string to_text(const Dfa& a);
std::string to_dot(const Dfa& a);
Dfa read_text(std::istream& is);

}  // namespace tmmult
