#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmmult/constructions.hpp"

namespace tmmult {

// n belongs to m*T iff m divides n and n/m has evenly many binary 1 digits.
// This is the single integer-level oracle all automata are checked against.
bool in_m_thue_morse(std::uint64_t m, std::uint64_t n);

struct MembershipMismatch {
    std::uint64_t n = 0;
    std::string detail;
};

// Compares the projected product and the direct minimal automaton against
// the integer oracle for every n in [0, n_max], on rep(n) and on rep(n) with
// one leading zero. Returns the first disagreement, if any.
std::optional<MembershipMismatch> membership_scan(std::uint64_t m, int p, std::uint64_t n_max);

// Number of distinct acceptance behaviors under words of length <= len_max.
// Once len_max covers the refinement depth this equals the minimal state
// count. Kept as a naive fixpoint, independent of moore_minimize, so the two
// can cross-check each other. Default depth: twice the state count.
int quotient_count(const Dfa& a, int len_max);
int quotient_count(const Dfa& a);

// 2k + ceil(z/p) for m = k * 2^z with k odd.
std::uint64_t state_complexity_formula(std::uint64_t m, int p);

struct SweepRow {
    std::uint64_t m = 0;
    int p = 0;
    std::uint64_t k = 0;
    int z = 0;
    std::uint64_t formula_states = 0;
    std::uint64_t minimized_states = 0;
    std::uint64_t direct_states = 0;
    bool ok = false;
    std::string note;  // failure description when !ok
};

// One row per (m, p) in [1, m_max] x [1, p_max]: state counts of the Moore-
// minimized projected product and of the direct construction, checked for
// isomorphism and against the formula. Failures land in the row, never throw.
std::vector<SweepRow> run_sweep(std::uint64_t m_max, int p_max);

// Tab-separated table: m p k z formula minimized direct ok.
void write_sweep_tsv(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace tmmult
