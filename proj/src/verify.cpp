#include "tmmult/verify.hpp"

#include <map>
#include <ostream>

namespace tmmult {

bool in_m_thue_morse(std::uint64_t m, std::uint64_t n) {
    if (m == 0) {
        throw std::invalid_argument("multiplier must be positive");
    }
    return n % m == 0 && thue_morse(n / m);
}

std::optional<MembershipMismatch> membership_scan(std::uint64_t m, int p, std::uint64_t n_max) {
    const int b = 1 << p;
    const Dfa projected = project_second(product_automaton(m, p));
    const Dfa direct = minimal_automaton(m, p);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        const bool expected = in_m_thue_morse(m, n);
        DigitWord w = rep(b, n);
        if (accepts(projected, w) != expected) {
            return MembershipMismatch{n, "projected product disagrees on " + to_string(w)};
        }
        if (accepts(direct, w) != expected) {
            return MembershipMismatch{n, "direct minimal automaton disagrees on " + to_string(w)};
        }
        w.digits.insert(w.digits.begin(), 0);
        if (accepts(projected, w) != expected) {
            return MembershipMismatch{n, "projected product disagrees on padded " + to_string(w)};
        }
        if (accepts(direct, w) != expected) {
            return MembershipMismatch{
                n, "direct minimal automaton disagrees on padded " + to_string(w)};
        }
    }
    return std::nullopt;
}

int quotient_count(const Dfa& a, int len_max) {
    if (!is_complete(a) || !is_accessible(a)) {
        throw std::invalid_argument("quotient counting requires a complete accessible automaton");
    }
    const int n = a.num_states();
    if (n == 0) {
        return 0;
    }
    const int alpha = a.alphabet().size();
    std::vector<int> behavior(n);
    for (int s = 0; s < n; ++s) {
        behavior[s] = a.is_final(s) ? 1 : 0;
    }
    int count = 0;
    {
        std::map<int, int> ids;
        for (int s = 0; s < n; ++s) {
            ids.try_emplace(behavior[s], 0);
        }
        count = static_cast<int>(ids.size());
    }
    for (int round = 1; round <= len_max; ++round) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> refined(n);
        for (int s = 0; s < n; ++s) {
            std::vector<int> key{behavior[s]};
            for (int l = 0; l < alpha; ++l) {
                key.push_back(behavior[a.transition(s, l)]);
            }
            refined[s] = ids.try_emplace(std::move(key), static_cast<int>(ids.size())).first->second;
        }
        const int refined_count = static_cast<int>(ids.size());
        if (refined_count == count) {
            break;
        }
        behavior = std::move(refined);
        count = refined_count;
    }
    return count;
}

int quotient_count(const Dfa& a) {
    return quotient_count(a, 2 * a.num_states());
}

std::uint64_t state_complexity_formula(std::uint64_t m, int p) {
    if (p < 1) {
        throw std::invalid_argument("base exponent must be positive");
    }
    const Factorization f = factorize(m);
    return 2 * f.k + static_cast<std::uint64_t>((f.z + p - 1) / p);
}

std::vector<SweepRow> run_sweep(std::uint64_t m_max, int p_max) {
    std::vector<SweepRow> rows;
    rows.reserve(m_max * static_cast<std::uint64_t>(p_max));
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        for (int p = 1; p <= p_max; ++p) {
            SweepRow row;
            row.m = m;
            row.p = p;
            const Factorization f = factorize(m);
            row.k = f.k;
            row.z = f.z;
            row.formula_states = state_complexity_formula(m, p);
            try {
                const Dfa projected = project_second(product_automaton(m, p));
                const Dfa minimized = moore_minimize(projected);
                const Dfa direct = minimal_automaton(m, p);
                row.minimized_states = static_cast<std::uint64_t>(minimized.num_states());
                row.direct_states = static_cast<std::uint64_t>(direct.num_states());
                const bool iso = isomorphic(minimized, direct);
                row.ok = iso && row.minimized_states == row.formula_states &&
                         row.direct_states == row.formula_states;
                if (!row.ok) {
                    row.note = iso ? "state count mismatch" : "automata not isomorphic";
                }
            } catch (const std::exception& e) {
                row.ok = false;
                row.note = e.what();
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

void write_sweep_tsv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "m\tp\tk\tz\tformula\tminimized\tdirect\tok\n";
    for (const SweepRow& r : rows) {
        os << r.m << '\t' << r.p << '\t' << r.k << '\t' << r.z << '\t' << r.formula_states
           << '\t' << r.minimized_states << '\t' << r.direct_states << '\t'
           << (r.ok ? "true" : "false") << '\n';
    }
}

}  // namespace tmmult
