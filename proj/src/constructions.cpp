#include "tmmult/constructions.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <utility>

namespace tmmult {

namespace {

int ceil_div(int a, int b) {
    return (a + b - 1) / b;
}

std::uint64_t pow_mod(std::uint64_t base, int exponent, std::uint64_t mod) {
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exponent > 0) {
        if (exponent & 1) {
            result = result * base % mod;
        }
        base = base * base % mod;
        exponent >>= 1;
    }
    return result;
}

void check_p(int p, const BuildLimits& limits) {
    if (p < 1) {
        throw std::invalid_argument("base exponent must be positive");
    }
    if (p > limits.max_p) {
        throw ResourceLimitError("base exponent " + std::to_string(p) + " exceeds cap " +
                                 std::to_string(limits.max_p));
    }
}

void check_m(std::uint64_t m, const BuildLimits& limits) {
    if (m == 0) {
        throw std::invalid_argument("multiplier must be positive");
    }
    if (m > limits.max_m) {
        throw ResourceLimitError("multiplier " + std::to_string(m) + " exceeds cap " +
                                 std::to_string(limits.max_m));
    }
}

void check_table(std::uint64_t states, std::uint64_t letters, const BuildLimits& limits) {
    if (states * letters > limits.max_table_entries) {
        throw ResourceLimitError("transition table of " + std::to_string(states * letters) +
                                 " entries exceeds cap " +
                                 std::to_string(limits.max_table_entries));
    }
}

}  // namespace

Parity flipped(Parity x) {
    return x == Parity::even ? Parity::odd : Parity::even;
}

Parity advanced(Parity x, std::uint64_t n) {
    return thue_morse(n) ? x : flipped(x);
}

char parity_char(Parity x) {
    return x == Parity::even ? 'e' : 'o';
}

Dfa thue_morse_pair_automaton(int p, const BuildLimits& limits) {
    check_p(p, limits);
    const int b = 1 << p;
    Dfa a(pair_alphabet(b));
    const int even = a.add_state("even", true);
    const int odd = a.add_state("odd", false);
    a.set_initial(even);
    for (int d = 0; d < b; ++d) {
        const bool keep = thue_morse(static_cast<std::uint64_t>(d));
        for (int e = 0; e < b; ++e) {
            a.set_transition(even, d * b + e, keep ? even : odd);
            a.set_transition(odd, d * b + e, keep ? odd : even);
        }
    }
    return a;
}

Dfa multiplication_automaton(std::uint64_t m, int b, const BuildLimits& limits) {
    check_m(m, limits);
    if (b < 2) {
        throw std::invalid_argument("base must be at least 2");
    }
    if (b > (1 << limits.max_p)) {
        throw ResourceLimitError("base " + std::to_string(b) + " exceeds cap " +
                                 std::to_string(1 << limits.max_p));
    }
    check_table(m, static_cast<std::uint64_t>(b) * b, limits);

    Dfa a(pair_alphabet(b));
    for (std::uint64_t i = 0; i < m; ++i) {
        a.add_state(std::to_string(i), i == 0);
    }
    a.set_initial(0);
    for (std::uint64_t i = 0; i < m; ++i) {
        for (int e = 0; e < b; ++e) {
            const std::uint64_t t = static_cast<std::uint64_t>(b) * i + e;
            const auto d = static_cast<int>(t / m);
            const auto j = static_cast<int>(t % m);
            assert(d < b);
            a.set_transition(static_cast<int>(i), d * b + e, j);
        }
    }
    return a;
}

Dfa product_automaton(std::uint64_t m, int p, const BuildLimits& limits) {
    check_m(m, limits);
    check_p(p, limits);
    const int b = 1 << p;
    check_table(2 * m, static_cast<std::uint64_t>(b) * b, limits);

    Dfa a(pair_alphabet(b));
    for (Parity x : {Parity::even, Parity::odd}) {
        for (std::uint64_t i = 0; i < m; ++i) {
            a.add_state(std::to_string(i) + parity_char(x), i == 0 && x == Parity::even);
        }
    }
    a.set_initial(0);
    for (std::uint64_t i = 0; i < m; ++i) {
        for (int e = 0; e < b; ++e) {
            const std::uint64_t t = static_cast<std::uint64_t>(b) * i + e;
            const auto d = static_cast<int>(t / m);
            const auto j = static_cast<std::uint64_t>(t % m);
            const int letter = d * b + e;
            for (Parity x : {Parity::even, Parity::odd}) {
                const Parity y = advanced(x, static_cast<std::uint64_t>(d));
                a.set_transition(product_state_index(m, {i, x}), letter,
                                 product_state_index(m, {j, y}));
            }
        }
    }
    return a;
}

int product_state_index(std::uint64_t m, const ProductState& s) {
    if (s.residue >= m) {
        throw std::invalid_argument("product state residue out of range");
    }
    return static_cast<int>(s.residue + (s.parity == Parity::odd ? m : 0));
}

Dfa project_second(const Dfa& a) {
    if (a.alphabet().kind != Alphabet::Kind::pair) {
        throw std::invalid_argument("projection requires a pair alphabet");
    }
    const int b = a.alphabet().base;
    Dfa out(digit_alphabet(b));
    for (int s = 0; s < a.num_states(); ++s) {
        out.add_state(a.state_label(s), a.is_final(s));
    }
    if (a.initial() != kNoState) {
        out.set_initial(a.initial());
    }
    for (int s = 0; s < a.num_states(); ++s) {
        for (int d = 0; d < b; ++d) {
            for (int e = 0; e < b; ++e) {
                const int t = a.transition(s, d * b + e);
                if (t == kNoState) {
                    continue;
                }
                if (out.transition(s, e) != kNoState) {
                    throw std::logic_error("projection is nondeterministic at state " +
                                           a.state_label(s) + " on digit " + std::to_string(e));
                }
                out.set_transition(s, e, t);
            }
        }
    }
    return out;
}

StateClass accepting_class() {
    return StateClass{StateClass::Kind::accepting, 0, Parity::even, 0};
}

StateClass residue_class(std::uint64_t j, Parity x) {
    return StateClass{StateClass::Kind::residue, j, x, 0};
}

StateClass zero_class(int beta) {
    return StateClass{StateClass::Kind::zero, 0, Parity::even, beta};
}

std::string class_label(const StateClass& c) {
    switch (c.kind) {
        case StateClass::Kind::accepting:
            return "[0e]";
        case StateClass::Kind::residue:
            return "[" + std::to_string(c.j) + parity_char(c.x) + "]";
        case StateClass::Kind::zero:
            return "Z" + std::to_string(c.beta);
    }
    return {};
}

StateClass classify(std::uint64_t m, int p, const ProductState& s) {
    if (p < 1) {
        throw std::invalid_argument("base exponent must be positive");
    }
    const Factorization f = factorize(m);
    if (s.residue >= m) {
        throw std::invalid_argument("product state residue out of range");
    }
    const std::uint64_t j = s.residue % f.k;
    const std::uint64_t ell = s.residue / f.k;
    if (j != 0) {
        return residue_class(j, advanced(s.parity, ell));
    }
    if (ell == 0) {
        return s.parity == Parity::even ? accepting_class() : residue_class(0, Parity::odd);
    }
    if (s.parity != advanced(Parity::even, ell)) {
        // tag is the odd companion of ell, so the state sits in residue(0, odd)
        return residue_class(0, Parity::odd);
    }
    // Residue k * 2^(z-alpha-1) * (1 + 2*ell') for exactly one depth alpha.
    for (int alpha = 0; alpha < f.z; ++alpha) {
        const std::uint64_t step = f.k << (f.z - alpha - 1);
        if (s.residue % step != 0) {
            continue;
        }
        const std::uint64_t q = s.residue / step;
        if (q % 2 == 0) {
            continue;
        }
        const std::uint64_t half = (q - 1) / 2;
        if (alpha < 64 && (half >> alpha) != 0) {
            continue;
        }
        if (s.parity != advanced(Parity::odd, half)) {
            continue;
        }
        const int beta = std::min(alpha / p, ceil_div(f.z, p) - 1);
        return zero_class(beta);
    }
    throw std::logic_error("product state escaped the class partition");
}

int class_state_index(std::uint64_t m, int p, const StateClass& c) {
    const Factorization f = factorize(m);
    switch (c.kind) {
        case StateClass::Kind::accepting:
            return 0;
        case StateClass::Kind::residue:
            if (c.j == 0) {
                if (c.x != Parity::odd) {
                    throw std::invalid_argument("residue class (0, even) does not exist");
                }
                return 1;
            }
            if (c.j >= f.k) {
                throw std::invalid_argument("residue class index out of range");
            }
            return static_cast<int>(2 * c.j + (c.x == Parity::odd ? 1 : 0));
        case StateClass::Kind::zero:
            if (c.beta < 0 || c.beta >= ceil_div(f.z, p)) {
                throw std::invalid_argument("zero class index out of range");
            }
            return static_cast<int>(2 * f.k) + c.beta;
    }
    throw std::invalid_argument("bad class kind");
}

namespace {

StateClass class_of_index(std::uint64_t k, int index) {
    if (index == 0) {
        return accepting_class();
    }
    if (index == 1) {
        return residue_class(0, Parity::odd);
    }
    if (index < static_cast<int>(2 * k)) {
        return residue_class(static_cast<std::uint64_t>(index) / 2,
                             index % 2 ? Parity::odd : Parity::even);
    }
    return zero_class(index - static_cast<int>(2 * k));
}

}  // namespace

Dfa minimal_automaton(std::uint64_t m, int p, const BuildLimits& limits) {
    check_m(m, limits);
    check_p(p, limits);
    const int b = 1 << p;
    check_table(2 * m, static_cast<std::uint64_t>(b), limits);

    const Factorization f = factorize(m);
    const int zero_blocks = f.z == 0 ? 0 : ceil_div(f.z, p);
    const int n = static_cast<int>(2 * f.k) + zero_blocks;

    Dfa out(digit_alphabet(b));
    for (int c = 0; c < n; ++c) {
        out.add_state(class_label(class_of_index(f.k, c)), c == 0);
    }
    out.set_initial(0);

    // One pass over all product states checks that every member of a class
    // agrees on the class of its successor, digit by digit.
    std::vector<int> table(static_cast<std::size_t>(n) * b, kNoState);
    for (std::uint64_t i = 0; i < m; ++i) {
        for (Parity x : {Parity::even, Parity::odd}) {
            const int src = class_state_index(m, p, classify(m, p, {i, x}));
            for (int e = 0; e < b; ++e) {
                const std::uint64_t t = static_cast<std::uint64_t>(b) * i + e;
                const std::uint64_t d = t / m;
                const ProductState target{t % m, advanced(x, d)};
                const int dst = class_state_index(m, p, classify(m, p, target));
                int& slot = table[static_cast<std::size_t>(src) * b + e];
                if (slot == kNoState) {
                    slot = dst;
                } else if (slot != dst) {
                    throw std::logic_error("class members disagree on the transition target");
                }
            }
        }
    }
    for (int c = 0; c < n; ++c) {
        for (int e = 0; e < b; ++e) {
            const int dst = table[static_cast<std::size_t>(c) * b + e];
            if (dst == kNoState) {
                throw std::logic_error("empty class in the partition");
            }
            out.set_transition(c, e, dst);
        }
    }
    return out;
}

DigitWord selector_word(std::uint64_t m, int p, std::uint64_t j) {
    if (p < 1) {
        throw std::invalid_argument("base exponent must be positive");
    }
    if (p > kMaxBaseExponent) {
        throw ResourceLimitError("base exponent " + std::to_string(p) + " exceeds cap " +
                                 std::to_string(kMaxBaseExponent));
    }
    const Factorization f = factorize(m);
    if (f.k == 1) {
        throw std::domain_error("selector words require the odd part of m to exceed 1");
    }
    if (j >= f.k) {
        throw std::invalid_argument("selector index out of range");
    }
    const int b = 1 << p;
    const auto n = static_cast<int>(rep(b, (f.k - 1) << f.z).digits.size());
    assert(p * n >= f.z);
    const std::uint64_t shift = pow_mod(2, p * n - f.z, f.k);
    const std::uint64_t sigma = (f.k - j % f.k * shift % f.k) % f.k;
    DigitWord w = rep(b, sigma << f.z);
    w.digits.insert(w.digits.begin(), n - w.digits.size(), 0);
    return w;
}

std::optional<DigitWord> distinguishing_word(const Dfa& a, int state1, int state2) {
    if (a.alphabet().kind != Alphabet::Kind::digit) {
        throw std::invalid_argument("distinguishing-word search requires a digit alphabet");
    }
    a.is_final(state1);  // state range checks
    a.is_final(state2);
    if (state1 == state2) {
        return std::nullopt;
    }
    const int n = a.num_states();
    const int sink = n;
    const std::uint64_t side = static_cast<std::uint64_t>(n) + 1;
    if (side * side > (std::uint64_t{1} << 26)) {
        throw ResourceLimitError("state-pair table for distinguishing-word search too large");
    }
    const auto fin = [&](int s) { return s != sink && a.is_final(s); };
    const auto step = [&](int s, int l) {
        if (s == sink) return sink;
        const int t = a.transition(s, l);
        return t == kNoState ? sink : t;
    };
    const auto pair_id = [&](int x, int y) { return static_cast<std::size_t>(x) * side + y; };

    if (fin(state1) != fin(state2)) {
        return DigitWord{a.alphabet().base, {}};
    }
    // BFS over state pairs; exploring digits in order yields the shortest
    // witness, lexicographically least among those.
    std::vector<std::int64_t> parent(side * side, -2);
    std::vector<int> via(side * side, 0);
    const std::size_t root = pair_id(state1, state2);
    parent[root] = -1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        const int x = static_cast<int>(cur / side);
        const int y = static_cast<int>(cur % side);
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int nx = step(x, l);
            const int ny = step(y, l);
            const std::size_t next = pair_id(nx, ny);
            if (parent[next] != -2) {
                continue;
            }
            parent[next] = static_cast<std::int64_t>(cur);
            via[next] = l;
            if (fin(nx) != fin(ny)) {
                std::vector<int> digits;
                for (std::size_t at = next; parent[at] != -1;
                     at = static_cast<std::size_t>(parent[at])) {
                    digits.push_back(via[at]);
                }
                std::ranges::reverse(digits);
                return DigitWord{a.alphabet().base, std::move(digits)};
            }
            if (nx != ny) {  // equal states can never diverge
                queue.push_back(next);
            }
        }
    }
    return std::nullopt;
}

std::optional<DigitWord> distinguishing_word(std::uint64_t m, int p, const ProductState& s1,
                                             const ProductState& s2) {
    const Dfa projected = project_second(product_automaton(m, p));
    return distinguishing_word(projected, product_state_index(m, s1),
                               product_state_index(m, s2));
}

}  // namespace tmmult
