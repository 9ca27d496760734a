#include "tmmult/dfa.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

namespace tmmult {

namespace {

// Cap on the quadratic state-pair tables used by the pairwise searches.
constexpr std::uint64_t kMaxPairTable = std::uint64_t{1} << 26;

std::vector<char> forward_reachable(const Dfa& a) {
    std::vector<char> seen(a.num_states(), 0);
    if (a.initial() == kNoState) {
        return seen;
    }
    std::deque<int> queue{a.initial()};
    seen[a.initial()] = 1;
    while (!queue.empty()) {
        const int s = queue.front();
        queue.pop_front();
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int t = a.transition(s, l);
            if (t != kNoState && !seen[t]) {
                seen[t] = 1;
                queue.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<char> backward_reachable(const Dfa& a) {
    const int n = a.num_states();
    std::vector<std::vector<int>> rev(n);
    for (int s = 0; s < n; ++s) {
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int t = a.transition(s, l);
            if (t != kNoState) {
                rev[t].push_back(s);
            }
        }
    }
    std::vector<char> seen(n, 0);
    std::deque<int> queue;
    for (int s = 0; s < n; ++s) {
        if (a.is_final(s)) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const int t = queue.front();
        queue.pop_front();
        for (int s : rev[t]) {
            if (!seen[s]) {
                seen[s] = 1;
                queue.push_back(s);
            }
        }
    }
    return seen;
}

Dfa restrict_to(const Dfa& a, const std::vector<char>& keep) {
    Dfa out(a.alphabet());
    std::vector<int> remap(a.num_states(), kNoState);
    for (int s = 0; s < a.num_states(); ++s) {
        if (keep[s]) {
            remap[s] = out.add_state(a.state_label(s), a.is_final(s));
        }
    }
    if (a.initial() != kNoState && keep[a.initial()]) {
        out.set_initial(remap[a.initial()]);
    }
    for (int s = 0; s < a.num_states(); ++s) {
        if (!keep[s]) {
            continue;
        }
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int t = a.transition(s, l);
            if (t != kNoState && keep[t]) {
                out.set_transition(remap[s], l, remap[t]);
            }
        }
    }
    return out;
}

}  // namespace

Alphabet digit_alphabet(int base) {
    if (base < 2) {
        throw std::invalid_argument("alphabet base must be at least 2");
    }
    return Alphabet{Alphabet::Kind::digit, base};
}

Alphabet pair_alphabet(int base) {
    if (base < 2) {
        throw std::invalid_argument("alphabet base must be at least 2");
    }
    return Alphabet{Alphabet::Kind::pair, base};
}

std::string Alphabet::letter_name(int letter) const {
    if (letter < 0 || letter >= size()) {
        throw std::invalid_argument("letter " + std::to_string(letter) + " not in alphabet");
    }
    if (kind == Kind::digit) {
        return std::to_string(letter);
    }
    return "(" + std::to_string(letter / base) + "," + std::to_string(letter % base) + ")";
}

void Dfa::check_state(int state) const {
    if (state < 0 || state >= num_states()) {
        throw std::invalid_argument("state " + std::to_string(state) + " out of range");
    }
}

void Dfa::check_letter(int letter) const {
    if (letter < 0 || letter >= alphabet_.size()) {
        throw std::invalid_argument("letter " + std::to_string(letter) + " not in alphabet");
    }
}

int Dfa::add_state(std::string label, bool final_state) {
    labels_.push_back(std::move(label));
    final_.push_back(final_state ? 1 : 0);
    delta_.resize(delta_.size() + static_cast<std::size_t>(alphabet_.size()), kNoState);
    return num_states() - 1;
}

void Dfa::set_initial(int state) {
    check_state(state);
    initial_ = state;
}

void Dfa::set_final(int state, bool final_state) {
    check_state(state);
    final_[state] = final_state ? 1 : 0;
}

void Dfa::set_transition(int from, int letter, int to) {
    check_state(from);
    check_state(to);
    check_letter(letter);
    delta_[static_cast<std::size_t>(from) * alphabet_.size() + letter] = to;
}

int Dfa::num_transitions() const {
    return static_cast<int>(std::count_if(delta_.begin(), delta_.end(),
                                          [](std::int32_t t) { return t != kNoState; }));
}

bool Dfa::is_final(int state) const {
    check_state(state);
    return final_[state] != 0;
}

int Dfa::transition(int from, int letter) const {
    check_state(from);
    check_letter(letter);
    return delta_[static_cast<std::size_t>(from) * alphabet_.size() + letter];
}

const std::string& Dfa::state_label(int state) const {
    check_state(state);
    return labels_[state];
}

std::vector<int> letter_indices(const Alphabet& a, const DigitWord& w) {
    if (a.kind != Alphabet::Kind::digit || a.base != w.base) {
        throw std::invalid_argument("digit word does not match the automaton alphabet");
    }
    std::vector<int> out;
    out.reserve(w.digits.size());
    for (int d : w.digits) {
        if (d < 0 || d >= a.base) {
            throw std::invalid_argument("digit " + std::to_string(d) + " not in alphabet");
        }
        out.push_back(d);
    }
    return out;
}

std::vector<int> letter_indices(const Alphabet& a, const PairWord& w) {
    if (a.kind != Alphabet::Kind::pair || a.base != w.base) {
        throw std::invalid_argument("pair word does not match the automaton alphabet");
    }
    std::vector<int> out;
    out.reserve(w.letters.size());
    for (const auto& [d, e] : w.letters) {
        if (d < 0 || d >= a.base || e < 0 || e >= a.base) {
            throw std::invalid_argument("pair letter (" + std::to_string(d) + "," +
                                        std::to_string(e) + ") not in alphabet");
        }
        out.push_back(d * a.base + e);
    }
    return out;
}

std::optional<int> run_from(const Dfa& a, int state, std::span<const int> letters) {
    int cur = state;
    a.is_final(cur);  // state range check
    for (int l : letters) {
        cur = a.transition(cur, l);
        if (cur == kNoState) {
            return std::nullopt;
        }
    }
    return cur;
}

bool accepts(const Dfa& a, std::span<const int> letters) {
    for (int l : letters) {
        if (l < 0 || l >= a.alphabet().size()) {
            throw std::invalid_argument("letter " + std::to_string(l) + " not in alphabet");
        }
    }
    if (a.initial() == kNoState) {
        return false;
    }
    const auto end = run_from(a, a.initial(), letters);
    return end.has_value() && a.is_final(*end);
}

bool accepts(const Dfa& a, const DigitWord& w) {
    return accepts(a, letter_indices(a.alphabet(), w));
}

bool accepts(const Dfa& a, const PairWord& w) {
    return accepts(a, letter_indices(a.alphabet(), w));
}

bool accepts_from(const Dfa& a, int state, const DigitWord& w) {
    const auto end = run_from(a, state, letter_indices(a.alphabet(), w));
    return end.has_value() && a.is_final(*end);
}

bool accepts_from(const Dfa& a, int state, const PairWord& w) {
    const auto end = run_from(a, state, letter_indices(a.alphabet(), w));
    return end.has_value() && a.is_final(*end);
}

bool is_complete(const Dfa& a) {
    for (int s = 0; s < a.num_states(); ++s) {
        for (int l = 0; l < a.alphabet().size(); ++l) {
            if (a.transition(s, l) == kNoState) {
                return false;
            }
        }
    }
    return true;
}

bool is_accessible(const Dfa& a) {
    const auto seen = forward_reachable(a);
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool is_coaccessible(const Dfa& a) {
    const auto seen = backward_reachable(a);
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

bool has_disjoint_states(const Dfa& a) {
    const int n = a.num_states();
    if (n <= 1) {
        return true;
    }
    if (static_cast<std::uint64_t>(n) * n > kMaxPairTable) {
        throw ResourceLimitError("state-pair table for disjointness check too large");
    }
    std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
    std::deque<std::pair<int, int>> queue;
    const auto push = [&](int x, int y) {
        if (x > y) {
            std::swap(x, y);
        }
        char& cell = seen[static_cast<std::size_t>(x) * n + y];
        if (!cell) {
            cell = 1;
            queue.emplace_back(x, y);
        }
    };
    for (int p = 0; p < n; ++p) {
        for (int q = p + 1; q < n; ++q) {
            push(p, q);
        }
    }
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        // A pair of finals means some word is accepted from both seeds.
        if (a.is_final(x) && a.is_final(y)) {
            return false;
        }
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int tx = a.transition(x, l);
            const int ty = a.transition(y, l);
            if (tx != kNoState && ty != kNoState) {
                push(tx, ty);
            }
        }
    }
    return true;
}

Dfa accessible_part(const Dfa& a) {
    return restrict_to(a, forward_reachable(a));
}

Dfa trim(const Dfa& a) {
    const auto fwd = forward_reachable(a);
    const auto bwd = backward_reachable(a);
    std::vector<char> keep(a.num_states(), 0);
    for (int s = 0; s < a.num_states(); ++s) {
        keep[s] = fwd[s] && bwd[s];
    }
    return restrict_to(a, keep);
}

Dfa complete_with_sink(const Dfa& a) {
    if (a.num_states() == 0) {
        Dfa out(a.alphabet());
        const int sink = out.add_state("sink", false);
        out.set_initial(sink);
        for (int l = 0; l < out.alphabet().size(); ++l) {
            out.set_transition(sink, l, sink);
        }
        return out;
    }
    if (is_complete(a)) {
        return a;
    }
    Dfa out = a;
    const int sink = out.add_state("sink", false);
    for (int s = 0; s <= sink; ++s) {
        for (int l = 0; l < out.alphabet().size(); ++l) {
            if (out.transition(s, l) == kNoState) {
                out.set_transition(s, l, sink);
            }
        }
    }
    return out;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(num_blocks);
    for (int s = 0; s < static_cast<int>(block_of.size()); ++s) {
        out[block_of[s]].push_back(s);
    }
    return out;
}

Partition moore_refinement(const Dfa& a) {
    if (!is_complete(a)) {
        throw std::invalid_argument("moore refinement requires a complete automaton");
    }
    if (!is_accessible(a)) {
        throw std::invalid_argument("moore refinement requires an accessible automaton");
    }
    const int n = a.num_states();
    if (n == 0) {
        return Partition{};
    }
    const int alpha = a.alphabet().size();

    std::vector<int> cls(n), next(n);
    // Dense ids in order of first occurrence, so block numbering is stable.
    const auto assign = [&](const std::vector<std::vector<int>>& key) {
        std::map<std::vector<int>, int> ids;
        for (int s = 0; s < n; ++s) {
            next[s] = ids.try_emplace(key[s], static_cast<int>(ids.size())).first->second;
        }
        std::vector<int> order(ids.size(), -1);
        int fresh = 0;
        for (int s = 0; s < n; ++s) {
            if (order[next[s]] < 0) {
                order[next[s]] = fresh++;
            }
        }
        for (int s = 0; s < n; ++s) {
            next[s] = order[next[s]];
        }
        return fresh;
    };

    std::vector<std::vector<int>> key(n);
    for (int s = 0; s < n; ++s) {
        key[s] = {a.is_final(s) ? 1 : 0};
    }
    int count = assign(key);
    cls = next;
    for (;;) {
        for (int s = 0; s < n; ++s) {
            key[s].assign(1, cls[s]);
            for (int l = 0; l < alpha; ++l) {
                key[s].push_back(cls[a.transition(s, l)]);
            }
        }
        const int refined = assign(key);
        if (refined == count) {
            break;  // refinement only splits, so equal counts mean a fixpoint
        }
        cls = next;
        count = refined;
    }
    return Partition{count, std::move(cls)};
}

Dfa moore_minimize(const Dfa& a) {
    const Partition part = moore_refinement(a);
    const auto groups = part.blocks();
    Dfa out(a.alphabet());
    for (const auto& members : groups) {
        std::string label;
        if (members.size() == 1) {
            label = a.state_label(members.front());
        } else {
            label = "{";
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (i > 0) {
                    label += ",";
                }
                label += a.state_label(members[i]);
            }
            label += "}";
        }
        const bool fin = a.is_final(members.front());
        for (int s : members) {
            if (a.is_final(s) != fin) {
                throw std::logic_error("refinement produced a block of mixed finality");
            }
        }
        out.add_state(std::move(label), fin);
    }
    if (a.initial() != kNoState) {
        out.set_initial(part.block_of[a.initial()]);
    }
    for (int b = 0; b < part.num_blocks; ++b) {
        const int rep = groups[b].front();
        for (int l = 0; l < a.alphabet().size(); ++l) {
            out.set_transition(b, l, part.block_of[a.transition(rep, l)]);
        }
    }
    return out;
}

bool equivalent(const Dfa& a, const Dfa& b) {
    if (a.alphabet() != b.alphabet()) {
        throw std::invalid_argument("equivalence requires identical alphabets");
    }
    const int alpha = a.alphabet().size();
    const int sink_a = a.num_states();
    const int sink_b = b.num_states();
    const std::uint64_t width = static_cast<std::uint64_t>(sink_b) + 1;
    if ((static_cast<std::uint64_t>(sink_a) + 1) * width > kMaxPairTable) {
        throw ResourceLimitError("state-pair table for equivalence check too large");
    }
    const auto fin_a = [&](int x) { return x != sink_a && a.is_final(x); };
    const auto fin_b = [&](int y) { return y != sink_b && b.is_final(y); };
    const auto step_a = [&](int x, int l) {
        if (x == sink_a) return sink_a;
        const int t = a.transition(x, l);
        return t == kNoState ? sink_a : t;
    };
    const auto step_b = [&](int y, int l) {
        if (y == sink_b) return sink_b;
        const int t = b.transition(y, l);
        return t == kNoState ? sink_b : t;
    };

    std::vector<char> seen((static_cast<std::size_t>(sink_a) + 1) * width, 0);
    std::deque<std::pair<int, int>> queue;
    const int x0 = a.initial() == kNoState ? sink_a : a.initial();
    const int y0 = b.initial() == kNoState ? sink_b : b.initial();
    seen[x0 * width + y0] = 1;
    queue.emplace_back(x0, y0);
    while (!queue.empty()) {
        const auto [x, y] = queue.front();
        queue.pop_front();
        if (fin_a(x) != fin_b(y)) {
            return false;
        }
        for (int l = 0; l < alpha; ++l) {
            const int nx = step_a(x, l);
            const int ny = step_b(y, l);
            char& cell = seen[nx * width + ny];
            if (!cell) {
                cell = 1;
                queue.emplace_back(nx, ny);
            }
        }
    }
    return true;
}

Dfa canonicalize(const Dfa& a) {
    const int n = a.num_states();
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    if (a.initial() != kNoState) {
        std::deque<int> queue{a.initial()};
        seen[a.initial()] = 1;
        while (!queue.empty()) {
            const int s = queue.front();
            queue.pop_front();
            order.push_back(s);
            for (int l = 0; l < a.alphabet().size(); ++l) {
                const int t = a.transition(s, l);
                if (t != kNoState && !seen[t]) {
                    seen[t] = 1;
                    queue.push_back(t);
                }
            }
        }
    }
    for (int s = 0; s < n; ++s) {
        if (!seen[s]) {
            order.push_back(s);
        }
    }
    std::vector<int> index(n, kNoState);
    for (int i = 0; i < n; ++i) {
        index[order[i]] = i;
    }
    Dfa out(a.alphabet());
    for (int i = 0; i < n; ++i) {
        out.add_state(a.state_label(order[i]), a.is_final(order[i]));
    }
    if (a.initial() != kNoState) {
        out.set_initial(index[a.initial()]);
    }
    for (int s = 0; s < n; ++s) {
        for (int l = 0; l < a.alphabet().size(); ++l) {
            const int t = a.transition(s, l);
            if (t != kNoState) {
                out.set_transition(index[s], l, index[t]);
            }
        }
    }
    return out;
}

bool isomorphic(const Dfa& a, const Dfa& b) {
    if (!is_accessible(a) || !is_accessible(b)) {
        throw std::invalid_argument("isomorphism check requires accessible automata");
    }
    if (a.alphabet() != b.alphabet() || a.num_states() != b.num_states()) {
        return false;
    }
    const Dfa ca = canonicalize(a);
    const Dfa cb = canonicalize(b);
    if ((ca.initial() == kNoState) != (cb.initial() == kNoState)) {
        return false;
    }
    for (int s = 0; s < ca.num_states(); ++s) {
        if (ca.is_final(s) != cb.is_final(s)) {
            return false;
        }
        for (int l = 0; l < ca.alphabet().size(); ++l) {
            if (ca.transition(s, l) != cb.transition(s, l)) {
                return false;
            }
        }
    }
    return true;
}

void write_text(std::ostream& os, const Dfa& a) {
    const Dfa c = canonicalize(a);
    os << "alphabet:";
    for (int l = 0; l < c.alphabet().size(); ++l) {
        os << ' ' << c.alphabet().letter_name(l);
    }
    os << '\n';
    os << "initial: " << (c.initial() == kNoState ? std::string("-") : std::to_string(c.initial()))
       << '\n';
    os << "finals:";
    for (int s = 0; s < c.num_states(); ++s) {
        if (c.is_final(s)) {
            os << ' ' << s;
        }
    }
    os << '\n';
    for (int s = 0; s < c.num_states(); ++s) {
        for (int l = 0; l < c.alphabet().size(); ++l) {
            const int t = c.transition(s, l);
            if (t != kNoState) {
                os << s << ' ' << c.alphabet().letter_name(l) << ' ' << t << '\n';
            }
        }
    }
}

void write_dot(std::ostream& os, const Dfa& a) {
    const Dfa c = canonicalize(a);
    os << "digraph dfa {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    if (c.initial() != kNoState) {
        os << "  __start [shape=none, label=\"\"];\n";
    }
    for (int s = 0; s < c.num_states(); ++s) {
        os << "  " << s;
        if (c.is_final(s)) {
            os << " [shape=doublecircle]";
        }
        os << ";\n";
    }
    if (c.initial() != kNoState) {
        os << "  __start -> " << c.initial() << ";\n";
    }
    for (int s = 0; s < c.num_states(); ++s) {
        std::map<int, std::string> grouped;
        for (int l = 0; l < c.alphabet().size(); ++l) {
            const int t = c.transition(s, l);
            if (t == kNoState) {
                continue;
            }
            std::string& text = grouped[t];
            if (!text.empty()) {
                text += ",";
            }
            text += c.alphabet().letter_name(l);
        }
        for (const auto& [t, text] : grouped) {
            os << "  " << s << " -> " << t << " [label=\"" << text << "\"];\n";
        }
    }
    os << "}\n";
}

std::string to_text(const Dfa& a) {
    std::ostringstream os;
    write_text(os, a);
    return os.str();
}

std::string to_dot(const Dfa& a) {
    std::ostringstream os;
    write_dot(os, a);
    return os.str();
}

namespace {

int parse_letter_token(const Alphabet& alphabet, const std::string& tok) {
    if (alphabet.kind == Alphabet::Kind::digit) {
        const int d = std::stoi(tok);
        if (d < 0 || d >= alphabet.size()) {
            throw std::invalid_argument("automaton text: letter out of range: " + tok);
        }
        return d;
    }
    int d = 0, e = 0;
    char open = 0, comma = 0, close = 0;
    std::istringstream ss(tok);
    ss >> open >> d >> comma >> e >> close;
    if (!ss || open != '(' || comma != ',' || close != ')' || d < 0 || d >= alphabet.base ||
        e < 0 || e >= alphabet.base) {
        throw std::invalid_argument("automaton text: bad pair letter: " + tok);
    }
    return d * alphabet.base + e;
}

}  // namespace

Dfa read_text(std::istream& is) {
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(is, line)) {
            if (!line.empty()) {
                out = line;
                return true;
            }
        }
        return false;
    };

    std::string header;
    if (!next_line(header) || header.rfind("alphabet:", 0) != 0) {
        throw std::invalid_argument("automaton text: missing alphabet line");
    }
    std::istringstream hs(header.substr(9));
    std::vector<std::string> letters;
    for (std::string tok; hs >> tok;) {
        letters.push_back(tok);
    }
    if (letters.empty()) {
        throw std::invalid_argument("automaton text: empty alphabet");
    }
    Alphabet alphabet;
    if (letters.front().front() == '(') {
        const int base = static_cast<int>(std::lround(std::sqrt(static_cast<double>(letters.size()))));
        if (static_cast<std::size_t>(base) * base != letters.size()) {
            throw std::invalid_argument("automaton text: pair alphabet size is not a square");
        }
        alphabet = pair_alphabet(base);
    } else {
        alphabet = digit_alphabet(static_cast<int>(letters.size()));
    }
    for (std::size_t l = 0; l < letters.size(); ++l) {
        if (letters[l] != alphabet.letter_name(static_cast<int>(l))) {
            throw std::invalid_argument("automaton text: unexpected letter " + letters[l]);
        }
    }

    std::string initial_line;
    if (!next_line(initial_line) || initial_line.rfind("initial:", 0) != 0) {
        throw std::invalid_argument("automaton text: missing initial line");
    }
    std::string initial_tok;
    {
        std::istringstream ss(initial_line.substr(8));
        ss >> initial_tok;
    }

    std::string finals_line;
    if (!next_line(finals_line) || finals_line.rfind("finals:", 0) != 0) {
        throw std::invalid_argument("automaton text: missing finals line");
    }
    std::vector<int> finals;
    {
        std::istringstream ss(finals_line.substr(7));
        for (int s; ss >> s;) {
            finals.push_back(s);
        }
    }

    struct Edge {
        int src, letter, dst;
    };
    std::vector<Edge> edges;
    int max_state = -1;
    for (std::string text; next_line(text);) {
        std::istringstream ss(text);
        int src = 0, dst = 0;
        std::string letter_tok;
        if (!(ss >> src >> letter_tok >> dst)) {
            throw std::invalid_argument("automaton text: bad transition line: " + text);
        }
        edges.push_back({src, parse_letter_token(alphabet, letter_tok), dst});
        max_state = std::max({max_state, src, dst});
    }
    int initial = kNoState;
    if (initial_tok != "-") {
        initial = std::stoi(initial_tok);
        max_state = std::max(max_state, initial);
    }
    for (int s : finals) {
        max_state = std::max(max_state, s);
    }

    Dfa out(alphabet);
    for (int s = 0; s <= max_state; ++s) {
        out.add_state(std::to_string(s), false);
    }
    for (int s : finals) {
        out.set_final(s, true);
    }
    if (initial != kNoState) {
        out.set_initial(initial);
    }
    for (const Edge& e : edges) {
        out.set_transition(e.src, e.letter, e.dst);
    }
    return out;
}

}  // namespace tmmult
