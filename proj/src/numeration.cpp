#include "tmmult/numeration.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>

namespace tmmult {

namespace {

void check_base(int base) {
    if (base < 2) {
        throw std::invalid_argument("base must be at least 2, got " + std::to_string(base));
    }
}

void check_digits(const DigitWord& w) {
    check_base(w.base);
    for (int d : w.digits) {
        if (d < 0 || d >= w.base) {
            throw std::invalid_argument("digit " + std::to_string(d) + " out of range for base " +
                                        std::to_string(w.base));
        }
    }
}

}  // namespace

DigitWord rep(int base, std::uint64_t n) {
    check_base(base);
    DigitWord w{base, {}};
    const auto b = static_cast<std::uint64_t>(base);
    while (n > 0) {
        w.digits.push_back(static_cast<int>(n % b));
        n /= b;
    }
    std::ranges::reverse(w.digits);
    return w;
}

std::uint64_t val(const DigitWord& w) {
    check_digits(w);
    const auto b = static_cast<std::uint64_t>(w.base);
    std::uint64_t acc = 0;
    for (int d : w.digits) {
        const auto dd = static_cast<std::uint64_t>(d);
        if (acc > (std::numeric_limits<std::uint64_t>::max() - dd) / b) {
            throw std::overflow_error("digit word value exceeds 64 bits");
        }
        acc = acc * b + dd;
    }
    return acc;
}

bool thue_morse(std::uint64_t n) noexcept {
    return std::popcount(n) % 2 == 0;
}

PairWord pair_rep(int base, std::uint64_t first, std::uint64_t second) {
    const DigitWord u = rep(base, first);
    const DigitWord v = rep(base, second);
    const std::size_t len = std::max(u.digits.size(), v.digits.size());
    const auto digit_at = [len](const DigitWord& x, std::size_t i) {
        const std::size_t pad = len - x.digits.size();
        return i < pad ? 0 : x.digits[i - pad];
    };
    PairWord w{base, {}};
    w.letters.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        w.letters.emplace_back(digit_at(u, i), digit_at(v, i));
    }
    return w;
}

DigitWord first_component(const PairWord& w) {
    DigitWord out{w.base, {}};
    out.digits.reserve(w.letters.size());
    for (const auto& [d, e] : w.letters) {
        (void)e;
        out.digits.push_back(d);
    }
    return out;
}

DigitWord second_component(const PairWord& w) {
    DigitWord out{w.base, {}};
    out.digits.reserve(w.letters.size());
    for (const auto& [d, e] : w.letters) {
        (void)d;
        out.digits.push_back(e);
    }
    return out;
}

Factorization factorize(std::uint64_t m) {
    if (m == 0) {
        throw std::domain_error("factorize is defined for positive integers only");
    }
    const int z = std::countr_zero(m);
    return Factorization{m, m >> z, z};
}

DigitWord tau_expand(int p, const DigitWord& w, int cap) {
    if (p < 1) {
        throw std::invalid_argument("base exponent must be positive");
    }
    if (p > cap) {
        throw ResourceLimitError("base exponent " + std::to_string(p) + " exceeds cap " +
                                 std::to_string(cap));
    }
    if (w.base != (1 << p)) {
        throw std::invalid_argument("word base " + std::to_string(w.base) + " is not 2^" +
                                    std::to_string(p));
    }
    check_digits(w);
    DigitWord out{2, {}};
    out.digits.reserve(w.digits.size() * static_cast<std::size_t>(p));
    for (int d : w.digits) {
        for (int bit = p - 1; bit >= 0; --bit) {
            out.digits.push_back((d >> bit) & 1);
        }
    }
    return out;
}

std::string to_string(const DigitWord& w) {
    std::string out;
    const bool dotted = w.base > 10;
    for (std::size_t i = 0; i < w.digits.size(); ++i) {
        if (dotted && i > 0) {
            out += '.';
        }
        out += std::to_string(w.digits[i]);
    }
    return out;
}

DigitWord parse_digit_word(int base, std::string_view text) {
    check_base(base);
    DigitWord w{base, {}};
    if (base <= 10) {
        for (char c : text) {
            if (c < '0' || c > '9') {
                throw std::invalid_argument(std::string("invalid digit character '") + c + "'");
            }
            w.digits.push_back(c - '0');
        }
    } else if (!text.empty()) {
        std::size_t pos = 0;
        while (true) {
            const std::size_t dot = text.find('.', pos);
            const std::string_view tok = text.substr(pos, dot == std::string_view::npos ? dot : dot - pos);
            int d = 0;
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
            if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
                throw std::invalid_argument("invalid digit token '" + std::string(tok) + "'");
            }
            w.digits.push_back(d);
            if (dot == std::string_view::npos) {
                break;
            }
            pos = dot + 1;
        }
    }
    check_digits(w);
    return w;
}

}  // namespace tmmult
