#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tmmult {

// Thrown when a requested object exceeds the configured size caps.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Word of digits in a fixed base, most significant digit first. The empty
// word denotes 0. Every digit must lie in [0, base).
struct DigitWord {
    int base = 2;
    std::vector<int> digits;

    bool operator==(const DigitWord&) const = default;
};

// Word over the pair alphabet of a base: letters are digit pairs (d, e).
// The two component words have equal length by construction.
struct PairWord {
    int base = 2;
    std::vector<std::pair<int, int>> letters;

    bool operator==(const PairWord&) const = default;
};

// m = k * 2^z with k odd.
struct Factorization {
    std::uint64_t m = 1;
    std::uint64_t k = 1;
    int z = 0;
};

// Default cap on the base exponent p; alphabets grow as 2^p and 4^p.
inline constexpr int kMaxBaseExponent = 16;

// Canonical base-b expansion of n: no leading zero, rep(b, 0) is empty.
DigitWord rep(int base, std::uint64_t n);

// Value of a digit word; inverse of rep up to leading zeros.
std::uint64_t val(const DigitWord& w);

// True iff the binary expansion of n has an even number of 1 digits.
bool thue_morse(std::uint64_t n) noexcept;

// Expansions of (first, second), the shorter one padded with leading zeros.
PairWord pair_rep(int base, std::uint64_t first, std::uint64_t second);

DigitWord first_component(const PairWord& w);
DigitWord second_component(const PairWord& w);

// Unique decomposition m = k * 2^z with k odd; m must be positive.
Factorization factorize(std::uint64_t m);

// Rewrites a base-2^p word as the base-2 word of the same value, p bits per
// digit; the result has length p * |w|.
DigitWord tau_expand(int p, const DigitWord& w, int cap = kMaxBaseExponent);

// Digits render in decimal, juxtaposed for base <= 10 and '.'-separated for
// larger bases. parse_digit_word inverts to_string.
std::string to_string(const DigitWord& w);
DigitWord parse_digit_word(int base, std::string_view text);

}  // namespace tmmult
