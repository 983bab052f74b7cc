#pragma once

// Small independent reference computations shared by the tests. They work
// on plain strings and integers and never call into the library.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

// Half-bit levels of Manchester bits: 0 -> "HL", 1 -> "LH".
inline std::string manchester_levels(const std::vector<int>& bits)
{
    std::string s;
    for (int b : bits)
        s += b ? "LH" : "HL";
    return s;
}

// Letter i is J when level i differs from level i-1.
inline std::string letters_of_levels(const std::string& levels, char initial)
{
    std::string out;
    char prev = initial;
    for (char c : levels) {
        out += c != prev ? 'J' : 'K';
        prev = c;
    }
    return out;
}

// Level trace of a letter string from an initial level.
inline std::string levels_of_letters(const std::string& letters, char initial)
{
    std::string out;
    char lv = initial;
    for (char c : letters) {
        if (c == 'J')
            lv = lv == 'H' ? 'L' : 'H';
        out += lv;
    }
    return out;
}

// Sum of +1 per held H half and -1 per held L half.
inline int dc_bias(const std::string& letters, char initial)
{
    const std::string lv = levels_of_letters(letters, initial);
    int s = 0;
    for (std::size_t i = 0; i < letters.size(); ++i)
        if (letters[i] == 'K')
            s += lv[i] == 'H' ? 1 : -1;
    return s;
}

inline std::string jk_string(std::uint64_t code, unsigned length)
{
    // letter 0 is the most significant bit so counting up is lexicographic
    std::string s(length, 'J');
    for (unsigned i = 0; i < length; ++i)
        if ((code >> (length - 1 - i)) & 1)
            s[i] = 'K';
    return s;
}

inline bool valid_image(const std::string& s)
{
    return s.find("KK") == std::string::npos && !(s.front() == 'K' && s.back() == 'K');
}

inline std::uint64_t fib(unsigned n)
{
    std::uint64_t a = 0, b = 1;
    for (unsigned i = 0; i < n; ++i) {
        const std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace oracle
