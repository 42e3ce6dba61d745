#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace framelink {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Largest integer n with n <= q.
inline Int rat_floor(const Rat& q) {
    Int n = numerator(q) / denominator(q);
    if (q < 0 && n * denominator(q) != numerator(q)) --n;
    return n;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// Representative of q modulo 1 in [0, 1).
inline Rat mod1(const Rat& q) { return q - Rat(rat_floor(q)); }

// Parses "a/b", "a", or a decimal string like "-3.25" exactly.
std::optional<Rat> parse_rational(const std::string& token);

// Canonical form "a/b" (or "a" when the denominator is 1).
std::string format_rational(const Rat& q);

inline Rat require_rational(const std::string& token) {
    auto q = parse_rational(token);
    if (!q) throw std::invalid_argument("not a rational token: '" + token + "'");
    return *q;
}

}  // namespace framelink
