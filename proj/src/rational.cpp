#include "framelink/rational.hpp"

#include <cctype>

namespace framelink {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

}  // namespace

std::optional<Rat> parse_rational(const std::string& token) {
    if (token.empty()) return std::nullopt;
    auto slash = token.find('/');
    if (slash != std::string::npos) {
        std::string num = token.substr(0, slash);
        std::string den = token.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den)) return std::nullopt;
        Int d(den);
        if (d == 0) return std::nullopt;
        return Rat(Int(num), d);
    }
    auto dot = token.find('.');
    if (dot != std::string::npos) {
        std::string head = token.substr(0, dot);
        std::string tail = token.substr(dot + 1);
        if (tail.empty() || !is_integer_token("0" + tail)) return std::nullopt;
        bool neg = !head.empty() && head[0] == '-';
        if (head == "-" || head == "+" || head.empty()) head += "0";
        if (!is_integer_token(head)) return std::nullopt;
        Int scale = 1;
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Int whole(head);
        Int frac(tail);
        Int num = whole * scale + (neg ? -frac : frac);
        return Rat(num, scale);
    }
    if (!is_integer_token(token)) return std::nullopt;
    return Rat(Int(token));
}

std::string format_rational(const Rat& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace framelink
