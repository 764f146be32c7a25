#include "symcartan/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace symcartan {

namespace {

bool is_integer_literal(std::string_view s)
{
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip_plus(std::string_view s)
{
    if (!s.empty() && s[0] == '+') s.remove_prefix(1);
    return std::string(s);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    const mpz_class p(strip_plus(num));
    const mpz_class q{std::string(den)};
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& value)
{
    return value.get_str();
}

double to_double(const Rational& value)
{
    return value.get_d();
}

}  // namespace symcartan
