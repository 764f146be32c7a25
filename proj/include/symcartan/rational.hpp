#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace symcartan {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// p/q in lowest terms (mpq_class(p, q) alone does not reduce).
inline Rational ratio(long p, long q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

}  // namespace symcartan
