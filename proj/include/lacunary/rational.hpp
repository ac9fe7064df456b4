#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "error.hpp"

namespace lacunary {

using Integer = mpz_class;
using Rational = mpq_class;
/// Exponents are never assumed to fit a machine word.
using Exponent = mpz_class;

inline Integer parse_integer(std::string_view text) {
    Integer z;
    std::string s(text);
    if (s.empty() || z.set_str(s, 10) != 0)
        fail(ErrorCode::Parse, "not a decimal integer: '" + s + "'");
    return z;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0)
        fail(ErrorCode::Parse, "zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Accepts "p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text));
    return make_rational(parse_integer(text.substr(0, slash)),
                         parse_integer(text.substr(slash + 1)));
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline unsigned long to_ulong_checked(const Integer& z, const char* what) {
    if (z < 0 || !z.fits_ulong_p())
        fail(ErrorCode::CapExceeded, std::string(what) + " does not fit a machine word");
    return z.get_ui();
}

} // namespace lacunary
