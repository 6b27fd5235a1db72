#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace cycstab {

// All arithmetic in this library is exact. Rationals are arbitrary-precision
// fractions kept in canonical form (reduced, positive denominator); GMP
// maintains the canonical form through every operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// GMP's C++ classes only take long; this build targets LP64 where the
// cast below is lossless.
static_assert(sizeof(long) == sizeof(long long));

inline Rational rational_from_integer(long long value) {
    return Rational(static_cast<long>(value));
}

// Renders a canonical "p/q" string; integral values render without "/q".
std::string rational_to_string(const Rational& q);

// Accepts integer literals and "p/q" fractions, optionally signed.
// Anything else (floats, empty, stray characters) yields nullopt.
std::optional<Rational> parse_rational(std::string_view text);

bool is_integer(const Rational& q);

// Trial division; only small primes ever reach this library.
bool is_prime(long long n);

}  // namespace cycstab
