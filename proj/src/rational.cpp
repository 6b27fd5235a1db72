#include "rational.hpp"

#include <cctype>

namespace cycstab {

std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

std::optional<Rational> parse_rational(std::string_view text) {
    if (text.empty()) {
        return std::nullopt;
    }
    // Validate the shape ourselves: GMP's parser is lenient about
    // whitespace and bases, and we want exactly [-+]?digits[/[-+]?digits].
    size_t i = 0;
    std::string cleaned;  // GMP accepts '-' but not '+'
    cleaned.reserve(text.size());
    auto eat_sign = [&] {
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            if (text[i] == '-') {
                cleaned.push_back('-');
            }
            ++i;
        }
    };
    auto eat_digits = [&] {
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            cleaned.push_back(text[i]);
            ++i;
        }
        return i > start;
    };
    eat_sign();
    if (!eat_digits()) {
        return std::nullopt;
    }
    if (i < text.size()) {
        if (text[i] != '/') {
            return std::nullopt;
        }
        cleaned.push_back('/');
        ++i;
        eat_sign();
        if (!eat_digits() || i != text.size()) {
            return std::nullopt;
        }
    }

    Rational q;
    if (mpq_set_str(q.get_mpq_t(), cleaned.c_str(), 10) != 0) {
        return std::nullopt;
    }
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) {
        return std::nullopt;  // p/0
    }
    q.canonicalize();
    return q;
}

bool is_integer(const Rational& q) {
    return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

bool is_prime(long long n) {
    if (n < 2) {
        return false;
    }
    for (long long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace cycstab
