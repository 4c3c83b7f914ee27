#ifndef REFLBOUND_NUMBER_THEORY_HPP
#define REFLBOUND_NUMBER_THEORY_HPP

// Imaginary quadratic fields: fundamental discriminants, the Kronecker
// character, class numbers and roots of unity.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "reflbound/errors.hpp"

namespace reflbound::arith {

namespace detail {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline bool squarefree(std::int64_t n)
{
    if (n % 4 == 0) {
        return false;
    }
    for (std::int64_t p = 3; p * p <= n; p += 2) {
        if (n % (p * p) == 0) {
            return false;
        }
    }
    return true;
}

} // namespace detail

/// d = 1 (mod 4) squarefree, or d = 4m with m = 2, 3 (mod 4) squarefree.
/// Only negative discriminants are considered; d = 1 is excluded.
inline bool is_fundamental(std::int64_t d)
{
    if (d >= 0) {
        return false;
    }
    const std::int64_t r = detail::mod(d, 4);
    if (r == 1) {
        return d != 1 && detail::squarefree(-d);
    }
    if (r == 0) {
        const std::int64_t m = d / 4;
        const std::int64_t rm = detail::mod(m, 4);
        return (rm == 2 || rm == 3) && (m == -1 || detail::squarefree(-m));
    }
    return false;
}

/// Throws domain_error unless d is a negative fundamental discriminant.
inline void require_fundamental(std::int64_t d)
{
    if (!is_fundamental(d)) {
        throw domain_error(std::to_string(d) + " is not a negative fundamental discriminant");
    }
}

/// Jacobi symbol (a / n) for odd n > 0.
inline int jacobi(std::int64_t a, std::int64_t n)
{
    a = detail::mod(a, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) {
                t = -t;
            }
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) {
            t = -t;
        }
        a %= n;
    }
    return n == 1 ? t : 0;
}

/// Kronecker symbol (d / n) for n >= 1: the character chi_d of Q(sqrt d)
/// when d is a fundamental discriminant.
inline int kronecker(std::int64_t d, std::int64_t n)
{
    if (n <= 0) {
        throw domain_error("kronecker: n must be positive");
    }
    int result = 1;
    if (n % 2 == 0) {
        if (d % 2 == 0) {
            return 0;
        }
        const std::int64_t r = detail::mod(d, 8);
        const int at_two = (r == 1 || r == 7) ? 1 : -1;
        while (n % 2 == 0) {
            n /= 2;
            result *= at_two;
        }
    }
    return result * jacobi(d, n);
}

/// Number of reduced primitive forms (a, b, c) with b^2 - 4ac = d:
/// |b| <= a <= c, b >= 0 when |b| = a or a = c, gcd(a, b, c) = 1.
inline std::int64_t class_number(std::int64_t d)
{
    require_fundamental(d);
    const std::int64_t abs_d = -d;
    std::int64_t h = 0;
    for (std::int64_t b = abs_d % 2; 3 * b * b <= abs_d; b += 2) {
        const std::int64_t ac = (b * b + abs_d) / 4;
        for (std::int64_t a = std::max<std::int64_t>(b, 1); a * a <= ac; ++a) {
            if (ac % a != 0) {
                continue;
            }
            const std::int64_t c = ac / a;
            if (std::gcd(std::gcd(a, b), c) != 1) {
                continue;
            }
            h += (b == 0 || a == b || a == c) ? 1 : 2;
        }
    }
    return h;
}

/// w = 6 for Q(sqrt -3), 4 for Q(i), 2 otherwise.
inline int roots_of_unity(std::int64_t d)
{
    require_fundamental(d);
    if (d == -3) {
        return 6;
    }
    if (d == -4) {
        return 4;
    }
    return 2;
}

/// Class number from Dirichlet's formula h = w / (2|d|) * |sum_{a<|d|} chi(a) a|.
/// Independent of the reduced-form count; used to cross-check it.
inline std::int64_t class_number_dirichlet(std::int64_t d)
{
    require_fundamental(d);
    const std::int64_t abs_d = -d;
    std::int64_t sum = 0;
    for (std::int64_t a = 1; a < abs_d; ++a) {
        sum += kronecker(d, a) * a;
    }
    const std::int64_t numerator = roots_of_unity(d) * std::llabs(sum);
    if (numerator % (2 * abs_d) != 0) {
        throw inconsistency_error("Dirichlet class number formula is not integral for d = " +
                                  std::to_string(d));
    }
    return numerator / (2 * abs_d);
}

/// Fundamental discriminants in [d_min, d_max], ordered by |d| ascending.
inline std::vector<std::int64_t> fundamental_discriminants(std::int64_t d_min, std::int64_t d_max)
{
    std::vector<std::int64_t> out;
    for (std::int64_t d = std::min<std::int64_t>(d_max, -1); d >= d_min; --d) {
        if (is_fundamental(d)) {
            out.push_back(d);
        }
    }
    return out;
}

} // namespace reflbound::arith

#endif // REFLBOUND_NUMBER_THEORY_HPP
