#ifndef REFLBOUND_ORBIFOLD_HPP
#define REFLBOUND_ORBIFOLD_HPP

// Spherical 2-orbifolds S^2/G for finite G < O(3), written in Conway
// notation, and the reflection group containing each G with index <= 4.
//
// Accepted vocabulary (every finite subgroup of O(3) appears exactly once):
//
//   ()        trivial            (*)        one mirror
//   (p,p)     cyclic             (*p,p)     dihedral reflection group
//   (p,q,r)   rotation group     (*p,q,r)   reflection triangle group
//   (p*)      cone on a mirror   (2*m)      (3*2)
//   (n x)     cone + cross-cap; n = 1 is the projective plane, written "x"
//
// with (p,q,r) restricted to 1/p + 1/q + 1/r > 1.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "reflbound/errors.hpp"

namespace reflbound::orbifold {

using Rational = boost::rational<std::int64_t>;

struct SphericalSignature {
    std::vector<int> cone_orders;   ///< cone points before the mirror
    bool mirror = false;
    std::vector<int> corner_orders; ///< corner reflectors on the mirror
    bool crosscap = false;

    friend bool operator==(const SphericalSignature&, const SphericalSignature&) = default;
};

enum class Family {
    trivial,             // ()
    mirror,              // (*)
    cyclic,              // (p,p)
    rotation_triangle,   // (p,q,r)
    dihedral_mirror,     // (*p,p)
    reflection_triangle, // (*p,q,r)
    cone_mirror,         // (p*)
    two_star,            // (2*m)
    three_star_two,      // (3*2)
    crosscap             // (n x)
};

struct OrbifoldGroupInfo {
    std::int64_t order = 0;
    Rational chi;
    bool reflection_generated = false;
};

struct CoverStep {
    SphericalSignature signature; ///< the next group up the chain
    int degree = 1;               ///< covering degree onto it from the previous step

    friend bool operator==(const CoverStep&, const CoverStep&) = default;
};

struct SupergroupResult {
    SphericalSignature supergroup;
    int index = 1;
    std::vector<CoverStep> chain;
};

// ---------------------------------------------------------------------------
// Euler characteristic and classification

/// chi = chi(underlying) - sum(1 - 1/p) - 1/2 sum(1 - 1/q); the underlying
/// surface is a sphere, a disk (mirror) or a projective plane (cross-cap).
inline Rational euler_characteristic(const SphericalSignature& sig)
{
    Rational chi = (sig.mirror || sig.crosscap) ? Rational(1) : Rational(2);
    for (int p : sig.cone_orders) {
        chi -= Rational(1) - Rational(1, p);
    }
    for (int q : sig.corner_orders) {
        chi -= (Rational(1) - Rational(1, q)) / 2;
    }
    return chi;
}

namespace detail {

inline std::vector<int> sorted_desc(std::vector<int> v)
{
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

inline bool spherical_triple(const std::vector<int>& v)
{
    const Rational s = Rational(1, v[0]) + Rational(1, v[1]) + Rational(1, v[2]);
    return s > Rational(1);
}

inline std::string join(const std::vector<int>& v)
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += std::to_string(v[i]);
    }
    return out;
}

} // namespace detail

inline std::string format_signature(const SphericalSignature& sig);

/// Which case of the spherical list `sig` belongs to, or nullopt if none.
inline std::optional<Family> classify(const SphericalSignature& sig)
{
    const auto& cones = sig.cone_orders;
    const auto& corners = sig.corner_orders;
    const auto below_two = [](int v) { return v < 2; };
    if (std::any_of(cones.begin(), cones.end(), below_two) ||
        std::any_of(corners.begin(), corners.end(), below_two)) {
        return std::nullopt;
    }
    if (sig.mirror && sig.crosscap) {
        return std::nullopt;
    }
    if (!sig.mirror && !corners.empty()) {
        return std::nullopt;
    }

    if (sig.crosscap) {
        // "x" is the projective plane (n = 1); otherwise one cone point.
        if (cones.size() <= 1) {
            return Family::crosscap;
        }
        return std::nullopt;
    }

    if (!sig.mirror) {
        if (cones.empty()) {
            return Family::trivial;
        }
        if (cones.size() == 2 && cones[0] == cones[1]) {
            return Family::cyclic;
        }
        if (cones.size() == 3 && detail::spherical_triple(detail::sorted_desc(cones))) {
            return Family::rotation_triangle;
        }
        return std::nullopt;
    }

    if (cones.empty()) {
        if (corners.empty()) {
            return Family::mirror;
        }
        if (corners.size() == 2 && corners[0] == corners[1]) {
            return Family::dihedral_mirror;
        }
        if (corners.size() == 3 && detail::spherical_triple(detail::sorted_desc(corners))) {
            return Family::reflection_triangle;
        }
        return std::nullopt;
    }

    if (cones.size() != 1) {
        return std::nullopt;
    }
    if (corners.empty()) {
        return Family::cone_mirror;
    }
    if (corners.size() == 1 && cones[0] == 2) {
        return Family::two_star;
    }
    if (corners.size() == 1 && cones[0] == 3 && corners[0] == 2) {
        return Family::three_star_two;
    }
    return std::nullopt;
}

/// Throws validation_error unless `sig` is one of the accepted spherical cases.
inline void validate(const SphericalSignature& sig)
{
    if (sig.mirror && sig.crosscap) {
        throw validation_error("signature mixes a mirror and a cross-cap");
    }
    if (!sig.mirror && !sig.corner_orders.empty()) {
        throw validation_error("corner orders require a mirror");
    }
    const auto below_two = [](int v) { return v < 2; };
    if (std::ranges::any_of(sig.cone_orders, below_two) ||
        std::ranges::any_of(sig.corner_orders, below_two)) {
        throw validation_error("cone and corner orders must be at least 2");
    }
    const Rational chi = euler_characteristic(sig);
    if (chi <= Rational(0)) {
        throw validation_error("signature " + format_signature(sig) +
                               " is not spherical (chi = " +
                               std::to_string(chi.numerator()) + "/" +
                               std::to_string(chi.denominator()) + ")");
    }
    if (!classify(sig)) {
        throw validation_error("signature " + format_signature(sig) +
                               " is not a quotient of the sphere by a finite group");
    }
}

// ---------------------------------------------------------------------------
// Text form: "*235", "235", "3*2", "3x", "(12)(12)"

namespace detail {

inline std::string format_order(int v)
{
    return v < 10 ? std::to_string(v) : "(" + std::to_string(v) + ")";
}

} // namespace detail

inline std::string format_signature(const SphericalSignature& sig)
{
    std::string out;
    for (int p : sig.cone_orders) {
        out += detail::format_order(p);
    }
    if (sig.mirror) {
        out += '*';
    }
    for (int q : sig.corner_orders) {
        out += detail::format_order(q);
    }
    if (sig.crosscap) {
        out += 'x';
    }
    return out;
}

/// Tuple form used in print: "(*6,2,2)", "(3*2)", "(3x)", "()".
inline std::string format_tuple(const SphericalSignature& sig)
{
    std::string out = "(" + detail::join(sig.cone_orders);
    if (sig.mirror) {
        out += '*';
        out += detail::join(sig.corner_orders);
    }
    if (sig.crosscap) {
        out += 'x';
    }
    return out + ")";
}

/// Parses and validates a symbol. "1x" is accepted as an alias for "x".
inline SphericalSignature parse_signature(std::string_view text)
{
    SphericalSignature sig;
    bool seen_star = false;
    std::size_t i = 0;

    const auto fail = [&](const std::string& why) {
        throw parse_error("cannot parse orbifold symbol \"" + std::string(text) +
                          "\": " + why);
    };

    while (i < text.size()) {
        const char c = text[i];
        if (c == '*') {
            if (seen_star) {
                fail("more than one '*'");
            }
            seen_star = true;
            ++i;
            continue;
        }
        if (c == 'x' || c == 'X') {
            if (i + 1 != text.size()) {
                fail("'x' must be the last character");
            }
            sig.crosscap = true;
            ++i;
            continue;
        }

        long value = 0;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            value = c - '0';
            ++i;
        } else if (c == '(') {
            const std::size_t close = text.find(')', i);
            if (close == std::string_view::npos || close == i + 1) {
                fail("unterminated or empty parenthesised order");
            }
            for (std::size_t j = i + 1; j < close; ++j) {
                if (!std::isdigit(static_cast<unsigned char>(text[j]))) {
                    fail("non-digit inside parentheses");
                }
                value = value * 10 + (text[j] - '0');
                if (value > 1'000'000) {
                    fail("order too large");
                }
            }
            i = close + 1;
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }

        if (value < 2) {
            const bool rp2_alias = value == 1 && text.substr(i) == "x" &&
                                   !seen_star && sig.cone_orders.empty();
            if (!rp2_alias) {
                fail("orders must be at least 2");
            }
            continue;
        }
        (seen_star ? sig.corner_orders : sig.cone_orders).push_back(static_cast<int>(value));
    }

    sig.mirror = seen_star;
    validate(sig);
    return sig;
}

// ---------------------------------------------------------------------------
// Group orders and reflection supergroups

inline bool is_reflection_generated(const SphericalSignature& sig)
{
    return sig.mirror && sig.cone_orders.empty() && !sig.crosscap;
}

/// |G| = 2 / chi since the orbifold is S^2 / G and chi(S^2) = 2.
inline OrbifoldGroupInfo group_order(const SphericalSignature& sig)
{
    validate(sig);
    OrbifoldGroupInfo info;
    info.chi = euler_characteristic(sig);
    const Rational order = Rational(2) / info.chi;
    if (order.denominator() != 1 || order.numerator() <= 0) {
        throw inconsistency_error("2/chi is not a positive integer for " +
                                  format_signature(sig));
    }
    info.order = order.numerator();
    info.reflection_generated = is_reflection_generated(sig);
    return info;
}

namespace detail {

inline SphericalSignature reflection(std::vector<int> corners)
{
    return SphericalSignature{{}, true, std::move(corners), false};
}

} // namespace detail

inline SupergroupResult reflection_supergroup(const SphericalSignature& sig)
{
    validate(sig);
    const auto family = *classify(sig);

    SupergroupResult result;
    const auto single_step = [&](SphericalSignature super) {
        result.supergroup = super;
        result.index = 2;
        result.chain = {CoverStep{std::move(super), 2}};
    };

    switch (family) {
    case Family::mirror:
    case Family::dihedral_mirror:
    case Family::reflection_triangle:
        result.supergroup = sig;
        result.index = 1;
        break;
    case Family::trivial:
        single_step(detail::reflection({}));
        break;
    case Family::cyclic:
    case Family::rotation_triangle:
        single_step(detail::reflection(sig.cone_orders));
        break;
    case Family::cone_mirror:
        single_step(detail::reflection({sig.cone_orders[0], 2, 2}));
        break;
    case Family::two_star:
        single_step(detail::reflection({2 * sig.corner_orders[0], 2, 2}));
        break;
    case Family::three_star_two:
        single_step(detail::reflection({4, 3, 2}));
        break;
    case Family::crosscap: {
        const int n = sig.cone_orders.empty() ? 1 : sig.cone_orders[0];
        SphericalSignature middle{{2 * n}, true, {}, false};
        result.supergroup = detail::reflection({2 * n, 2, 2});
        result.index = 4;
        result.chain = {CoverStep{std::move(middle), 2}, CoverStep{result.supergroup, 2}};
        break;
    }
    }
    return result;
}

/// Checks the order arithmetic of a supergroup result: the chain degrees
/// multiply to the index, every step satisfies chi(cover) = degree *
/// chi(quotient), and |G'| = index * |G|.
inline bool verify_cover(const SupergroupResult& result, const SphericalSignature& sig)
{
    try {
        if (result.index < 1 || result.index > 4) {
            return false;
        }
        if (!is_reflection_generated(result.supergroup)) {
            return false;
        }
        const auto sub = group_order(sig);
        const auto super = group_order(result.supergroup);
        if (super.order != static_cast<std::int64_t>(result.index) * sub.order) {
            return false;
        }

        if (result.chain.empty()) {
            return result.index == 1 && result.supergroup == sig;
        }
        if (!(result.chain.back().signature == result.supergroup)) {
            return false;
        }
        int product = 1;
        Rational previous = sub.chi;
        for (const auto& step : result.chain) {
            if (step.degree < 2) {
                return false;
            }
            const Rational chi = group_order(step.signature).chi;
            if (previous != chi * step.degree) {
                return false;
            }
            previous = chi;
            product *= step.degree;
        }
        return product == result.index;
    } catch (const std::invalid_argument&) {
        return false;
    } catch (const std::logic_error&) {
        return false;
    }
}

/// Every accepted signature whose parameters p, q, r, n, m are at most
/// `max_order` (the fixed exceptional cases are always included).
inline std::vector<SphericalSignature> enumerate_signatures(int max_order)
{
    std::vector<SphericalSignature> out;
    const auto cones = [](std::vector<int> v) { return SphericalSignature{std::move(v), false, {}, false}; };
    const auto mirrors = [](std::vector<int> v) { return SphericalSignature{{}, true, std::move(v), false}; };

    out.push_back(cones({}));
    out.push_back(mirrors({}));
    for (int p = 2; p <= max_order; ++p) {
        out.push_back(cones({p, p}));
        out.push_back(mirrors({p, p}));
        out.push_back(cones({2, 2, p}));
        out.push_back(mirrors({2, 2, p}));
        out.push_back(SphericalSignature{{p}, true, {}, false});
        out.push_back(SphericalSignature{{2}, true, {p}, false});
    }
    for (int r = 3; r <= std::min(5, max_order); ++r) {
        out.push_back(cones({2, 3, r}));
        out.push_back(mirrors({2, 3, r}));
    }
    if (max_order >= 3) {
        out.push_back(SphericalSignature{{3}, true, {2}, false});
    }
    out.push_back(SphericalSignature{{}, false, {}, true});
    for (int n = 2; n <= max_order; ++n) {
        out.push_back(SphericalSignature{{n}, false, {}, true});
    }
    return out;
}

} // namespace reflbound::orbifold

#endif // REFLBOUND_ORBIFOLD_HPP
